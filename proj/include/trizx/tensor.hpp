// Copyright 2025-2026 The trizx developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "trizx/diagram.hpp"
#include "trizx/matrix.hpp"

namespace trizx {

// Ground-truth tensor semantics of diagrams.
//
// Every generator is viewed in its flexsymmetric all-outputs form (legs are
// interchangeable); edges are Z-basis cups, i.e. plain index contraction in
// the computational basis. Evaluation uses naive pairwise contraction with a
// greedy smallest-intermediate heuristic; desk scale is small enough that
// asymptotics are irrelevant.

// The generator's tensor as an all-outputs state vector of dimension
// 3^degree (big-endian leg order). Throws on degree violations (H-boxes must
// have degree 2, boundaries are not tensors).
Matrix generator_tensor(const Generator& g, int degree);

// Full evaluation: rows = 3^#outputs, cols = 3^#inputs, big-endian over the
// ordered boundary lists; the diagram's stored scalar is included.
Matrix eval(const Diagram& d);

}  // namespace trizx
