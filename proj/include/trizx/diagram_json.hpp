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

#include <stdexcept>
#include <string>

namespace trizx {

// Thrown on malformed documents, unknown generator kinds, invalid rationals
// or structural violations.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON document shape:
//   {"scalar": {"omega_exp": "r", "sqrt3_exp": k, "sign": 1|-1},
//    "vertices": {"<id>": {"kind": "Z"|"X"|"H"|"Hdag"|"B", "phase": ["a","b"]?}},
//    "edges": [["id","id"], ...],
//    "inputs": ["id", ...], "outputs": ["id", ...]}
// Rationals are "num/den" strings ("num" when the denominator is 1). Vertex
// ids are renumbered consecutively on output, so serialization is
// deterministic for a given diagram.
std::string serialize(const Diagram& d, int indent = -1);
Diagram deserialize(const std::string& text);

std::string render_dot(const Diagram& d);

}  // namespace trizx
