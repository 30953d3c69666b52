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
#include "trizx/rules.hpp"

#include <string>
#include <vector>

namespace trizx {

// A replayable derivation: starting from `start`, the steps rewrite the
// diagram into the result of applying `target_rule` directly. Every
// intermediate diagram must be semantically equal to the start (the applied
// rules track exact scalars) and the final diagram must be isomorphic to the
// direct application of the derived rule.
struct ProofStep {
  std::string rule;
  bool reverse = false;
  int match_index = 0;
};

struct ProofScript {
  std::string name;
  Diagram start;
  std::string target_rule;
  int target_match = 0;
  std::vector<ProofStep> steps;
};

struct ReplayStepReport {
  std::string description;
  double residual = 0.0;
  bool ok = false;
};

struct ReplayReport {
  std::string name;
  std::vector<ReplayStepReport> steps;
  bool structural_match = false;
  bool pass = false;
  std::string error;
};

ProofScript load_proof_script(const std::string& path);
std::string proof_script_to_json(const ProofScript& script);
void save_proof_script(const ProofScript& script, const std::string& path);

ReplayReport replay(const ProofScript& script, double tol = 1e-9);

// The derivations shipped with the library (mirrored as JSON under proofs/).
std::vector<ProofScript> builtin_proof_scripts();

}  // namespace trizx
