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

#include "trizx/proofs.hpp"

#include <doctest.h>

#include <filesystem>
#include <set>

using namespace trizx;

namespace {
const std::filesystem::path kProofDir = std::filesystem::path(TRIZX_SOURCE_DIR) / "proofs";
}

TEST_CASE("builtin derivations replay with exact semantics") {
  const auto scripts = builtin_proof_scripts();
  REQUIRE(scripts.size() == 7);
  std::set<std::string> names;
  for (const auto& s : scripts) {
    const auto rep = replay(s);
    INFO(s.name);
    for (const auto& st : rep.steps) {
      INFO(st.description);
      CHECK(st.ok);
      CHECK(st.residual < 1e-9);
    }
    CHECK(rep.structural_match);
    CHECK(rep.pass);
    names.insert(s.name);
  }
  for (const char* expected : {"derive_ID", "derive_H2", "derive_H4", "derive_SX", "derive_P1p",
                               "derive_P2p", "derive_EUp"})
    CHECK(names.count(expected) == 1);
}

TEST_CASE("proof scripts round-trip through JSON") {
  const auto scripts = builtin_proof_scripts();
  const auto tmp = std::filesystem::temp_directory_path() / "trizx_proof.json";
  for (const auto& s : scripts) {
    save_proof_script(s, tmp.string());
    const ProofScript back = load_proof_script(tmp.string());
    CHECK(back.name == s.name);
    CHECK(back.steps.size() == s.steps.size());
    CHECK(replay(back).pass);
  }
}

TEST_CASE("shipped proof scripts replay") {
  REQUIRE(std::filesystem::is_directory(kProofDir));
  std::size_t found = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kProofDir)) {
    if (entry.path().extension() != ".json") continue;
    ++found;
    const ProofScript s = load_proof_script(entry.path().string());
    const auto rep = replay(s);
    INFO(entry.path().filename().string());
    CHECK(rep.pass);
  }
  CHECK(found == 7);
}

TEST_CASE("replay reports a broken script instead of passing") {
  ProofScript s = builtin_proof_scripts().front();
  s.steps.front().match_index = 9999;
  const auto rep = replay(s);
  CHECK(!rep.pass);
}

// Regenerates proofs/*.json from the builtin scripts. Hidden; run explicitly
// with: trizx_tests -tc='regenerate shipped proof scripts' -nta
TEST_CASE("regenerate shipped proof scripts" * doctest::skip(true)) {
  std::filesystem::create_directories(kProofDir);
  for (const auto& s : builtin_proof_scripts())
    save_proof_script(s, (kProofDir / (s.name + ".json")).string());
  CHECK(true);
}
