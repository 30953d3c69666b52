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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trizx {

// The local rewrite rules of the flexsymmetric qutrit calculus.
//
// Base rules:
//   SZ  Z-spider fusion: connected Z-spiders merge, phases add componentwise
//       (variant: a Z self-loop is dropped). Scalar 1.
//   H   Z(a,b) with an H-dagger box on every leg  ==  X(a,b). Scalar 1.
//   H'  Z(a,b) with an H box on every leg        ==  X(b,a). Scalar 1.
//   B1  a degree-1 X(x,2x) state (prop. to |x>) copies through a phaseless
//       Z-spider onto its n remaining legs. Scalar sqrt(3)^(1-n).
//   B2  bialgebra: a Z3--X3 edge expands to the complete bipartite K22 with
//       the leg colours exchanged. Scalar sqrt(3) (fixed by evaluation).
//   SP  a Z3==X3 bigon with one leg on each side collapses to a wire.
//       Scalar sqrt(3)^(-1).
//   P1  pushing the Pauli X(x,2x) through a Z(a,b) spider copies it onto the
//       other legs and permutes the phases:
//         x=0: (a,b)->(b,a) scalar 1;  x=1: (a,b)->(-a,b-a) scalar w^a;
//         x=2: (a,b)->(a-b,-b) scalar w^b.
//   P2  pushing the Pauli Z(x,2x) through an X(a,b) spider copies its inverse
//       Z(-x,-2x) onto the other legs:
//         x=0: identity;  x=1: (a,b)->(b-a,-a) scalar w^a;
//         x=2: (a,b)->(-b,a-b) scalar w^b.
//   EU  Euler decomposition  H = w^(9/4) Z(1,1) X(1,1) Z(1,1)
//       (variant: H-dagger = w^(3/4) Z(2,2) X(2,2) Z(2,2)).
//
// Derived rules:
//   ID  phaseless degree-2 Z-spider == wire.
//   H2  adjacent H and H-dagger boxes cancel.
//   H4  four same-kind H boxes in a chain cancel.
//   IN  X12 (phaseless pink degree-2) next to an H box flips its kind.
//   P2' the Pauli Z(x,2x) absorbs into a Z-spider: (a,b)->(a+x,b+2x).
//   P1' the Pauli X(x,2x) absorbs into an X-spider leaving an X12 twist:
//       (a,b)->(a+2x,b+x).
//   SX  harvestman fusion: connected X-spiders (a,b),(g,d) merge into
//       X(a+d, b+g) with an X12 twist on each leg of the second spider
//       (variants: X12 pair cancellation; twisted-loop removal). Scalar 1.
//   EU' H-dagger = w^(9/4) X(1,1) Z(1,1) X(1,1)
//       (variant: H = w^(3/4) X(2,2) Z(2,2) X(2,2)).
enum class Rule : std::uint8_t { SZ, H, Hp, B1, B2, SP, P1, P2, EU, ID, H2, H4, IN, P2p, P1p, SX, EUp };

inline constexpr int kNumRules = 17;
extern const Rule kAllRules[kNumRules];
extern const Rule kBaseRules[9];
extern const Rule kDerivedRules[8];

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);
// True for the rules carrying the trit variable x in {0,1,2}.
bool rule_has_trit(Rule r);

struct StaleMatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A located rule instance. Matches are enumerated deterministically (lowest
// bound vertex id first) and, for flexsymmetric patterns, one canonical
// representative per leg permutation.
struct Match {
  Rule rule = Rule::SZ;
  bool reverse = false;
  int variant = 0;
  int x = 0;                      // trit variable where applicable
  std::vector<VertexId> verts;    // anchor vertices (forward patterns)
  Diagram::Edge edge{0, 0};       // anchor edge (reverse/insertion patterns)
  bool edge_anchored = false;

  std::string str() const;
};

std::vector<Match> find_matches(const Diagram& d, Rule rule, bool reverse = false);

// Applies the match to a copy of the diagram, tracking the exact scalar so
// that eval(result) == eval(d). Throws StaleMatch if the diagram changed
// since matching.
Diagram apply(const Diagram& d, const Match& m);

// Fixpoint of the terminating safe subset: SZ (fusion and loop removal), ID,
// H2, H4, SP and the exact SX/X12 twist absorptions. Every step strictly
// decreases (vertices, H-boxes, edges) lexicographically, so the pass
// terminates; B1, B2, EU and the P-rules are applied only via apply().
Diagram simplify(const Diagram& d, std::size_t* steps = nullptr);

struct RuleReport {
  Rule rule = Rule::SZ;
  int trials = 0;
  int failures = 0;
  double max_residual = 0.0;
  bool pass() const { return failures == 0; }
};

// Draws random rational phases (denominators <= 24) and random small degrees,
// instantiates the rule, applies it, and checks scalar equivalence of the two
// sides in positive-real mode. The trit variable x is swept exhaustively in
// every trial where applicable.
RuleReport verify_rule(Rule rule, int trials, std::uint64_t seed);
std::vector<RuleReport> verify_all_rules(int trials, std::uint64_t seed);

}  // namespace trizx
