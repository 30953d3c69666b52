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

#include "trizx/rules.hpp"

#include "trizx/diagram_json.hpp"
#include "trizx/rng.hpp"
#include "trizx/synth.hpp"
#include "trizx/tensor.hpp"

#include <doctest.h>

using namespace trizx;

namespace {

Diagram two_z_spiders(const Phase& p, const Phase& q) {
  Diagram d;
  const VertexId u = d.add_vertex(Generator::z(p));
  const VertexId v = d.add_vertex(Generator::z(q));
  d.add_edge(u, v);
  d.add_edge(u, d.add_output());
  d.add_edge(v, d.add_output());
  return d;
}

}  // namespace

TEST_CASE("SZ: two connected Z spiders give exactly one match") {
  const Diagram d = two_z_spiders(Phase(Rational(1, 3), Rational(1, 2)), Phase(1, 2));
  const auto ms = find_matches(d, Rule::SZ);
  REQUIRE(ms.size() == 1);
  const Diagram fused = apply(d, ms[0]);
  CHECK(fused.num_spiders() == 1);
  for (const auto& [v, g] : fused.vertices())
    if (g.kind == GenKind::ZSpider)
      CHECK(g.phase == Phase(Rational(1, 3) + 1, Rational(1, 2) + 2));
  const auto eq = scalar_equiv(eval(d), eval(fused));
  CHECK(eq.verdict == ScalarEquivalence::Verdict::EqualExact);
}

TEST_CASE("a deliberately wrong SZ rewrite fails on generic phases") {
  const Phase p(Rational(1, 3), Rational(1, 2));
  const Phase q(Rational(2, 7), Rational(1, 5));
  const Diagram d = two_z_spiders(p, q);
  // Mutated fusion: (a+c, b+c) instead of (a+c, b+d).
  Diagram wrong;
  const VertexId f = wrong.add_vertex(Generator::z(Phase(p.a + q.a, p.b + q.a)));
  wrong.add_edge(f, wrong.add_output());
  wrong.add_edge(f, wrong.add_output());
  const auto eq = scalar_equiv(eval(d), eval(wrong), EquivMode::PositiveReal);
  CHECK(eq.verdict == ScalarEquivalence::Verdict::Inequivalent);
}

TEST_CASE("H2 matches an HBox-HBoxDagger chain once; H4 needs four boxes") {
  Diagram d;
  const VertexId in = d.add_input();
  const VertexId a = d.add_vertex(Generator::h());
  const VertexId b = d.add_vertex(Generator::hdag());
  const VertexId out = d.add_output();
  d.add_edge(in, a);
  d.add_edge(a, b);
  d.add_edge(b, out);
  CHECK(find_matches(d, Rule::H2).size() == 1);
  CHECK(find_matches(d, Rule::H4).empty());
  const Diagram wire = apply(d, find_matches(d, Rule::H2)[0]);
  CHECK(isomorphic(wire, Diagram::identity(1)));
}

TEST_CASE("ID turns a phaseless degree-2 Z spider into a wire") {
  Diagram d;
  const VertexId in = d.add_input();
  const VertexId z = d.add_vertex(Generator::z());
  const VertexId out = d.add_output();
  d.add_edge(in, z);
  d.add_edge(z, out);
  const auto ms = find_matches(d, Rule::ID);
  REQUIRE(ms.size() == 1);
  CHECK(isomorphic(apply(d, ms[0]), Diagram::identity(1)));
}

TEST_CASE("P1 at x=0 swaps the spider phases across an X12") {
  Diagram d;
  const VertexId z = d.add_vertex(Generator::z(Phase(Rational(1, 5), Rational(2, 7))));
  const VertexId p = d.add_vertex(Generator::x(pauli_phase(0)));
  d.add_edge(z, p);
  d.add_edge(p, d.add_output());
  d.add_edge(z, d.add_output());
  auto ms = find_matches(d, Rule::P1);
  REQUIRE(!ms.empty());
  CHECK(ms[0].x == 0);
  const Diagram r = apply(d, ms[0]);
  const auto eq = scalar_equiv(eval(d), eval(r), EquivMode::PositiveReal);
  CHECK(eq.verdict != ScalarEquivalence::Verdict::Inequivalent);
  bool swapped = false;
  for (const auto& [v, g] : r.vertices())
    if (g.kind == GenKind::ZSpider && g.phase == Phase(Rational(2, 7), Rational(1, 5)))
      swapped = true;
  CHECK(swapped);
}

TEST_CASE("stale matches are rejected") {
  const Diagram d = two_z_spiders(Phase(1, 0), Phase(0, 1));
  const auto ms = find_matches(d, Rule::SZ);
  REQUIRE(ms.size() == 1);
  const Diagram fused = apply(d, ms[0]);
  CHECK_THROWS_AS(apply(fused, ms[0]), StaleMatch);
}

TEST_CASE("every rule passes randomized soundness checks") {
  for (Rule r : kAllRules) {
    const auto rep = verify_rule(r, 25, 99);
    INFO(rule_name(r));
    CHECK(rep.failures == 0);
    CHECK(rep.max_residual < 1e-9);
  }
}

TEST_CASE("reverse application undoes the forward rule semantically") {
  // Spot-check the reversible pairs on a small instance.
  Diagram d;
  const VertexId in = d.add_input();
  const VertexId h = d.add_vertex(Generator::h());
  const VertexId out = d.add_output();
  d.add_edge(in, h);
  d.add_edge(h, out);
  const Matrix base = eval(d);
  for (Rule r : {Rule::EU, Rule::ID, Rule::H2, Rule::H4, Rule::SP, Rule::IN, Rule::SX, Rule::SZ,
                 Rule::P2p}) {
    const auto ms = find_matches(d, r, true);
    if (ms.empty()) continue;
    const Diagram mid = apply(d, ms[0]);
    const auto eq = scalar_equiv(eval(mid), base);
    INFO(rule_name(r));
    CHECK(eq.verdict == ScalarEquivalence::Verdict::EqualExact);
  }
}

TEST_CASE("simplify reduces four H boxes to a wire") {
  Diagram d;
  const VertexId in = d.add_input();
  VertexId prev = in;
  for (int i = 0; i < 4; ++i) {
    const VertexId h = d.add_vertex(Generator::h());
    d.add_edge(prev, h);
    prev = h;
  }
  const VertexId out = d.add_output();
  d.add_edge(prev, out);
  const Diagram s = simplify(d);
  CHECK(isomorphic(s, Diagram::identity(1)));
}

TEST_CASE("simplify fuses the gadget circuit form down to the gadget shape") {
  const auto g = synth::phase_gadget(2, Rational(2, 5), Rational(1, 7));
  const Diagram circuit_form = to_diagram(g.circuit);
  const Diagram s = simplify(circuit_form);
  // Normal form size: one spider per wire plus hub and tip.
  CHECK(s.num_spiders() <= g.diagram.num_spiders());
  const auto eq = scalar_equiv(eval(s), eval(circuit_form));
  CHECK(eq.verdict == ScalarEquivalence::Verdict::EqualExact);
  // Already-simplified diagrams are fixpoints.
  std::size_t steps = 0;
  const Diagram s2 = simplify(s, &steps);
  CHECK(steps == 0);
  CHECK(s2 == s);
}

TEST_CASE("simplify is deterministic") {
  const auto g = synth::phase_gadget(3, Rational(1, 5), Rational(2, 5));
  const Diagram d = to_diagram(g.circuit);
  const std::string one = serialize(simplify(d));
  const std::string two = serialize(simplify(d));
  CHECK(one == two);
}

TEST_CASE("apply never changes boundary arity or ordering") {
  const auto g = synth::phase_gadget(2, Rational(1, 5), Rational(2, 7));
  const Diagram d = to_diagram(g.circuit);
  for (Rule r : kAllRules) {
    for (bool rev : {false, true}) {
      const auto ms = find_matches(d, r, rev);
      if (ms.empty()) continue;
      const Diagram out = apply(d, ms.front());
      INFO(rule_name(r));
      CHECK(out.inputs() == d.inputs());
      CHECK(out.outputs() == d.outputs());
    }
  }
}

TEST_CASE("rule names round-trip") {
  for (Rule r : kAllRules) {
    const auto back = rule_from_name(rule_name(r));
    REQUIRE(back.has_value());
    CHECK(*back == r);
  }
  CHECK(!rule_from_name("NOPE"));
}
