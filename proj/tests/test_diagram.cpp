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

#include "trizx/diagram.hpp"
#include "trizx/diagram_json.hpp"
#include "trizx/tensor.hpp"

#include <doctest.h>

using namespace trizx;

namespace {

// 1-in 1-out diagram with a single generator on the wire.
Diagram single(const Generator& g) {
  Diagram d;
  const VertexId in = d.add_input();
  const VertexId v = d.add_vertex(g);
  const VertexId out = d.add_output();
  d.add_edge(in, v);
  d.add_edge(v, out);
  return d;
}

}  // namespace

TEST_CASE("add_edge rejects dangling endpoints") {
  Diagram d;
  const VertexId v = d.add_vertex(Generator::z());
  CHECK_THROWS_AS(d.add_edge(v, 99), std::invalid_argument);
}

TEST_CASE("compose requires matching arity") {
  const Diagram id1 = Diagram::identity(1);
  const Diagram id2 = Diagram::identity(2);
  CHECK_THROWS_AS(id1.compose(id2), std::invalid_argument);
}

TEST_CASE("compose with the identity is the identity operation") {
  const Diagram d = single(Generator::z(Phase(Rational(1, 3), Rational(2, 5))));
  const Diagram lhs = Diagram::identity(1).compose(d);
  const Diagram rhs = d.compose(Diagram::identity(1));
  CHECK(isomorphic(lhs, d));
  CHECK(isomorphic(rhs, d));
}

TEST_CASE("adjoint negates phases and swaps H kinds") {
  const Diagram d = single(Generator::z(Phase(Rational(1, 3), Rational(-1, 3))));
  const Diagram a = d.adjoint();
  bool found = false;
  for (const auto& [v, g] : a.vertices())
    if (g.kind == GenKind::ZSpider) {
      CHECK(g.phase == Phase(Rational(8, 3), Rational(1, 3)));
      found = true;
    }
  CHECK(found);
  const Diagram h = single(Generator::h()).adjoint();
  bool has_hdag = false;
  for (const auto& [v, g] : h.vertices()) has_hdag = has_hdag || g.kind == GenKind::HBoxDagger;
  CHECK(has_hdag);
}

TEST_CASE("adjoint of adjoint has identical semantics") {
  Diagram d = single(Generator::x(Phase(Rational(2, 7), Rational(3, 5))));
  d.multiply_scalar(Scalar(Rational(1, 2), 1, -1));
  const Matrix m1 = eval(d);
  const Matrix m2 = eval(d.adjoint().adjoint());
  CHECK((m1 - m2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("transpose is a structural involution") {
  Diagram d = single(Generator::h());
  const Diagram tt = d.transposed().transposed();
  CHECK(tt == d);
  CHECK(d.transposed().inputs() == d.outputs());
}

TEST_CASE("validate rejects wrong boundary and H-box degrees") {
  Diagram d;
  const VertexId in = d.add_input();
  const VertexId h = d.add_vertex(Generator::h());
  d.add_edge(in, h);
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);  // H-box degree 1
}

TEST_CASE("empty diagram serializes and round-trips") {
  const Diagram d;
  const std::string text = serialize(d);
  const Diagram back = deserialize(text);
  CHECK(back.num_vertices() == 0);
  CHECK(back.inputs().empty());
  CHECK(eval(back)(0, 0) == Complex(1, 0));
}

TEST_CASE("serialization round-trips semantics and is deterministic") {
  Diagram d;
  const VertexId in = d.add_input();
  const VertexId z = d.add_vertex(Generator::z(Phase(Rational(1, 3), Rational(5, 2))));
  const VertexId x = d.add_vertex(Generator::x(Phase(Rational(2), Rational(1, 7))));
  const VertexId out = d.add_output();
  d.add_edge(in, z);
  d.add_edge(z, x);
  d.add_edge(z, x);  // parallel edge
  d.add_edge(x, x);  // self-loop
  d.add_edge(x, out);
  d.multiply_scalar(Scalar(Rational(3, 4), -1, -1));
  const std::string text = serialize(d, 2);
  const Diagram back = deserialize(text);
  CHECK(serialize(back, 2) == text);
  const Matrix m1 = eval(d);
  const Matrix m2 = eval(back);
  CHECK((m1 - m2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("deserialize rejects malformed documents") {
  CHECK_THROWS_AS(deserialize("{"), ParseError);
  CHECK_THROWS_AS(deserialize("{}"), ParseError);
  // unknown generator kind
  CHECK_THROWS_AS(
      deserialize(R"({"vertices":{"0":{"kind":"Q"}},"edges":[],"inputs":[],"outputs":[]})"),
      ParseError);
  // invalid rational
  CHECK_THROWS_AS(
      deserialize(
          R"({"vertices":{"0":{"kind":"Z","phase":["x","0"]}},"edges":[],"inputs":[],"outputs":[]})"),
      ParseError);
  // H-box of degree 3 violates the degree invariant
  const char* hdeg3 = R"({
    "vertices": {"0": {"kind": "H"}, "1": {"kind": "B"}, "2": {"kind": "B"}, "3": {"kind": "B"}},
    "edges": [["0","1"],["0","2"],["0","3"]],
    "inputs": ["1"], "outputs": ["2","3"]})";
  CHECK_THROWS_AS(deserialize(hdeg3), ParseError);
}

TEST_CASE("tensor concatenates boundaries") {
  const Diagram d = Diagram::identity(1).tensor(single(Generator::h()));
  CHECK(d.inputs().size() == 2);
  CHECK(d.outputs().size() == 2);
  d.validate();
}

TEST_CASE("isomorphic detects renames but not structural changes") {
  Diagram a = single(Generator::z(Phase(1, 2)));
  Diagram b;
  const VertexId v = b.add_vertex(Generator::z(Phase(1, 2)));
  const VertexId in = b.add_input();
  const VertexId out = b.add_output();
  b.add_edge(in, v);
  b.add_edge(v, out);
  CHECK(isomorphic(a, b));
  b.set_phase(v, Phase(2, 1));
  CHECK(!isomorphic(a, b));
}
