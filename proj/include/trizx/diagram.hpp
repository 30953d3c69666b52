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

#include "trizx/rational.hpp"
#include "trizx/scalar.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace trizx {

using VertexId = std::uint32_t;

enum class GenKind : std::uint8_t { ZSpider, XSpider, HBox, HBoxDagger, Boundary };

const char* gen_kind_name(GenKind k);

// A diagram generator. The phase is meaningful only for spiders.
struct Generator {
  GenKind kind = GenKind::ZSpider;
  Phase phase;

  static Generator z(Phase p = {}) { return {GenKind::ZSpider, std::move(p)}; }
  static Generator x(Phase p = {}) { return {GenKind::XSpider, std::move(p)}; }
  static Generator h() { return {GenKind::HBox, {}}; }
  static Generator hdag() { return {GenKind::HBoxDagger, {}}; }
  static Generator boundary() { return {GenKind::Boundary, {}}; }

  bool is_spider() const { return kind == GenKind::ZSpider || kind == GenKind::XSpider; }
  bool is_hbox() const { return kind == GenKind::HBox || kind == GenKind::HBoxDagger; }
};

// Undirected open multigraph of generators with an ordered boundary and an
// exact global scalar. Diagrams are plain values: all operations are pure and
// copies are cheap enough at desk scale. Edges are stored as a sorted multiset
// of normalized (lo, hi) pairs; self-loops and parallel edges are permitted
// on spiders.
class Diagram {
 public:
  using Edge = std::pair<VertexId, VertexId>;

  Diagram() = default;

  // -- construction -------------------------------------------------------

  VertexId add_vertex(const Generator& g);
  VertexId add_input();   // fresh boundary vertex appended to the input list
  VertexId add_output();  // fresh boundary vertex appended to the output list
  void add_edge(VertexId u, VertexId v);

  // Removes one occurrence of the edge (u, v). Throws if absent.
  void remove_edge(VertexId u, VertexId v);
  // Removes the vertex and all incident edges. Boundary vertices may not be
  // removed this way.
  void remove_vertex(VertexId v);

  void set_phase(VertexId v, Phase p);
  void set_kind(VertexId v, GenKind k);

  void multiply_scalar(const Scalar& s) { scalar_ *= s; }
  void set_scalar(Scalar s) { scalar_ = std::move(s); }

  // Returns a copy with the given boundary ordering. All listed vertices must
  // already exist and be boundary generators.
  Diagram with_boundaries(std::vector<VertexId> ins, std::vector<VertexId> outs) const;

  // Identity diagram on n wires.
  static Diagram identity(std::size_t n);

  // -- accessors ----------------------------------------------------------

  const std::map<VertexId, Generator>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<VertexId>& inputs() const { return inputs_; }
  const std::vector<VertexId>& outputs() const { return outputs_; }
  const Scalar& scalar() const { return scalar_; }

  bool has_vertex(VertexId v) const { return vertices_.count(v) != 0; }
  const Generator& generator(VertexId v) const;
  std::size_t degree(VertexId v) const;
  std::size_t edge_multiplicity(VertexId u, VertexId v) const;
  // Neighbors with multiplicity, sorted; self-loops contribute the vertex
  // itself twice.
  std::vector<VertexId> neighbors(VertexId v) const;
  std::size_t self_loops(VertexId v) const;

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_spiders() const;
  std::size_t num_hboxes() const;

  // Checks all structural invariants (boundary degrees, H-box degrees, edge
  // endpoints). Throws std::invalid_argument on violation.
  void validate() const;

  // -- structural operations (pure) ----------------------------------------

  // Sequential composition: this first, then d; requires
  // |this->outputs| == |d.inputs|.
  Diagram compose(const Diagram& d) const;
  // Parallel composition (disjoint union, boundaries concatenated).
  Diagram tensor(const Diagram& d) const;
  // Swaps inputs/outputs, negates spider phases, exchanges H <-> H^dagger and
  // conjugates the scalar.
  Diagram adjoint() const;
  // Swaps inputs/outputs only.
  Diagram transposed() const;

  // Replaces vertex v (which must have degree 2) by a direct connection of
  // its two edge endpoints; a vertex whose two legs form a self-loop becomes
  // a closed circle, which contributes an exact factor 3 to the scalar.
  void smooth_out(VertexId v);

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.inputs_ == b.inputs_ &&
           a.outputs_ == b.outputs_ && a.scalar_ == b.scalar_;
  }

 private:
  std::map<VertexId, Generator> vertices_;
  std::vector<Edge> edges_;  // sorted, normalized lo <= hi
  std::vector<VertexId> inputs_;
  std::vector<VertexId> outputs_;
  Scalar scalar_;
  VertexId next_id_ = 0;

  void insert_edge_sorted(Edge e);
  friend bool operator==(const Generator& a, const Generator& b);
};

inline bool operator==(const Generator& a, const Generator& b) {
  return a.kind == b.kind && (!a.is_spider() || a.phase == b.phase);
}
inline bool operator!=(const Generator& a, const Generator& b) { return !(a == b); }

// True if the two diagrams are equal up to a renaming of vertex ids (graph
// isomorphism respecting kinds, phases, boundary order and scalar). Intended
// for small diagrams; uses backtracking search.
bool isomorphic(const Diagram& a, const Diagram& b);

}  // namespace trizx
