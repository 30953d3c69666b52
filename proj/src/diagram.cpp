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

#include <algorithm>
#include <set>
#include <stdexcept>

namespace trizx {

const char* gen_kind_name(GenKind k) {
  switch (k) {
    case GenKind::ZSpider: return "Z";
    case GenKind::XSpider: return "X";
    case GenKind::HBox: return "H";
    case GenKind::HBoxDagger: return "Hdag";
    case GenKind::Boundary: return "B";
  }
  return "?";
}

VertexId Diagram::add_vertex(const Generator& g) {
  const VertexId id = next_id_++;
  vertices_.emplace(id, g);
  return id;
}

VertexId Diagram::add_input() {
  const VertexId id = add_vertex(Generator::boundary());
  inputs_.push_back(id);
  return id;
}

VertexId Diagram::add_output() {
  const VertexId id = add_vertex(Generator::boundary());
  outputs_.push_back(id);
  return id;
}

void Diagram::insert_edge_sorted(Edge e) {
  if (e.first > e.second) std::swap(e.first, e.second);
  edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), e);
}

void Diagram::add_edge(VertexId u, VertexId v) {
  if (!has_vertex(u) || !has_vertex(v))
    throw std::invalid_argument("add_edge: dangling edge endpoint");
  insert_edge_sorted({u, v});
}

void Diagram::remove_edge(VertexId u, VertexId v) {
  Edge e{u, v};
  if (e.first > e.second) std::swap(e.first, e.second);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) throw std::invalid_argument("remove_edge: no such edge");
  edges_.erase(it);
}

void Diagram::remove_vertex(VertexId v) {
  const auto it = vertices_.find(v);
  if (it == vertices_.end()) throw std::invalid_argument("remove_vertex: no such vertex");
  if (it->second.kind == GenKind::Boundary)
    throw std::invalid_argument("remove_vertex: cannot remove boundary vertex");
  edges_.erase(std::remove_if(edges_.begin(), edges_.end(),
                              [v](const Edge& e) { return e.first == v || e.second == v; }),
               edges_.end());
  vertices_.erase(it);
}

void Diagram::set_phase(VertexId v, Phase p) {
  const auto it = vertices_.find(v);
  if (it == vertices_.end()) throw std::invalid_argument("set_phase: no such vertex");
  it->second.phase = std::move(p);
}

void Diagram::set_kind(VertexId v, GenKind k) {
  const auto it = vertices_.find(v);
  if (it == vertices_.end()) throw std::invalid_argument("set_kind: no such vertex");
  it->second.kind = k;
}

Diagram Diagram::with_boundaries(std::vector<VertexId> ins, std::vector<VertexId> outs) const {
  Diagram out = *this;
  for (VertexId v : ins)
    if (!out.has_vertex(v) || out.generator(v).kind != GenKind::Boundary)
      throw std::invalid_argument("with_boundaries: not a boundary vertex");
  for (VertexId v : outs)
    if (!out.has_vertex(v) || out.generator(v).kind != GenKind::Boundary)
      throw std::invalid_argument("with_boundaries: not a boundary vertex");
  out.inputs_ = std::move(ins);
  out.outputs_ = std::move(outs);
  return out;
}

Diagram Diagram::identity(std::size_t n) {
  Diagram d;
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId in = d.add_input();
    const VertexId out = d.add_output();
    d.add_edge(in, out);
  }
  return d;
}

const Generator& Diagram::generator(VertexId v) const {
  const auto it = vertices_.find(v);
  if (it == vertices_.end()) throw std::invalid_argument("generator: no such vertex");
  return it->second;
}

std::size_t Diagram::degree(VertexId v) const {
  std::size_t d = 0;
  for (const Edge& e : edges_) {
    if (e.first == v) ++d;
    if (e.second == v) ++d;
  }
  return d;
}

std::size_t Diagram::edge_multiplicity(VertexId u, VertexId v) const {
  Edge e{u, v};
  if (e.first > e.second) std::swap(e.first, e.second);
  const auto range = std::equal_range(edges_.begin(), edges_.end(), e);
  return static_cast<std::size_t>(range.second - range.first);
}

std::vector<VertexId> Diagram::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (const Edge& e : edges_) {
    if (e.first == v) out.push_back(e.second);
    if (e.second == v) out.push_back(e.first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Diagram::self_loops(VertexId v) const { return edge_multiplicity(v, v); }

std::size_t Diagram::num_spiders() const {
  std::size_t n = 0;
  for (const auto& [id, g] : vertices_)
    if (g.is_spider()) ++n;
  return n;
}

std::size_t Diagram::num_hboxes() const {
  std::size_t n = 0;
  for (const auto& [id, g] : vertices_)
    if (g.is_hbox()) ++n;
  return n;
}

void Diagram::validate() const {
  for (const Edge& e : edges_)
    if (!has_vertex(e.first) || !has_vertex(e.second))
      throw std::invalid_argument("diagram: edge references missing vertex");
  std::set<VertexId> seen;
  for (VertexId v : inputs_) {
    if (!has_vertex(v) || generator(v).kind != GenKind::Boundary)
      throw std::invalid_argument("diagram: input is not a boundary vertex");
    if (!seen.insert(v).second) throw std::invalid_argument("diagram: duplicate boundary vertex");
  }
  for (VertexId v : outputs_) {
    if (!has_vertex(v) || generator(v).kind != GenKind::Boundary)
      throw std::invalid_argument("diagram: output is not a boundary vertex");
    if (!seen.insert(v).second) throw std::invalid_argument("diagram: duplicate boundary vertex");
  }
  for (const auto& [id, g] : vertices_) {
    switch (g.kind) {
      case GenKind::Boundary:
        if (seen.count(id) == 0)
          throw std::invalid_argument("diagram: boundary vertex not listed as input or output");
        if (degree(id) != 1) throw std::invalid_argument("diagram: boundary vertex degree != 1");
        break;
      case GenKind::HBox:
      case GenKind::HBoxDagger:
        if (degree(id) != 2) throw std::invalid_argument("diagram: H-box degree != 2");
        break;
      default: break;
    }
  }
}

Diagram Diagram::tensor(const Diagram& d) const {
  Diagram out = *this;
  std::map<VertexId, VertexId> remap;
  for (const auto& [id, g] : d.vertices_) remap[id] = out.add_vertex(g);
  for (const Edge& e : d.edges_) out.insert_edge_sorted({remap[e.first], remap[e.second]});
  for (VertexId v : d.inputs_) out.inputs_.push_back(remap[v]);
  for (VertexId v : d.outputs_) out.outputs_.push_back(remap[v]);
  out.scalar_ *= d.scalar_;
  return out;
}

void Diagram::smooth_out(VertexId v) {
  if (degree(v) != 2) throw std::invalid_argument("smooth_out: vertex degree != 2");
  std::vector<Edge> inc;
  for (const Edge& e : edges_)
    if (e.first == v || e.second == v) inc.push_back(e);
  // A single self-loop counts both legs: remove the circle and record the
  // Z-basis loop value 3 = sqrt(3)^2.
  if (inc.size() == 1) {
    remove_edge(v, v);
    vertices_.erase(v);
    scalar_ *= Scalar::sqrt3(2);
    return;
  }
  const VertexId a = inc[0].first == v ? inc[0].second : inc[0].first;
  const VertexId b = inc[1].first == v ? inc[1].second : inc[1].first;
  remove_edge(inc[0].first, inc[0].second);
  remove_edge(inc[1].first, inc[1].second);
  vertices_.erase(v);
  insert_edge_sorted({a, b});
}

Diagram Diagram::compose(const Diagram& d) const {
  if (outputs_.size() != d.inputs_.size())
    throw std::invalid_argument("compose: arity mismatch between outputs and inputs");
  Diagram out = *this;
  std::map<VertexId, VertexId> remap;
  for (const auto& [id, g] : d.vertices_) remap[id] = out.add_vertex(g);
  for (const Edge& e : d.edges_) out.insert_edge_sorted({remap[e.first], remap[e.second]});
  out.scalar_ *= d.scalar_;

  std::vector<VertexId> glue;
  for (std::size_t i = 0; i < outputs_.size(); ++i) {
    const VertexId a = out.outputs_[i];
    const VertexId b = remap.at(d.inputs_[i]);
    out.insert_edge_sorted({a, b});
    glue.push_back(a);
    glue.push_back(b);
  }
  out.outputs_.clear();
  for (VertexId v : d.outputs_) out.outputs_.push_back(remap.at(v));

  // Every glued boundary vertex now has exactly two legs; smooth them away.
  std::sort(glue.begin(), glue.end());
  for (VertexId v : glue) out.smooth_out(v);
  return out;
}

Diagram Diagram::adjoint() const {
  Diagram out = *this;
  std::swap(out.inputs_, out.outputs_);
  for (auto& [id, g] : out.vertices_) {
    switch (g.kind) {
      case GenKind::ZSpider:
      case GenKind::XSpider: g.phase = g.phase.negated(); break;
      case GenKind::HBox: g.kind = GenKind::HBoxDagger; break;
      case GenKind::HBoxDagger: g.kind = GenKind::HBox; break;
      case GenKind::Boundary: break;
    }
  }
  out.scalar_ = out.scalar_.conjugated();
  return out;
}

Diagram Diagram::transposed() const {
  Diagram out = *this;
  std::swap(out.inputs_, out.outputs_);
  return out;
}

namespace {

struct VertexSig {
  GenKind kind;
  std::string phase;
  std::size_t deg;
  int btag;  // boundary position tag, -1 for interior

  bool operator<(const VertexSig& o) const {
    return std::tie(kind, phase, deg, btag) < std::tie(o.kind, o.phase, o.deg, o.btag);
  }
  bool operator==(const VertexSig& o) const {
    return kind == o.kind && phase == o.phase && deg == o.deg && btag == o.btag;
  }
};

VertexSig signature(const Diagram& d, VertexId v) {
  const Generator& g = d.generator(v);
  int btag = -1;
  for (std::size_t i = 0; i < d.inputs().size(); ++i)
    if (d.inputs()[i] == v) btag = static_cast<int>(i);
  for (std::size_t i = 0; i < d.outputs().size(); ++i)
    if (d.outputs()[i] == v) btag = static_cast<int>(1000 + i);
  return {g.kind, g.is_spider() ? g.phase.str() : std::string(), d.degree(v), btag};
}

bool extend(const Diagram& a, const Diagram& b, const std::vector<VertexId>& averts,
            std::map<VertexId, VertexId>& m, std::set<VertexId>& used, std::size_t i) {
  if (i == averts.size()) {
    // All vertices mapped; check the edge multisets agree.
    std::vector<Diagram::Edge> mapped;
    for (const auto& e : a.edges()) {
      Diagram::Edge f{m.at(e.first), m.at(e.second)};
      if (f.first > f.second) std::swap(f.first, f.second);
      mapped.push_back(f);
    }
    std::sort(mapped.begin(), mapped.end());
    return mapped == b.edges();
  }
  const VertexId av = averts[i];
  const VertexSig sig = signature(a, av);
  for (const auto& [bv, gen] : b.vertices()) {
    if (used.count(bv)) continue;
    if (!(signature(b, bv) == sig)) continue;
    // Partial consistency: multiplicities towards already-mapped vertices.
    bool ok = true;
    for (const auto& [x, y] : m) {
      if (a.edge_multiplicity(av, x) != b.edge_multiplicity(bv, y)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    m[av] = bv;
    used.insert(bv);
    if (extend(a, b, averts, m, used, i + 1)) return true;
    m.erase(av);
    used.erase(bv);
  }
  return false;
}

}  // namespace

bool isomorphic(const Diagram& a, const Diagram& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  if (a.inputs().size() != b.inputs().size() || a.outputs().size() != b.outputs().size())
    return false;
  if (!(a.scalar() == b.scalar())) return false;
  std::vector<VertexSig> sa, sb;
  std::vector<VertexId> averts;
  for (const auto& [v, g] : a.vertices()) {
    sa.push_back(signature(a, v));
    averts.push_back(v);
  }
  for (const auto& [v, g] : b.vertices()) sb.push_back(signature(b, v));
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (!(sa == sb)) return false;
  std::map<VertexId, VertexId> m;
  std::set<VertexId> used;
  return extend(a, b, averts, m, used, 0);
}

}  // namespace trizx
