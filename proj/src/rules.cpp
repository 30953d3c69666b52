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

#include "trizx/matrix.hpp"
#include "trizx/rng.hpp"
#include "trizx/tensor.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <tuple>

namespace trizx {

const Rule kAllRules[kNumRules] = {Rule::SZ, Rule::H,  Rule::Hp, Rule::B1, Rule::B2, Rule::SP,
                                   Rule::P1, Rule::P2, Rule::EU, Rule::ID, Rule::H2, Rule::H4,
                                   Rule::IN, Rule::P2p, Rule::P1p, Rule::SX, Rule::EUp};
const Rule kBaseRules[9] = {Rule::SZ, Rule::H,  Rule::Hp, Rule::B1, Rule::B2,
                            Rule::SP, Rule::P1, Rule::P2, Rule::EU};
const Rule kDerivedRules[8] = {Rule::ID, Rule::H2,  Rule::H4,  Rule::IN,
                               Rule::P2p, Rule::P1p, Rule::SX, Rule::EUp};

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::SZ: return "SZ";
    case Rule::H: return "H";
    case Rule::Hp: return "H'";
    case Rule::B1: return "B1";
    case Rule::B2: return "B2";
    case Rule::SP: return "SP";
    case Rule::P1: return "P1";
    case Rule::P2: return "P2";
    case Rule::EU: return "EU";
    case Rule::ID: return "ID";
    case Rule::H2: return "H2";
    case Rule::H4: return "H4";
    case Rule::IN: return "IN";
    case Rule::P2p: return "P2'";
    case Rule::P1p: return "P1'";
    case Rule::SX: return "SX";
    case Rule::EUp: return "EU'";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  for (Rule r : kAllRules)
    if (name == rule_name(r)) return r;
  return std::nullopt;
}

bool rule_has_trit(Rule r) {
  return r == Rule::B1 || r == Rule::P1 || r == Rule::P2 || r == Rule::P1p || r == Rule::P2p;
}

std::string Match::str() const {
  std::ostringstream os;
  os << rule_name(rule) << (reverse ? " rev" : "") << " v" << variant;
  if (rule_has_trit(rule)) os << " x=" << x;
  os << " [";
  for (std::size_t i = 0; i < verts.size(); ++i) os << (i ? "," : "") << verts[i];
  os << "]";
  if (edge_anchored) os << " edge(" << edge.first << "," << edge.second << ")";
  return os.str();
}

namespace {

bool is_kind(const Diagram& d, VertexId v, GenKind k) {
  return d.has_vertex(v) && d.generator(v).kind == k;
}
bool is_z(const Diagram& d, VertexId v) { return is_kind(d, v, GenKind::ZSpider); }
bool is_x(const Diagram& d, VertexId v) { return is_kind(d, v, GenKind::XSpider); }
bool is_hbox(const Diagram& d, VertexId v) {
  return d.has_vertex(v) && d.generator(v).is_hbox();
}

// X-spider of degree 2 with phase pair (x,2x), no self-loop.
std::optional<int> pink_pauli(const Diagram& d, VertexId v) {
  if (!is_x(d, v) || d.degree(v) != 2 || d.self_loops(v) != 0) return std::nullopt;
  return pauli_exponent(d.generator(v).phase);
}

// Z-spider of degree 2 with phase pair (x,2x), no self-loop.
std::optional<int> green_pauli(const Diagram& d, VertexId v) {
  if (!is_z(d, v) || d.degree(v) != 2 || d.self_loops(v) != 0) return std::nullopt;
  return pauli_exponent(d.generator(v).phase);
}

// For a degree-2 vertex p adjacent to `from` by exactly one edge, the other
// endpoint.
VertexId outer_endpoint(const Diagram& d, VertexId p, VertexId from) {
  for (const auto& e : d.edges()) {
    if (e.first == p && e.second != from) return e.second;
    if (e.second == p && e.first != from) return e.first;
  }
  return from;  // only edges to `from`
}

// Distinct neighbor list (sorted, deduplicated).
std::vector<VertexId> distinct_neighbors(const Diagram& d, VertexId v) {
  auto ns = d.neighbors(v);
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  return ns;
}

Phase p1_sigma(int x, const Phase& p) {
  switch (x) {
    case 0: return p.swapped();
    case 1: return Phase(-p.a, p.b - p.a);
    default: return Phase(p.a - p.b, -p.b);
  }
}
Rational p1_scalar_exp(int x, const Phase& p) {
  return x == 0 ? Rational(0) : (x == 1 ? p.a : p.b);
}

Phase p2_tau(int x, const Phase& p) {
  switch (x) {
    case 0: return p;
    case 1: return Phase(p.b - p.a, -p.a);
    default: return Phase(-p.b, p.a - p.b);
  }
}
Rational p2_scalar_exp(int x, const Phase& p) {
  return x == 0 ? Rational(0) : (x == 1 ? p.a : p.b);
}

// Replaces the edge (v, w) with v -- mid -- w, returning mid.
VertexId interpose(Diagram& d, VertexId v, VertexId w, const Generator& g) {
  d.remove_edge(v, w);
  const VertexId mid = d.add_vertex(g);
  d.add_edge(v, mid);
  d.add_edge(mid, w);
  return mid;
}

void require(bool cond, const char* what) {
  if (!cond) throw StaleMatch(std::string("stale match: ") + what);
}

// ---------------------------------------------------------------------------
// Matching
// ---------------------------------------------------------------------------

void match_sz(const Diagram& d, bool reverse, std::vector<Match>& out) {
  if (!reverse) {
    std::vector<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : d.edges()) {
      if (e.first == e.second) continue;
      if (!is_z(d, e.first) || !is_z(d, e.second)) continue;
      if (std::find(seen.begin(), seen.end(), e) != seen.end()) continue;
      seen.push_back(e);
      out.push_back({Rule::SZ, false, 0, 0, {e.first, e.second}, {}, false});
    }
    for (const auto& [v, g] : d.vertices())
      if (g.kind == GenKind::ZSpider && d.self_loops(v) > 0)
        out.push_back({Rule::SZ, false, 1, 0, {v}, {}, false});
    return;
  }
  // Reverse: unfuse a stub Z(0,0) onto an incident edge (variant 0), or move
  // the whole phase onto the stub (variant 1).
  for (const auto& e : d.edges()) {
    if (e.first == e.second) continue;
    for (int side = 0; side < 2; ++side) {
      const VertexId u = side == 0 ? e.first : e.second;
      const VertexId w = side == 0 ? e.second : e.first;
      if (!is_z(d, u)) continue;
      for (int variant = 0; variant < 2; ++variant)
        out.push_back({Rule::SZ, true, variant, 0, {u, w}, e, true});
    }
  }
}

void match_colour(const Diagram& d, Rule rule, bool reverse, std::vector<Match>& out) {
  const GenKind box = rule == Rule::H ? GenKind::HBoxDagger : GenKind::HBox;
  if (!reverse) {
    for (const auto& [v, g] : d.vertices()) {
      if (g.kind != GenKind::ZSpider || d.self_loops(v) > 0) continue;
      bool ok = true;
      std::vector<VertexId> boxes;
      for (VertexId nb : d.neighbors(v)) {
        if (!is_kind(d, nb, box) || d.edge_multiplicity(v, nb) != 1 ||
            outer_endpoint(d, nb, v) == v) {
          ok = false;
          break;
        }
        boxes.push_back(nb);
      }
      // Boxes must be distinct vertices (each contributes one leg).
      std::vector<VertexId> uniq = boxes;
      uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
      if (!ok || uniq.size() != boxes.size()) continue;
      Match m{rule, false, 0, 0, {v}, {}, false};
      m.verts.insert(m.verts.end(), boxes.begin(), boxes.end());
      out.push_back(std::move(m));
    }
    return;
  }
  for (const auto& [v, g] : d.vertices())
    if (g.kind == GenKind::XSpider && d.self_loops(v) == 0)
      out.push_back({rule, true, 0, 0, {v}, {}, false});
}

void match_b1(const Diagram& d, bool reverse, std::vector<Match>& out) {
  if (!reverse) {
    for (const auto& [s, g] : d.vertices()) {
      if (g.kind != GenKind::XSpider || d.degree(s) != 1) continue;
      const auto x = pauli_exponent(g.phase);
      if (!x) continue;
      const auto ns = d.neighbors(s);
      const VertexId z = ns.front();
      if (z == s || !is_z(d, z) || !d.generator(z).phase.is_zero() || d.self_loops(z) > 0)
        continue;
      out.push_back({Rule::B1, false, 0, *x, {s, z}, {}, false});
    }
    return;
  }
  for (const auto& [s, g] : d.vertices()) {
    if (g.kind != GenKind::XSpider || d.degree(s) != 1) continue;
    const auto x = pauli_exponent(g.phase);
    if (!x) continue;
    const VertexId w = d.neighbors(s).front();
    if (w == s) continue;
    out.push_back({Rule::B1, true, 0, *x, {s, w}, {}, false});
  }
}

bool plain_deg3(const Diagram& d, VertexId v, GenKind k) {
  return is_kind(d, v, k) && d.degree(v) == 3 && d.self_loops(v) == 0 &&
         d.generator(v).phase.is_zero();
}

// External edges of v not towards `other`; requires them not to loop back.
std::vector<VertexId> ext_endpoints(const Diagram& d, VertexId v, VertexId other) {
  std::vector<VertexId> out;
  for (const auto& e : d.edges()) {
    if (e.first == v && e.second != other && e.second != v) out.push_back(e.second);
    if (e.second == v && e.first != other && e.first != v) out.push_back(e.first);
  }
  return out;
}

void match_b2(const Diagram& d, bool reverse, std::vector<Match>& out) {
  if (!reverse) {
    std::vector<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : d.edges()) {
      VertexId u = e.first, v = e.second;
      if (u == v) continue;
      if (is_x(d, u) && is_z(d, v)) std::swap(u, v);
      if (!plain_deg3(d, u, GenKind::ZSpider) || !plain_deg3(d, v, GenKind::XSpider)) continue;
      if (d.edge_multiplicity(u, v) != 1) continue;
      if (ext_endpoints(d, u, v).size() != 2 || ext_endpoints(d, v, u).size() != 2) continue;
      const auto key = std::make_pair(u, v);
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      out.push_back({Rule::B2, false, 0, 0, {u, v}, {}, false});
    }
    return;
  }
  // Reverse: a K22 of phaseless degree-3 spiders, one external leg each.
  std::vector<VertexId> zs, xs;
  for (const auto& [v, g] : d.vertices()) {
    if (plain_deg3(d, v, GenKind::ZSpider)) zs.push_back(v);
    if (plain_deg3(d, v, GenKind::XSpider)) xs.push_back(v);
  }
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = i + 1; j < zs.size(); ++j)
      for (std::size_t k = 0; k < xs.size(); ++k)
        for (std::size_t l = k + 1; l < xs.size(); ++l) {
          const VertexId z1 = zs[i], z2 = zs[j], x1 = xs[k], x2 = xs[l];
          if (d.edge_multiplicity(z1, x1) != 1 || d.edge_multiplicity(z1, x2) != 1 ||
              d.edge_multiplicity(z2, x1) != 1 || d.edge_multiplicity(z2, x2) != 1)
            continue;
          const auto ok_ext = [&](VertexId v, VertexId a, VertexId b) {
            const auto ext = [&]() {
              std::vector<VertexId> r;
              for (const auto& e : d.edges()) {
                if (e.first == v && e.second != a && e.second != b && e.second != v)
                  r.push_back(e.second);
                if (e.second == v && e.first != a && e.first != b && e.first != v)
                  r.push_back(e.first);
              }
              return r;
            }();
            return ext.size() == 1;
          };
          if (!ok_ext(z1, x1, x2) || !ok_ext(z2, x1, x2) || !ok_ext(x1, z1, z2) ||
              !ok_ext(x2, z1, z2))
            continue;
          out.push_back({Rule::B2, true, 0, 0, {z1, z2, x1, x2}, {}, false});
        }
}

void match_sp(const Diagram& d, bool reverse, std::vector<Match>& out) {
  if (!reverse) {
    std::vector<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : d.edges()) {
      VertexId u = e.first, v = e.second;
      if (u == v) continue;
      if (is_x(d, u) && is_z(d, v)) std::swap(u, v);
      if (!plain_deg3(d, u, GenKind::ZSpider) || !plain_deg3(d, v, GenKind::XSpider)) continue;
      if (d.edge_multiplicity(u, v) != 2) continue;
      if (ext_endpoints(d, u, v).size() != 1 || ext_endpoints(d, v, u).size() != 1) continue;
      const auto key = std::make_pair(u, v);
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      out.push_back({Rule::SP, false, 0, 0, {u, v}, {}, false});
    }
    return;
  }
  for (const auto& e : d.edges())
    for (int variant = 0; variant < 2; ++variant)
      out.push_back({Rule::SP, true, variant, 0, {e.first, e.second}, e, true});
}

void match_pauli_push(const Diagram& d, Rule rule, bool reverse, std::vector<Match>& out) {
  // P1: pink Pauli against a Z-spider. P2: green Pauli against an X-spider.
  const bool p1 = rule == Rule::P1;
  const auto pauli = [&](VertexId v) { return p1 ? pink_pauli(d, v) : green_pauli(d, v); };
  const auto spider_ok = [&](VertexId v) {
    return (p1 ? is_z(d, v) : is_x(d, v)) && d.self_loops(v) == 0;
  };
  if (!reverse) {
    for (const auto& [p, g] : d.vertices()) {
      const auto x = pauli(p);
      if (!x) continue;
      for (VertexId sp : distinct_neighbors(d, p)) {
        if (sp == p || !spider_ok(sp)) continue;
        if (d.edge_multiplicity(p, sp) != 1) continue;
        if (outer_endpoint(d, p, sp) == sp) continue;
        out.push_back({rule, false, 0, *x, {sp, p}, {}, false});
      }
    }
    if (p1) {
      // Variant 1: X12 -- Z(a,b) -- X12 with a degree-2 spider collapses to
      // Z(b,a); exact instance of P1 at x=0 used by the simplifier.
      for (const auto& [z, g] : d.vertices()) {
        if (!is_z(d, z) || d.degree(z) != 2 || d.self_loops(z) != 0) continue;
        const auto ns = distinct_neighbors(d, z);
        if (ns.size() != 2) continue;
        if (pink_pauli(d, ns[0]) != 0 || pink_pauli(d, ns[1]) != 0) continue;
        if (outer_endpoint(d, ns[0], z) == z || outer_endpoint(d, ns[1], z) == z) continue;
        out.push_back({rule, false, 1, 0, {z, ns[0], ns[1]}, {}, false});
      }
    }
    return;
  }
  // Reverse: a spider whose legs all carry Pauli copies except exactly one.
  for (const auto& [sp, g] : d.vertices()) {
    if (!spider_ok(sp)) continue;
    for (int x = 0; x < 3; ++x) {
      const int copy_x = p1 ? x : (3 - x) % 3;
      std::size_t copies = 0, free_legs = 0;
      bool ok = true;
      for (VertexId nb : d.neighbors(sp)) {
        const auto nx = pauli(nb);
        if (nx && *nx == copy_x && d.edge_multiplicity(sp, nb) == 1 &&
            outer_endpoint(d, nb, sp) != sp)
          ++copies;
        else
          ++free_legs;
      }
      if (!ok || free_legs != 1) continue;
      if (copies + free_legs != d.degree(sp)) continue;
      out.push_back({rule, true, 0, x, {sp}, {}, false});
    }
  }
}

void match_eu(const Diagram& d, Rule rule, bool reverse, std::vector<Match>& out) {
  // EU: H -> Z(1,1) X(1,1) Z(1,1); EU': Hdag -> X(1,1) Z(1,1) X(1,1).
  // Variant 1 is the conjugated form (other box kind, phases (2,2)).
  const bool primed = rule == Rule::EUp;
  if (!reverse) {
    for (const auto& [h, g] : d.vertices()) {
      if (!g.is_hbox() || d.self_loops(h) > 0) continue;
      const bool dag = g.kind == GenKind::HBoxDagger;
      const int variant = (primed ? dag : !dag) ? 0 : 1;
      out.push_back({rule, false, variant, 0, {h}, {}, false});
    }
    return;
  }
  for (int variant = 0; variant < 2; ++variant) {
    const GenKind mid_kind = primed ? GenKind::ZSpider : GenKind::XSpider;
    const GenKind end_kind = primed ? GenKind::XSpider : GenKind::ZSpider;
    const Phase want = variant == 0 ? Phase(Rational(1), Rational(1)) : Phase(Rational(2), Rational(2));
    for (const auto& [mid, g] : d.vertices()) {
      if (g.kind != mid_kind || d.degree(mid) != 2 || d.self_loops(mid) != 0) continue;
      if (g.phase != want) continue;
      const auto ns = distinct_neighbors(d, mid);
      if (ns.size() != 2) continue;
      VertexId a = ns[0], b = ns[1];
      const auto end_ok = [&](VertexId v) {
        return is_kind(d, v, end_kind) && d.degree(v) == 2 && d.self_loops(v) == 0 &&
               d.generator(v).phase == want && d.edge_multiplicity(mid, v) == 1 &&
               outer_endpoint(d, v, mid) != mid;
      };
      if (!end_ok(a) || !end_ok(b)) continue;
      if (a > b) std::swap(a, b);
      out.push_back({rule, true, variant, 0, {a, mid, b}, {}, false});
    }
  }
}

void match_id(const Diagram& d, bool reverse, std::vector<Match>& out) {
  if (!reverse) {
    for (const auto& [v, g] : d.vertices())
      if (g.kind == GenKind::ZSpider && g.phase.is_zero() && d.degree(v) == 2)
        out.push_back({Rule::ID, false, 0, 0, {v}, {}, false});
    return;
  }
  for (const auto& e : d.edges()) out.push_back({Rule::ID, true, 0, 0, {}, e, true});
}

void match_h2(const Diagram& d, bool reverse, std::vector<Match>& out) {
  if (!reverse) {
    std::vector<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : d.edges()) {
      const VertexId a = e.first, b = e.second;
      if (a == b || !is_hbox(d, a) || !is_hbox(d, b)) continue;
      if (d.generator(a).kind == d.generator(b).kind) continue;
      const auto key = std::make_pair(a, b);
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      out.push_back({Rule::H2, false, 0, 0, {a, b}, {}, false});
    }
    return;
  }
  for (const auto& e : d.edges())
    for (int variant = 0; variant < 2; ++variant)
      out.push_back({Rule::H2, true, variant, 0, {}, e, true});
}

void match_h4(const Diagram& d, bool reverse, std::vector<Match>& out) {
  if (!reverse) {
    for (const auto& [h1, g1] : d.vertices()) {
      if (!g1.is_hbox()) continue;
      const GenKind kind = g1.kind;
      // Walk chains h1 - h2 - h3 - h4 of the same kind.
      for (VertexId h2 : distinct_neighbors(d, h1)) {
        if (!is_kind(d, h2, kind) || h2 == h1) continue;
        for (VertexId h3 : distinct_neighbors(d, h2)) {
          if (!is_kind(d, h3, kind) || h3 == h1 || h3 == h2) continue;
          for (VertexId h4 : distinct_neighbors(d, h3)) {
            if (!is_kind(d, h4, kind) || h4 == h1 || h4 == h2 || h4 == h3) continue;
            if (h1 > h4) continue;  // canonical orientation
            out.push_back({Rule::H4, false, 0, 0, {h1, h2, h3, h4}, {}, false});
          }
        }
      }
    }
    return;
  }
  for (const auto& e : d.edges())
    for (int variant = 0; variant < 2; ++variant)
      out.push_back({Rule::H4, true, variant, 0, {}, e, true});
}

void match_in(const Diagram& d, bool reverse, std::vector<Match>& out) {
  if (!reverse) {
    for (const auto& [p, g] : d.vertices()) {
      if (pink_pauli(d, p) != 0) continue;
      for (VertexId h : distinct_neighbors(d, p)) {
        if (!is_hbox(d, h) || h == p) continue;
        if (d.edge_multiplicity(p, h) != 1) continue;
        if (outer_endpoint(d, h, p) == p) continue;
        out.push_back({Rule::IN, false, 0, 0, {p, h}, {}, false});
      }
    }
    return;
  }
  for (const auto& [h, g] : d.vertices())
    if (g.is_hbox())
      for (int variant = 0; variant < 2; ++variant)
        out.push_back({Rule::IN, true, variant, 0, {h}, {}, false});
}

void match_sx(const Diagram& d, bool reverse, std::vector<Match>& out) {
  if (!reverse) {
    // Variant 0: general harvestman fusion, u absorbs v.
    for (const auto& e : d.edges()) {
      if (e.first == e.second) continue;
      if (!is_x(d, e.first) || !is_x(d, e.second)) continue;
      if (d.self_loops(e.first) > 0 || d.self_loops(e.second) > 0) continue;
      for (int side = 0; side < 2; ++side) {
        const VertexId u = side == 0 ? e.first : e.second;
        const VertexId v = side == 0 ? e.second : e.first;
        Match m{Rule::SX, false, 0, 0, {u, v}, {}, false};
        // One canonical representative per ordered pair.
        bool dup = false;
        for (const auto& prev : out)
          if (prev.variant == 0 && prev.verts == m.verts) dup = true;
        if (!dup) out.push_back(std::move(m));
      }
    }
    // Variant 1: a pair of phaseless X12 twists cancels.
    std::vector<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : d.edges()) {
      const VertexId a = e.first, b = e.second;
      if (a == b || pink_pauli(d, a) != 0 || pink_pauli(d, b) != 0) continue;
      const auto key = std::make_pair(a, b);
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      out.push_back({Rule::SX, false, 1, 0, {a, b}, {}, false});
    }
    // Variant 2: a twisted self-loop (X12 attached twice to the same
    // X-spider) drops.
    for (const auto& [tw, g] : d.vertices()) {
      if (!is_x(d, tw) || d.degree(tw) != 2 || !g.phase.is_zero()) continue;
      if (d.self_loops(tw) != 0) continue;
      const auto ns = distinct_neighbors(d, tw);
      if (ns.size() != 1) continue;
      const VertexId u = ns[0];
      if (u == tw || !is_x(d, u) || d.self_loops(u) > 0) continue;
      out.push_back({Rule::SX, false, 2, 0, {u, tw}, {}, false});
    }
    return;
  }
  // Reverse variant 0: detach a phaseless stub with a twist from an edge at
  // an X-spider; variant 1: insert a twist pair on any edge.
  for (const auto& e : d.edges()) {
    if (e.first != e.second) {
      for (int side = 0; side < 2; ++side) {
        const VertexId u = side == 0 ? e.first : e.second;
        const VertexId w = side == 0 ? e.second : e.first;
        if (is_x(d, u) && d.self_loops(u) == 0)
          out.push_back({Rule::SX, true, 0, 0, {u, w}, e, true});
      }
    }
    out.push_back({Rule::SX, true, 1, 0, {}, e, true});
  }
}

void match_p1p(const Diagram& d, bool reverse, std::vector<Match>& out) {
  if (!reverse) {
    for (const auto& [p, g] : d.vertices()) {
      const auto x = pink_pauli(d, p);
      if (!x) continue;
      for (VertexId u : distinct_neighbors(d, p)) {
        if (u == p || !is_x(d, u) || d.self_loops(u) > 0) continue;
        if (d.edge_multiplicity(p, u) != 1) continue;
        if (outer_endpoint(d, p, u) == u) continue;
        out.push_back({Rule::P1p, false, 0, *x, {u, p}, {}, false});
      }
    }
    return;
  }
  for (const auto& [p, g] : d.vertices()) {
    if (pink_pauli(d, p) != 0) continue;
    for (VertexId u : distinct_neighbors(d, p)) {
      if (u == p || !is_x(d, u) || d.self_loops(u) > 0) continue;
      if (d.edge_multiplicity(p, u) != 1) continue;
      if (outer_endpoint(d, p, u) == u) continue;
      for (int x = 0; x < 3; ++x) out.push_back({Rule::P1p, true, 0, x, {u, p}, {}, false});
    }
  }
}

void match_p2p(const Diagram& d, bool reverse, std::vector<Match>& out) {
  if (!reverse) {
    for (const auto& [gp, g] : d.vertices()) {
      const auto x = green_pauli(d, gp);
      if (!x) continue;
      for (VertexId z : distinct_neighbors(d, gp)) {
        if (z == gp || !is_z(d, z)) continue;
        if (d.edge_multiplicity(gp, z) != 1) continue;
        if (outer_endpoint(d, gp, z) == z) continue;
        out.push_back({Rule::P2p, false, 0, *x, {z, gp}, {}, false});
      }
    }
    return;
  }
  for (const auto& e : d.edges()) {
    for (int side = 0; side < 2; ++side) {
      const VertexId z = side == 0 ? e.first : e.second;
      const VertexId w = side == 0 ? e.second : e.first;
      if (!is_z(d, z) || z == w) continue;
      for (int x = 0; x < 3; ++x) out.push_back({Rule::P2p, true, 0, x, {z, w}, e, true});
    }
  }
}

// ---------------------------------------------------------------------------
// Application
// ---------------------------------------------------------------------------

Diagram apply_sz(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  if (!m.reverse && m.variant == 1) {
    require(d.has_vertex(m.verts[0]) && d.self_loops(m.verts[0]) > 0, "SZ loop");
    d.remove_edge(m.verts[0], m.verts[0]);
    return d;
  }
  if (!m.reverse) {
    const VertexId u = m.verts[0], v = m.verts[1];
    require(is_z(d, u) && is_z(d, v) && d.edge_multiplicity(u, v) > 0, "SZ");
    d.set_phase(u, d.generator(u).phase + d.generator(v).phase);
    while (d.edge_multiplicity(u, v) > 0) d.remove_edge(u, v);
    // Reattach v's remaining legs (self-loops on v become self-loops on u).
    std::vector<Diagram::Edge> moved;
    for (const auto& e : d.edges())
      if (e.first == v || e.second == v) moved.push_back(e);
    for (const auto& e : moved) {
      d.remove_edge(e.first, e.second);
      const VertexId a = e.first == v ? u : e.first;
      const VertexId b = e.second == v ? u : e.second;
      d.add_edge(a, b);
    }
    d.remove_vertex(v);
    return d;
  }
  const VertexId u = m.verts[0], w = m.verts[1];
  require(is_z(d, u) && d.edge_multiplicity(u, w) > 0, "SZ rev");
  const VertexId stub = interpose(d, u, w, Generator::z());
  if (m.variant == 1) {
    d.set_phase(stub, d.generator(u).phase);
    d.set_phase(u, Phase());
  }
  return d;
}

Diagram apply_colour(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  const bool primed = m.rule == Rule::Hp;
  const GenKind box = primed ? GenKind::HBox : GenKind::HBoxDagger;
  if (!m.reverse) {
    const VertexId v = m.verts[0];
    require(is_z(d, v), "colour change");
    for (std::size_t i = 1; i < m.verts.size(); ++i) {
      const VertexId bx = m.verts[i];
      require(is_kind(d, bx, box) && d.edge_multiplicity(v, bx) == 1, "colour change box");
      const VertexId w = outer_endpoint(d, bx, v);
      d.remove_vertex(bx);
      d.add_edge(v, w);
    }
    d.set_kind(v, GenKind::XSpider);
    if (primed) d.set_phase(v, d.generator(v).phase.swapped());
    return d;
  }
  const VertexId v = m.verts[0];
  require(is_x(d, v) && d.self_loops(v) == 0, "colour change rev");
  std::vector<Diagram::Edge> legs;
  for (const auto& e : d.edges())
    if (e.first == v || e.second == v) legs.push_back(e);
  for (const auto& e : legs) {
    const VertexId w = e.first == v ? e.second : e.first;
    d.remove_edge(e.first, e.second);
    const VertexId bx = d.add_vertex(primed ? Generator::h() : Generator::hdag());
    d.add_edge(v, bx);
    d.add_edge(bx, w);
  }
  d.set_kind(v, GenKind::ZSpider);
  if (primed) d.set_phase(v, d.generator(v).phase.swapped());
  return d;
}

Diagram apply_b1(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  if (!m.reverse) {
    const VertexId s = m.verts[0], z = m.verts[1];
    require(d.has_vertex(s) && d.has_vertex(z) && d.edge_multiplicity(s, z) == 1, "B1");
    require(is_z(d, z) && d.generator(z).phase.is_zero(), "B1 spider");
    const Phase copy = pauli_phase(m.x);
    d.remove_vertex(s);
    std::vector<VertexId> targets;
    for (const auto& e : d.edges()) {
      if (e.first == z) targets.push_back(e.second);
      if (e.second == z) targets.push_back(e.first);
    }
    d.remove_vertex(z);
    for (VertexId w : targets) {
      const VertexId s2 = d.add_vertex(Generator::x(copy));
      d.add_edge(s2, w);
    }
    const auto n = static_cast<std::int64_t>(targets.size());
    d.multiply_scalar(Scalar::sqrt3(1 - n));
    return d;
  }
  const VertexId s = m.verts[0], w = m.verts[1];
  require(d.has_vertex(s) && d.edge_multiplicity(s, w) == 1, "B1 rev");
  interpose(d, s, w, Generator::z());
  return d;
}

Diagram apply_b2(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  if (!m.reverse) {
    const VertexId u = m.verts[0], v = m.verts[1];
    require(plain_deg3(d, u, GenKind::ZSpider) && plain_deg3(d, v, GenKind::XSpider), "B2");
    require(d.edge_multiplicity(u, v) == 1, "B2 edge");
    const auto uext = ext_endpoints(d, u, v);
    const auto vext = ext_endpoints(d, v, u);
    require(uext.size() == 2 && vext.size() == 2, "B2 legs");
    d.remove_vertex(u);
    d.remove_vertex(v);
    // Former X-side legs now carry Z-spiders, former Z-side legs X-spiders.
    const VertexId z1 = d.add_vertex(Generator::z());
    const VertexId z2 = d.add_vertex(Generator::z());
    const VertexId x1 = d.add_vertex(Generator::x());
    const VertexId x2 = d.add_vertex(Generator::x());
    d.add_edge(z1, vext[0]);
    d.add_edge(z2, vext[1]);
    d.add_edge(x1, uext[0]);
    d.add_edge(x2, uext[1]);
    d.add_edge(z1, x1);
    d.add_edge(z1, x2);
    d.add_edge(z2, x1);
    d.add_edge(z2, x2);
    d.multiply_scalar(Scalar::sqrt3(1));
    return d;
  }
  const VertexId z1 = m.verts[0], z2 = m.verts[1], x1 = m.verts[2], x2 = m.verts[3];
  require(plain_deg3(d, z1, GenKind::ZSpider) && plain_deg3(d, z2, GenKind::ZSpider) &&
              plain_deg3(d, x1, GenKind::XSpider) && plain_deg3(d, x2, GenKind::XSpider),
          "B2 rev");
  const auto ext_of = [&](VertexId v, VertexId a, VertexId b) {
    std::vector<VertexId> r;
    for (const auto& e : d.edges()) {
      if (e.first == v && e.second != a && e.second != b && e.second != v) r.push_back(e.second);
      if (e.second == v && e.first != a && e.first != b && e.first != v) r.push_back(e.first);
    }
    require(r.size() == 1, "B2 rev legs");
    return r[0];
  };
  const VertexId ez1 = ext_of(z1, x1, x2), ez2 = ext_of(z2, x1, x2);
  const VertexId ex1 = ext_of(x1, z1, z2), ex2 = ext_of(x2, z1, z2);
  d.remove_vertex(z1);
  d.remove_vertex(z2);
  d.remove_vertex(x1);
  d.remove_vertex(x2);
  const VertexId u = d.add_vertex(Generator::z());
  const VertexId v = d.add_vertex(Generator::x());
  d.add_edge(u, v);
  d.add_edge(u, ex1);
  d.add_edge(u, ex2);
  d.add_edge(v, ez1);
  d.add_edge(v, ez2);
  d.multiply_scalar(Scalar::sqrt3(-1));
  return d;
}

Diagram apply_sp(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  if (!m.reverse) {
    const VertexId u = m.verts[0], v = m.verts[1];
    require(plain_deg3(d, u, GenKind::ZSpider) && plain_deg3(d, v, GenKind::XSpider), "SP");
    require(d.edge_multiplicity(u, v) == 2, "SP bigon");
    const auto uext = ext_endpoints(d, u, v);
    const auto vext = ext_endpoints(d, v, u);
    require(uext.size() == 1 && vext.size() == 1, "SP legs");
    d.remove_vertex(u);
    d.remove_vertex(v);
    d.add_edge(uext[0], vext[0]);
    d.multiply_scalar(Scalar::sqrt3(-1));
    return d;
  }
  const VertexId a = m.verts[0], b = m.verts[1];
  require(d.edge_multiplicity(a, b) > 0, "SP rev");
  d.remove_edge(a, b);
  const VertexId z = d.add_vertex(Generator::z());
  const VertexId x = d.add_vertex(Generator::x());
  d.add_edge(z, x);
  d.add_edge(z, x);
  if (m.variant == 0) {
    d.add_edge(a, z);
    d.add_edge(x, b);
  } else {
    d.add_edge(a, x);
    d.add_edge(z, b);
  }
  d.multiply_scalar(Scalar::sqrt3(1));
  return d;
}

Diagram apply_pauli_push(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  const bool p1 = m.rule == Rule::P1;
  if (!m.reverse && m.variant == 1) {
    // X12 -- Z(a,b) -- X12  ->  Z(b,a)
    const VertexId z = m.verts[0], pa = m.verts[1], pb = m.verts[2];
    require(is_z(d, z) && pink_pauli(d, pa) == 0 && pink_pauli(d, pb) == 0, "P1 sandwich");
    const VertexId wa = outer_endpoint(d, pa, z);
    const VertexId wb = outer_endpoint(d, pb, z);
    d.remove_vertex(pa);
    d.remove_vertex(pb);
    d.add_edge(z, wa);
    d.add_edge(z, wb);
    d.set_phase(z, d.generator(z).phase.swapped());
    return d;
  }
  if (!m.reverse) {
    const VertexId sp = m.verts[0], p = m.verts[1];
    require(d.has_vertex(sp) && d.has_vertex(p) && d.edge_multiplicity(sp, p) == 1, "pauli push");
    const Phase old = d.generator(sp).phase;
    const VertexId w = outer_endpoint(d, p, sp);
    d.remove_vertex(p);
    d.add_edge(sp, w);
    // Copies on all other legs.
    std::vector<Diagram::Edge> legs;
    for (const auto& e : d.edges())
      if ((e.first == sp) != (e.second == sp)) legs.push_back(e);
    const Phase copy = p1 ? pauli_phase(m.x) : pauli_phase((3 - m.x) % 3);
    bool skipped_new = false;
    for (const auto& e : legs) {
      const VertexId t = e.first == sp ? e.second : e.first;
      if (!skipped_new && t == w) {
        skipped_new = true;  // the leg the Pauli moved away from
        continue;
      }
      d.remove_edge(e.first, e.second);
      const VertexId c = d.add_vertex(p1 ? Generator::x(copy) : Generator::z(copy));
      d.add_edge(sp, c);
      d.add_edge(c, t);
    }
    d.set_phase(sp, p1 ? p1_sigma(m.x, old) : p2_tau(m.x, old));
    d.multiply_scalar(Scalar::omega(p1 ? p1_scalar_exp(m.x, old) : p2_scalar_exp(m.x, old)));
    return d;
  }
  // Reverse: collapse copies back onto the single free leg.
  const VertexId sp = m.verts[0];
  require(d.has_vertex(sp), "pauli push rev");
  const Phase cur = d.generator(sp).phase;
  const Phase orig = p1 ? p1_sigma(m.x, cur) : p2_tau((3 - m.x) % 3, cur);
  const int copy_x = p1 ? m.x : (3 - m.x) % 3;
  std::vector<VertexId> copies;
  VertexId free_leg = sp;
  bool free_found = false;
  for (VertexId nb : distinct_neighbors(d, sp)) {
    const auto nx = p1 ? pink_pauli(d, nb) : green_pauli(d, nb);
    if (nx && *nx == copy_x && d.edge_multiplicity(sp, nb) == 1 && outer_endpoint(d, nb, sp) != sp) {
      copies.push_back(nb);
    } else {
      require(!free_found, "pauli push rev: ambiguous free leg");
      free_found = true;
      free_leg = nb;
    }
  }
  for (VertexId c : copies) {
    const VertexId w = outer_endpoint(d, c, sp);
    d.remove_vertex(c);
    d.add_edge(sp, w);
  }
  require(free_found, "pauli push rev: no free leg");
  const Phase pauli = pauli_phase(m.x);
  interpose(d, sp, free_leg, p1 ? Generator::x(pauli) : Generator::z(pauli));
  d.set_phase(sp, orig);
  d.multiply_scalar(Scalar::omega(-(p1 ? p1_scalar_exp(m.x, orig) : p2_scalar_exp(m.x, orig))));
  return d;
}

Diagram apply_eu(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  const bool primed = m.rule == Rule::EUp;
  const Phase ph = m.variant == 0 ? Phase(Rational(1), Rational(1)) : Phase(Rational(2), Rational(2));
  const Scalar fwd_delta = m.variant == 0 ? Scalar::omega(Rational(9, 4)) : Scalar::omega(Rational(3, 4));
  const GenKind end_kind = primed ? GenKind::XSpider : GenKind::ZSpider;
  const GenKind mid_kind = primed ? GenKind::ZSpider : GenKind::XSpider;
  if (!m.reverse) {
    const VertexId h = m.verts[0];
    require(is_hbox(d, h) && d.degree(h) == 2, "EU");
    const bool dag = d.generator(h).kind == GenKind::HBoxDagger;
    require((primed ? dag : !dag) == (m.variant == 0), "EU variant");
    std::vector<VertexId> nbs;
    for (const auto& e : d.edges()) {
      if (e.first == h) nbs.push_back(e.second);
      if (e.second == h) nbs.push_back(e.first);
    }
    d.remove_vertex(h);
    const Generator endg{end_kind, ph};
    const Generator midg{mid_kind, ph};
    const VertexId s1 = d.add_vertex(endg);
    const VertexId sm = d.add_vertex(midg);
    const VertexId s2 = d.add_vertex(endg);
    d.add_edge(nbs[0] == h ? s1 : nbs[0], s1);
    d.add_edge(s1, sm);
    d.add_edge(sm, s2);
    d.add_edge(s2, nbs[1] == h ? s2 : nbs[1]);
    d.multiply_scalar(fwd_delta);
    return d;
  }
  const VertexId a = m.verts[0], mid = m.verts[1], b = m.verts[2];
  require(is_kind(d, a, end_kind) && is_kind(d, mid, mid_kind) && is_kind(d, b, end_kind), "EU rev");
  require(d.generator(a).phase == ph && d.generator(mid).phase == ph && d.generator(b).phase == ph,
          "EU rev phase");
  const VertexId wa = outer_endpoint(d, a, mid);
  const VertexId wb = outer_endpoint(d, b, mid);
  d.remove_vertex(a);
  d.remove_vertex(mid);
  d.remove_vertex(b);
  const bool make_dag = (primed == (m.variant == 0));
  const VertexId h = d.add_vertex(make_dag ? Generator::hdag() : Generator::h());
  d.add_edge(wa, h);
  d.add_edge(h, wb);
  d.multiply_scalar(fwd_delta.inverse());
  return d;
}

Diagram apply_id(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  if (!m.reverse) {
    const VertexId z = m.verts[0];
    require(is_z(d, z) && d.generator(z).phase.is_zero() && d.degree(z) == 2, "ID");
    d.smooth_out(z);
    return d;
  }
  const auto [a, b] = m.edge;
  require(d.edge_multiplicity(a, b) > 0, "ID rev");
  d.remove_edge(a, b);
  const VertexId z = d.add_vertex(Generator::z());
  d.add_edge(a, z);
  d.add_edge(z, b);
  return d;
}

Diagram apply_h2(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  if (!m.reverse) {
    const VertexId a = m.verts[0], b = m.verts[1];
    require(is_hbox(d, a) && is_hbox(d, b) && d.generator(a).kind != d.generator(b).kind, "H2");
    const std::size_t mult = d.edge_multiplicity(a, b);
    require(mult >= 1, "H2 edge");
    if (mult == 2) {
      d.remove_vertex(a);
      d.remove_vertex(b);
      d.multiply_scalar(Scalar::sqrt3(2));  // closed pair evaluates to 3
      return d;
    }
    const VertexId wa = outer_endpoint(d, a, b);
    const VertexId wb = outer_endpoint(d, b, a);
    d.remove_vertex(a);
    d.remove_vertex(b);
    d.add_edge(wa, wb);
    return d;
  }
  const auto [a, b] = m.edge;
  require(d.edge_multiplicity(a, b) > 0, "H2 rev");
  d.remove_edge(a, b);
  const VertexId h1 = d.add_vertex(m.variant == 0 ? Generator::h() : Generator::hdag());
  const VertexId h2 = d.add_vertex(m.variant == 0 ? Generator::hdag() : Generator::h());
  d.add_edge(a, h1);
  d.add_edge(h1, h2);
  d.add_edge(h2, b);
  return d;
}

Diagram apply_h4(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  if (!m.reverse) {
    for (VertexId h : m.verts) require(is_hbox(d, h), "H4");
    const GenKind kind = d.generator(m.verts[0]).kind;
    for (VertexId h : m.verts) require(d.generator(h).kind == kind, "H4 kind");
    for (int i = 0; i + 1 < 4; ++i)
      require(d.edge_multiplicity(m.verts[static_cast<std::size_t>(i)],
                                  m.verts[static_cast<std::size_t>(i + 1)]) >= 1,
              "H4 chain");
    const bool closed = d.edge_multiplicity(m.verts[0], m.verts[3]) >= 1;
    const VertexId wa = closed ? 0 : outer_endpoint(d, m.verts[0], m.verts[1]);
    const VertexId wb = closed ? 0 : outer_endpoint(d, m.verts[3], m.verts[2]);
    for (VertexId h : m.verts) d.remove_vertex(h);
    if (closed)
      d.multiply_scalar(Scalar::sqrt3(2));  // tr I = 3
    else
      d.add_edge(wa, wb);
    return d;
  }
  const auto [a, b] = m.edge;
  require(d.edge_multiplicity(a, b) > 0, "H4 rev");
  d.remove_edge(a, b);
  VertexId prev = a;
  for (int i = 0; i < 4; ++i) {
    const VertexId h = d.add_vertex(m.variant == 0 ? Generator::h() : Generator::hdag());
    d.add_edge(prev, h);
    prev = h;
  }
  d.add_edge(prev, b);
  return d;
}

Diagram apply_in(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  if (!m.reverse) {
    const VertexId p = m.verts[0], h = m.verts[1];
    require(pink_pauli(d, p) == 0 && is_hbox(d, h) && d.edge_multiplicity(p, h) == 1, "IN");
    const GenKind flipped =
        d.generator(h).kind == GenKind::HBox ? GenKind::HBoxDagger : GenKind::HBox;
    const VertexId wp = outer_endpoint(d, p, h);
    const VertexId wh = outer_endpoint(d, h, p);
    d.remove_vertex(p);
    d.remove_vertex(h);
    const VertexId nh = d.add_vertex(Generator{flipped, {}});
    d.add_edge(wp, nh);
    d.add_edge(nh, wh);
    return d;
  }
  const VertexId h = m.verts[0];
  require(is_hbox(d, h), "IN rev");
  const GenKind flipped =
      d.generator(h).kind == GenKind::HBox ? GenKind::HBoxDagger : GenKind::HBox;
  std::vector<VertexId> nbs;
  for (const auto& e : d.edges()) {
    if (e.first == h) nbs.push_back(e.second);
    if (e.second == h) nbs.push_back(e.first);
  }
  require(nbs.size() == 2, "IN rev degree");
  d.remove_vertex(h);
  const VertexId p = d.add_vertex(Generator::x(pauli_phase(0)));
  const VertexId nh = d.add_vertex(Generator{flipped, {}});
  if (m.variant == 0) {
    d.add_edge(nbs[0], p);
    d.add_edge(p, nh);
    d.add_edge(nh, nbs[1]);
  } else {
    d.add_edge(nbs[0], nh);
    d.add_edge(nh, p);
    d.add_edge(p, nbs[1]);
  }
  return d;
}

Diagram apply_sx(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  if (!m.reverse && m.variant == 0) {
    const VertexId u = m.verts[0], v = m.verts[1];
    require(is_x(d, u) && is_x(d, v) && d.edge_multiplicity(u, v) >= 1, "SX");
    require(d.self_loops(u) == 0 && d.self_loops(v) == 0, "SX loops");
    const Phase pu = d.generator(u).phase;
    const Phase pv = d.generator(v).phase;
    d.set_phase(u, Phase(pu.a + pv.b, pu.b + pv.a));
    while (d.edge_multiplicity(u, v) > 0) d.remove_edge(u, v);
    std::vector<Diagram::Edge> legs;
    for (const auto& e : d.edges())
      if (e.first == v || e.second == v) legs.push_back(e);
    for (const auto& e : legs) {
      const VertexId w = e.first == v ? e.second : e.first;
      d.remove_edge(e.first, e.second);
      const VertexId tw = d.add_vertex(Generator::x(pauli_phase(0)));
      d.add_edge(u, tw);
      d.add_edge(tw, w == v ? u : w);
    }
    d.remove_vertex(v);
    return d;
  }
  if (!m.reverse && m.variant == 1) {
    const VertexId a = m.verts[0], b = m.verts[1];
    require(pink_pauli(d, a) == 0 && pink_pauli(d, b) == 0, "SX twins");
    const std::size_t mult = d.edge_multiplicity(a, b);
    require(mult >= 1, "SX twin edge");
    if (mult == 2) {
      d.remove_vertex(a);
      d.remove_vertex(b);
      d.multiply_scalar(Scalar::sqrt3(2));
      return d;
    }
    const VertexId wa = outer_endpoint(d, a, b);
    const VertexId wb = outer_endpoint(d, b, a);
    d.remove_vertex(a);
    d.remove_vertex(b);
    d.add_edge(wa, wb);
    return d;
  }
  if (!m.reverse) {  // variant 2: twisted loop removal
    const VertexId u = m.verts[0], tw = m.verts[1];
    require(is_x(d, u) && pink_pauli(d, tw).has_value(), "SX loop");
    require(d.edge_multiplicity(u, tw) == 2 && d.generator(tw).phase.is_zero(), "SX loop shape");
    d.remove_vertex(tw);
    return d;
  }
  if (m.variant == 0) {
    const VertexId u = m.verts[0], w = m.verts[1];
    require(is_x(d, u) && d.edge_multiplicity(u, w) > 0, "SX rev stub");
    d.remove_edge(u, w);
    const VertexId nv = d.add_vertex(Generator::x());
    const VertexId tw = d.add_vertex(Generator::x(pauli_phase(0)));
    d.add_edge(u, nv);
    d.add_edge(nv, tw);
    d.add_edge(tw, w);
    return d;
  }
  const auto [a, b] = m.edge;
  require(d.edge_multiplicity(a, b) > 0, "SX rev twins");
  d.remove_edge(a, b);
  const VertexId t1 = d.add_vertex(Generator::x(pauli_phase(0)));
  const VertexId t2 = d.add_vertex(Generator::x(pauli_phase(0)));
  d.add_edge(a, t1);
  d.add_edge(t1, t2);
  d.add_edge(t2, b);
  return d;
}

Diagram apply_p1p(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  const VertexId u = m.verts[0], p = m.verts[1];
  require(is_x(d, u) && d.has_vertex(p) && d.edge_multiplicity(u, p) == 1, "P1'");
  const Phase pu = d.generator(u).phase;
  if (!m.reverse) {
    require(pink_pauli(d, p) == m.x, "P1' pauli");
    d.set_phase(u, Phase(pu.a + 2 * m.x, pu.b + m.x));
    d.set_phase(p, pauli_phase(0));
    return d;
  }
  require(pink_pauli(d, p) == 0, "P1' rev twist");
  d.set_phase(u, Phase(pu.a - 2 * m.x, pu.b - m.x));
  d.set_phase(p, pauli_phase(m.x));
  return d;
}

Diagram apply_p2p(const Diagram& d0, const Match& m) {
  Diagram d = d0;
  if (!m.reverse) {
    const VertexId z = m.verts[0], gp = m.verts[1];
    require(is_z(d, z) && green_pauli(d, gp) == m.x && d.edge_multiplicity(z, gp) == 1, "P2'");
    const Phase pz = d.generator(z).phase;
    d.set_phase(z, Phase(pz.a + m.x, pz.b + 2 * m.x));
    d.smooth_out(gp);
    return d;
  }
  const VertexId z = m.verts[0], w = m.verts[1];
  require(is_z(d, z) && d.edge_multiplicity(z, w) > 0, "P2' rev");
  const Phase pz = d.generator(z).phase;
  d.set_phase(z, Phase(pz.a - m.x, pz.b - 2 * m.x));
  interpose(d, z, w, Generator::z(pauli_phase(m.x)));
  return d;
}

}  // namespace

std::vector<Match> find_matches(const Diagram& d, Rule rule, bool reverse) {
  std::vector<Match> out;
  switch (rule) {
    case Rule::SZ: match_sz(d, reverse, out); break;
    case Rule::H:
    case Rule::Hp: match_colour(d, rule, reverse, out); break;
    case Rule::B1: match_b1(d, reverse, out); break;
    case Rule::B2: match_b2(d, reverse, out); break;
    case Rule::SP: match_sp(d, reverse, out); break;
    case Rule::P1:
    case Rule::P2: match_pauli_push(d, rule, reverse, out); break;
    case Rule::EU:
    case Rule::EUp: match_eu(d, rule, reverse, out); break;
    case Rule::ID: match_id(d, reverse, out); break;
    case Rule::H2: match_h2(d, reverse, out); break;
    case Rule::H4: match_h4(d, reverse, out); break;
    case Rule::IN: match_in(d, reverse, out); break;
    case Rule::SX: match_sx(d, reverse, out); break;
    case Rule::P1p: match_p1p(d, reverse, out); break;
    case Rule::P2p: match_p2p(d, reverse, out); break;
  }
  std::stable_sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
    return std::tie(a.verts, a.edge, a.variant, a.x) < std::tie(b.verts, b.edge, b.variant, b.x);
  });
  return out;
}

Diagram apply(const Diagram& d, const Match& m) {
  for (VertexId v : m.verts)
    if (!d.has_vertex(v)) throw StaleMatch("stale match: vertex disappeared");
  switch (m.rule) {
    case Rule::SZ: return apply_sz(d, m);
    case Rule::H:
    case Rule::Hp: return apply_colour(d, m);
    case Rule::B1: return apply_b1(d, m);
    case Rule::B2: return apply_b2(d, m);
    case Rule::SP: return apply_sp(d, m);
    case Rule::P1:
    case Rule::P2: return apply_pauli_push(d, m);
    case Rule::EU:
    case Rule::EUp: return apply_eu(d, m);
    case Rule::ID: return apply_id(d, m);
    case Rule::H2: return apply_h2(d, m);
    case Rule::H4: return apply_h4(d, m);
    case Rule::IN: return apply_in(d, m);
    case Rule::SX: return apply_sx(d, m);
    case Rule::P1p: return apply_p1p(d, m);
    case Rule::P2p: return apply_p2p(d, m);
  }
  throw std::logic_error("apply: unreachable");
}

Diagram simplify(const Diagram& d0, std::size_t* steps) {
  Diagram d = d0;
  std::size_t count = 0;
  for (;;) {
    std::optional<Match> chosen;
    // SZ: loop removal, then fusion.
    for (const Match& m : find_matches(d, Rule::SZ)) {
      if (m.variant == 1) {
        chosen = m;
        break;
      }
      if (!chosen) chosen = m;
    }
    if (!chosen) {
      for (Rule r : {Rule::ID, Rule::H2, Rule::H4, Rule::SP}) {
        const auto ms = find_matches(d, r);
        if (!ms.empty()) {
          chosen = ms.front();
          break;
        }
      }
    }
    if (!chosen) {
      for (const Match& m : find_matches(d, Rule::SX)) {
        if (m.variant == 1 || m.variant == 2) {
          chosen = m;
          break;
        }
        // General fusion is safe only when the absorbed spider has no
        // external legs (no twists get created).
        const VertexId v = m.verts[1];
        if (d.degree(v) == d.edge_multiplicity(m.verts[0], v)) {
          chosen = m;
          break;
        }
      }
    }
    if (!chosen) {
      for (const Match& m : find_matches(d, Rule::P1))
        if (m.variant == 1) {
          chosen = m;
          break;
        }
    }
    if (!chosen) break;
    d = apply(d, *chosen);
    ++count;
  }
  if (steps) *steps = count;
  return d;
}

namespace {

// Builds a random instance containing the rule pattern; external legs end on
// output boundaries so the instance evaluates to a state.
Diagram rule_instance(Rule rule, int x, Rng& rng) {
  Diagram d;
  const auto outs = [&d](VertexId v, int n) {
    for (int i = 0; i < n; ++i) {
      const VertexId o = d.add_output();
      d.add_edge(v, o);
    }
  };
  switch (rule) {
    case Rule::SZ: {
      const VertexId u = d.add_vertex(Generator::z(rng.phase()));
      const VertexId v = d.add_vertex(Generator::z(rng.phase()));
      const int k = 1 + static_cast<int>(rng.below(2));
      for (int i = 0; i < k; ++i) d.add_edge(u, v);
      outs(u, 1 + static_cast<int>(rng.below(2)));
      outs(v, 1 + static_cast<int>(rng.below(2)));
      return d;
    }
    case Rule::H:
    case Rule::Hp: {
      const VertexId v = d.add_vertex(Generator::z(rng.phase()));
      const int deg = static_cast<int>(rng.below(4));
      for (int i = 0; i < deg; ++i) {
        const VertexId bx =
            d.add_vertex(rule == Rule::H ? Generator::hdag() : Generator::h());
        d.add_edge(v, bx);
        outs(bx, 1);
      }
      return d;
    }
    case Rule::B1: {
      const VertexId z = d.add_vertex(Generator::z());
      const VertexId s = d.add_vertex(Generator::x(pauli_phase(x)));
      d.add_edge(s, z);
      outs(z, static_cast<int>(rng.below(3)));
      return d;
    }
    case Rule::B2: {
      const VertexId u = d.add_vertex(Generator::z());
      const VertexId v = d.add_vertex(Generator::x());
      d.add_edge(u, v);
      outs(u, 2);
      outs(v, 2);
      return d;
    }
    case Rule::SP: {
      const VertexId u = d.add_vertex(Generator::z());
      const VertexId v = d.add_vertex(Generator::x());
      d.add_edge(u, v);
      d.add_edge(u, v);
      outs(u, 1);
      outs(v, 1);
      return d;
    }
    case Rule::P1:
    case Rule::P2: {
      const bool p1 = rule == Rule::P1;
      const VertexId sp =
          d.add_vertex(p1 ? Generator::z(rng.phase()) : Generator::x(rng.phase()));
      const VertexId p =
          d.add_vertex(p1 ? Generator::x(pauli_phase(x)) : Generator::z(pauli_phase(x)));
      d.add_edge(sp, p);
      outs(p, 1);
      outs(sp, static_cast<int>(rng.below(3)));
      return d;
    }
    case Rule::EU:
    case Rule::EUp: {
      const bool dag = rng.below(2) == 1;
      const VertexId h = d.add_vertex(dag ? Generator::hdag() : Generator::h());
      outs(h, 2);
      return d;
    }
    case Rule::ID: {
      const VertexId z = d.add_vertex(Generator::z());
      outs(z, 2);
      return d;
    }
    case Rule::H2: {
      const VertexId a = d.add_vertex(Generator::h());
      const VertexId b = d.add_vertex(Generator::hdag());
      d.add_edge(a, b);
      outs(a, 1);
      outs(b, 1);
      return d;
    }
    case Rule::H4: {
      const bool dag = rng.below(2) == 1;
      VertexId prev = 0;
      for (int i = 0; i < 4; ++i) {
        const VertexId h = d.add_vertex(dag ? Generator::hdag() : Generator::h());
        if (i) d.add_edge(prev, h);
        else outs(h, 1);
        prev = h;
      }
      outs(prev, 1);
      return d;
    }
    case Rule::IN: {
      const bool dag = rng.below(2) == 1;
      const VertexId p = d.add_vertex(Generator::x(pauli_phase(0)));
      const VertexId h = d.add_vertex(dag ? Generator::hdag() : Generator::h());
      d.add_edge(p, h);
      outs(p, 1);
      outs(h, 1);
      return d;
    }
    case Rule::SX: {
      const VertexId u = d.add_vertex(Generator::x(rng.phase()));
      const VertexId v = d.add_vertex(Generator::x(rng.phase()));
      const int k = 1 + static_cast<int>(rng.below(2));
      for (int i = 0; i < k; ++i) d.add_edge(u, v);
      outs(u, 1 + static_cast<int>(rng.below(2)));
      outs(v, static_cast<int>(rng.below(3)));
      return d;
    }
    case Rule::P1p: {
      const VertexId u = d.add_vertex(Generator::x(rng.phase()));
      const VertexId p = d.add_vertex(Generator::x(pauli_phase(x)));
      d.add_edge(u, p);
      outs(p, 1);
      outs(u, 1 + static_cast<int>(rng.below(3)));
      return d;
    }
    case Rule::P2p: {
      const VertexId z = d.add_vertex(Generator::z(rng.phase()));
      const VertexId gp = d.add_vertex(Generator::z(pauli_phase(x)));
      d.add_edge(z, gp);
      outs(gp, 1);
      outs(z, 1 + static_cast<int>(rng.below(3)));
      return d;
    }
  }
  throw std::logic_error("rule_instance: unreachable");
}

}  // namespace

RuleReport verify_rule(Rule rule, int trials, std::uint64_t seed) {
  RuleReport rep;
  rep.rule = rule;
  Rng rng(seed ^ (0x100 + static_cast<std::uint64_t>(rule)));
  const int xs = rule_has_trit(rule) ? 3 : 1;
  for (int t = 0; t < trials; ++t) {
    for (int x = 0; x < xs; ++x) {
      const Diagram lhs = rule_instance(rule, x, rng);
      const auto matches = find_matches(lhs, rule);
      Match chosen;
      bool found = false;
      for (const Match& m : matches)
        if (!rule_has_trit(rule) || m.x == x) {
          chosen = m;
          found = true;
          break;
        }
      ++rep.trials;
      if (!found) {
        ++rep.failures;
        continue;
      }
      const Diagram rhs = apply(lhs, chosen);
      const auto eq = scalar_equiv(eval(lhs), eval(rhs), EquivMode::PositiveReal);
      rep.max_residual = std::max(rep.max_residual, eq.residual);
      if (eq.verdict == ScalarEquivalence::Verdict::Inequivalent) ++rep.failures;
    }
  }
  return rep;
}

std::vector<RuleReport> verify_all_rules(int trials, std::uint64_t seed) {
  std::vector<RuleReport> out;
  for (Rule r : kAllRules) out.push_back(verify_rule(r, trials, seed));
  return out;
}

}  // namespace trizx
