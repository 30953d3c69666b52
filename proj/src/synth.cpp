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

#include "trizx/synth.hpp"

#include <stdexcept>

namespace trizx {
namespace synth {

namespace {

SynthResult finish(std::string name, Circuit c, std::string description) {
  SynthResult r;
  r.name = std::move(name);
  r.circuit = decompose_phase_aliases(c);
  r.diagram = to_diagram(r.circuit);
  r.counts = count_resources(r.circuit);
  r.description = std::move(description);
  return r;
}

}  // namespace

Diagram fused_phase_gadget(int n, const Rational& alpha, const Rational& beta) {
  // One Z-spider per wire, a phaseless X hub, and a phase tip. In the
  // flexsymmetric convention the hub leg carries minus the trit sum, so the
  // tip phases are swapped.
  Diagram d;
  std::vector<VertexId> wirez;
  for (int i = 0; i < n; ++i) {
    const VertexId in = d.add_input();
    const VertexId z = d.add_vertex(Generator::z());
    d.add_edge(in, z);
    wirez.push_back(z);
  }
  const VertexId hub = d.add_vertex(Generator::x());
  for (VertexId z : wirez) d.add_edge(z, hub);
  const VertexId tip = d.add_vertex(Generator::z(Phase(beta, alpha)));
  d.add_edge(hub, tip);
  for (int i = 0; i < n; ++i) {
    const VertexId out = d.add_output();
    d.add_edge(wirez[static_cast<std::size_t>(i)], out);
  }
  d.multiply_scalar(Scalar::sqrt3(n - 1));
  return d;
}

SynthResult phase_gadget(int n, const Rational& alpha, const Rational& beta) {
  if (n < 1) throw std::invalid_argument("phase_gadget: n must be >= 1");
  Circuit c(n);
  for (int i = 0; i + 1 < n; ++i) c.push(Gate::cx(i, i + 1));
  c.push(Gate::zphase(n - 1, Phase(alpha, beta)));
  for (int i = n - 1; i > 0; --i) c.push(Gate::cxdag(i - 1, i));
  SynthResult r;
  r.name = "phase-gadget";
  r.circuit = c;
  r.diagram = fused_phase_gadget(n, alpha, beta);
  r.counts = count_resources(c);
  r.description = "sum-of-trits phase";
  return r;
}

Circuit phase_gadget_wrong_pairing(const Rational& alpha, const Rational& beta) {
  Circuit c(2);
  c.push(Gate::cx(0, 1));
  c.push(Gate::zphase(1, Phase(alpha, beta)));
  c.push(Gate::cx(0, 1));
  return c;
}

Gate square_phase_gate(const Rational& alpha) { return Gate::zphase(0, Phase(alpha, alpha)); }

Circuit ket2_block(const Rational& a, const Rational& b) {
  Circuit c(2);
  c.push(Gate::zphase(0, Phase(a, b)));
  c.push(Gate::zphase(1, Phase(a, b)));
  c.push(Gate::cx(0, 1));
  c.push(Gate::zphase(1, Phase(-a, -b)));
  c.push(Gate::cxdag(0, 1));
  return c;
}

SynthResult controlled_phase(const Rational& theta, const Rational& phi) {
  // Doubled construction with the unique solution
  //   a = (theta-phi)/3, b = theta/3, g = phi/3, dl = (phi-theta)/3.
  // The X12 conjugation of the second block turns its CX bracket into a
  // CX-dagger bracket; merging the adjacent brackets (CXdag CXdag = CX)
  // leaves three CX gates and four phase gates.
  const Rational a = (theta - phi) / 3;
  const Rational b = theta / 3;
  const Rational g = phi / 3;
  const Rational dl = (phi - theta) / 3;
  Circuit c(2);
  c.push(Gate::zphase(0, Phase(a + dl, b + g)));
  c.push(Gate::zphase(1, Phase(a + g, b + dl)));
  c.push(Gate::cx(0, 1));
  c.push(Gate::zphase(1, Phase(-a, -b)));
  c.push(Gate::cx(0, 1));
  c.push(Gate::zphase(1, Phase(-g, -dl)));
  c.push(Gate::cx(0, 1));
  return finish("controlled-phase", std::move(c), "|2>-controlled Z(theta,phi)");
}

SynthResult controlled_on(int level, SynthResult inner) {
  if (level < 0 || level > 2) throw std::invalid_argument("controlled_on: level must be 0, 1 or 2");
  if (level == 2) return inner;
  Circuit c(inner.circuit.n_wires);
  // Route |level> to |2> on the control wire, apply, route back.
  c.push(Gate::simple(level == 0 ? GateKind::Xm1 : GateKind::Xp1, 0));
  c.append(inner.circuit);
  c.push(Gate::simple(level == 0 ? GateKind::Xp1 : GateKind::Xm1, 0));
  SynthResult r = finish("controlled-on", std::move(c),
                         "level-" + std::to_string(level) + " control of " + inner.name);
  return r;
}

SynthResult square_control() {
  // |x,y> -> |x, y+x^2>: add one, then undo it when x = 0. The |0>-controlled
  // X(-1) runs through the |2>-controlled Z with the target diagonalized by H.
  Circuit c(2);
  c.push(Gate::simple(GateKind::Xp1, 1));
  c.push(Gate::simple(GateKind::Xm1, 0));
  c.push(Gate::simple(GateKind::Hdag, 1));
  c.append(controlled_phase(Rational(1), Rational(2)).circuit);
  c.push(Gate::simple(GateKind::H, 1));
  c.push(Gate::simple(GateKind::Xp1, 0));
  return finish("square-control", std::move(c), "store y + x^2 on the second wire");
}

SynthResult square_phase_pair(const Rational& alpha) {
  const SynthResult sc = square_control();
  Circuit c(2);
  c.append(sc.circuit);
  c.push(Gate::zphase(1, Phase(alpha, alpha)));
  c.append(sc.circuit.adjointed());
  return finish("square-phase-pair", std::move(c), "w^(alpha (y+x^2)^2) phase");
}

namespace {

// Recursive multiplier emission. `terms` records (sign, value-wire) for every
// +-alpha phase event in circuit order.
void emit_multiplier(Circuit& c, std::vector<std::pair<int, int>>& terms, int n,
                     const Rational& alpha) {
  const Phase plus(alpha, alpha);
  const Phase minus(-alpha, -alpha);
  if (n == 2) {
    c.push(Gate::zphase(0, plus));
    terms.push_back({+1, 0});
    c.push(Gate::zphase(1, plus));
    terms.push_back({+1, 1});
    c.push(Gate::cx(0, 1));
    c.push(Gate::zphase(1, minus));
    terms.push_back({-1, 1});
    c.push(Gate::cxdag(0, 1));
    return;
  }
  std::vector<std::pair<int, int>> inner_terms;
  Circuit inner(n - 1);
  emit_multiplier(inner, inner_terms, n - 1, alpha);
  const SynthResult sc = square_control();
  const int w = n - 1;  // the new wire
  std::size_t seen = 0;
  for (const Gate& g : inner.gates) {
    c.push(g);
    const bool is_term = g.kind == GateKind::Zphase && (g.phase == plus || g.phase == minus);
    if (!is_term) continue;
    const auto [sign, reg] = inner_terms[seen++];
    terms.push_back({sign, reg});
    // Square gadget onto the new wire, with the opposite sign.
    Circuit sc_here(n);
    for (const Gate& gg : sc.circuit.gates) {
      Gate moved = gg;
      for (int& wi : moved.wires) wi = wi == 0 ? reg : w;
      sc_here.push(std::move(moved));
    }
    c.append(sc_here);
    c.push(Gate::zphase(w, sign > 0 ? minus : plus));
    terms.push_back({-sign, w});
    c.append(sc_here.adjointed());
  }
  c.push(Gate::zphase(w, plus));
  terms.push_back({+1, w});
}

}  // namespace

SynthResult phase_multiplier(int n, const Rational& alpha) {
  if (n < 2) throw std::invalid_argument("phase_multiplier: n must be >= 2");
  Circuit c(n);
  std::vector<std::pair<int, int>> terms;
  emit_multiplier(c, terms, n, alpha);
  SynthResult r = finish("phase-multiplier", std::move(c), "product-of-trits phase");
  for (const auto& [sign, wire] : terms) r.term_signs.push_back(sign);
  return r;
}

SynthResult emulate_qubit_diag(const std::vector<Rational>& alphas) {
  const std::size_t len = alphas.size();
  int n = 0;
  while ((std::size_t{1} << n) < len) ++n;
  if (len < 2 || (std::size_t{1} << n) != len)
    throw std::invalid_argument("emulate_qubit_diag: list length must be a power of 2 (>= 2)");
  Circuit c(n);
  if (n == 1) {
    // diag(w^a0, w^a1) ~ diag(1, w^(a1-a0)) up to global phase.
    const Rational da = alphas[1] - alphas[0];
    if (da != 0) c.push(Gate::zphase(0, Phase(da, 2 * da)));
  } else {
    for (std::size_t s = 0; s < len; ++s) {
      if (alphas[s] == 0) continue;
      // Conjugate a multiplier by X01 on the wires where s has a 0 bit, so
      // the phase fires exactly on the qubit basis state s.
      std::vector<int> flips;
      for (int i = 0; i < n; ++i)
        if (((s >> (n - 1 - i)) & 1) == 0) flips.push_back(i);
      for (int w : flips) c.push(Gate::simple(GateKind::X01, w));
      c.append(phase_multiplier(n, alphas[s]).circuit);
      for (int w : flips) c.push(Gate::simple(GateKind::X01, w));
    }
  }
  return finish("qubit-diag", std::move(c), "emulated qubit diagonal");
}

SynthResult emulate_ccu(const SynthResult& ket2_controlled_u) {
  if (ket2_controlled_u.circuit.n_wires != 2)
    throw std::invalid_argument("emulate_ccu: inner construction must act on 2 qutrits");
  Circuit c(3);
  c.push(Gate::cx(0, 1));
  Circuit shifted(3);
  for (const Gate& g : ket2_controlled_u.circuit.gates) {
    Gate moved = g;
    for (int& w : moved.wires) w += 1;
    shifted.push(std::move(moved));
  }
  c.append(shifted);
  c.push(Gate::cxdag(0, 1));
  return finish("ccu-emulation", std::move(c), "qubit CCU from " + ket2_controlled_u.name);
}

SynthResult emulate_ket2_qubit_phase(const Rational& eta) {
  // Single block with 2a - b = 3k and a + b = eta, i.e. a = eta/3 + k,
  // b = 2 eta/3 - k. Phases are normalized mod 3, and the alias classes of
  // (a, b) are invariant under integer shifts of k, so k = 0 is canonical.
  // At eta = 3/2 this gives (1/2, 1) = Z(3/2,0) times a Clifford, which the
  // alias pass expands through X12 R X12: three R gates in total.
  const Rational a = eta / 3;
  const Rational b = 2 * eta / 3;
  SynthResult r = finish("ket2-qubit-phase", ket2_block(a, b), "emulated |2>-controlled qubit phase");
  r.free_k = 0;
  return r;
}

SynthResult emulate_ccz() {
  // Qubit Z = diag(1, -1) = diag(1, w^(3/2)).
  SynthResult inner = emulate_ket2_qubit_phase(Rational(3, 2));
  SynthResult r = emulate_ccu(inner);
  r.name = "ccz-emulation";
  r.description = "qubit CCZ in qutrit Clifford+R";
  return r;
}

std::vector<std::string> construction_names() {
  return {"phase-gadget",   "square-phase",     "controlled-phase", "controlled-on",
          "square-control", "square-phase-pair", "phase-multiplier", "qubit-diag",
          "ket2-qubit-phase", "ccu-emulation",   "ccz-emulation"};
}

}  // namespace synth
}  // namespace trizx
