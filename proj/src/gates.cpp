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

#include "trizx/gates.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace trizx {

const char* gate_kind_token(GateKind k) {
  switch (k) {
    case GateKind::Xp1: return "XP1";
    case GateKind::Xm1: return "XM1";
    case GateKind::X01: return "X01";
    case GateKind::X12: return "X12";
    case GateKind::X02: return "X02";
    case GateKind::H: return "H";
    case GateKind::Hdag: return "HDAG";
    case GateKind::CX: return "CX";
    case GateKind::CXdag: return "CXDAG";
    case GateKind::Zphase: return "ZPH";
  }
  return "?";
}

Gate Gate::controlled_on_level(int level, int control, Gate inner) {
  if (level < 0 || level > 2)
    throw std::invalid_argument("controlled gate: level must be 0, 1 or 2");
  if (inner.controlled()) throw std::invalid_argument("controlled gate: nested controls unsupported");
  Gate g = std::move(inner);
  g.control_level = level;
  g.wires.insert(g.wires.begin(), control);
  std::set<int> distinct(g.wires.begin(), g.wires.end());
  if (distinct.size() != g.wires.size())
    throw std::invalid_argument("controlled gate: wires must be distinct");
  return g;
}

Gate Gate::adjointed() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::Xp1: g.kind = GateKind::Xm1; break;
    case GateKind::Xm1: g.kind = GateKind::Xp1; break;
    case GateKind::CX: g.kind = GateKind::CXdag; break;
    case GateKind::CXdag: g.kind = GateKind::CX; break;
    case GateKind::H: g.kind = GateKind::Hdag; break;
    case GateKind::Hdag: g.kind = GateKind::H; break;
    case GateKind::Zphase: g.phase = phase.negated(); break;
    case GateKind::X01:
    case GateKind::X12:
    case GateKind::X02: break;  // self-inverse
  }
  return g;
}

void Circuit::push(Gate g) {
  for (int w : g.wires) {
    if (w < 0) throw std::invalid_argument("circuit: negative wire index");
    n_wires = std::max(n_wires, w + 1);
  }
  gates.push_back(std::move(g));
}

void Circuit::append(const Circuit& c) {
  n_wires = std::max(n_wires, c.n_wires);
  for (const Gate& g : c.gates) push(g);
}

Circuit Circuit::adjointed() const {
  Circuit out(n_wires);
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) out.push(it->adjointed());
  return out;
}

namespace {

Matrix permutation_matrix(const std::array<int, 3>& img) {
  Matrix m = Matrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) m(img[static_cast<std::size_t>(k)], k) = Complex(1, 0);
  return m;
}

Matrix base_matrix(GateKind kind, const Phase& phase) {
  switch (kind) {
    case GateKind::Xp1: return permutation_matrix({1, 2, 0});
    case GateKind::Xm1: return permutation_matrix({2, 0, 1});
    case GateKind::X01: return permutation_matrix({1, 0, 2});
    case GateKind::X12: return permutation_matrix({0, 2, 1});
    case GateKind::X02: return permutation_matrix({2, 1, 0});
    case GateKind::H:
    case GateKind::Hdag: {
      Matrix m(3, 3);
      const double norm = 1.0 / std::sqrt(3.0);
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          Complex v = norm * omega_pow(Rational(j * k));
          if (kind == GateKind::Hdag) v = std::conj(v);
          m(j, k) = v;
        }
      return m;
    }
    case GateKind::CX:
    case GateKind::CXdag: {
      Matrix m = Matrix::Zero(9, 9);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const int jj = kind == GateKind::CX ? (i + j) % 3 : (j - i + 3) % 3;
          m(i * 3 + jj, i * 3 + j) = Complex(1, 0);
        }
      return m;
    }
    case GateKind::Zphase: {
      Matrix m = Matrix::Zero(3, 3);
      m(0, 0) = Complex(1, 0);
      m(1, 1) = omega_pow(phase.a);
      m(2, 2) = omega_pow(phase.b);
      return m;
    }
  }
  throw std::logic_error("base_matrix: unreachable");
}

}  // namespace

Matrix gate_matrix(const Gate& g) {
  Matrix inner = base_matrix(g.kind, g.phase);
  if (!g.controlled()) return inner;
  const Eigen::Index d = inner.rows();
  Matrix m = Matrix::Zero(3 * d, 3 * d);
  for (int c = 0; c < 3; ++c) {
    if (c == g.control_level)
      m.block(c * d, c * d, d, d) = inner;
    else
      m.block(c * d, c * d, d, d) = Matrix::Identity(d, d);
  }
  return m;
}

Matrix apply_on_wires(const Matrix& m, const Matrix& g, const std::vector<int>& wires, int n) {
  const Eigen::Index dim = pow3(n);
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("apply_on_wires: shape mismatch");
  const int k = static_cast<int>(wires.size());
  if (g.rows() != pow3(k)) throw std::invalid_argument("apply_on_wires: gate arity mismatch");

  // Strides of the selected wires in the big-endian full index.
  std::vector<Eigen::Index> stride(wires.size());
  for (std::size_t i = 0; i < wires.size(); ++i) stride[i] = pow3(n - 1 - wires[i]);

  Matrix out = Matrix::Zero(dim, dim);
  const Eigen::Index sub = pow3(k);
  // Enumerate all full indices whose selected digits are zero, then scatter.
  for (Eigen::Index basis = 0; basis < dim; ++basis) {
    bool rest = true;
    for (std::size_t i = 0; i < wires.size(); ++i)
      if ((basis / stride[i]) % 3 != 0) {
        rest = false;
        break;
      }
    if (!rest) continue;
    for (Eigen::Index a = 0; a < sub; ++a) {
      Eigen::Index row_a = basis;
      Eigen::Index t = a;
      for (std::size_t i = wires.size(); i-- > 0;) {
        row_a += (t % 3) * stride[i];
        t /= 3;
      }
      for (Eigen::Index b = 0; b < sub; ++b) {
        const Complex gv = g(a, b);
        if (gv == Complex(0, 0)) continue;
        Eigen::Index row_b = basis;
        Eigen::Index u = b;
        for (std::size_t i = wires.size(); i-- > 0;) {
          row_b += (u % 3) * stride[i];
          u /= 3;
        }
        out.row(row_a) += gv * m.row(row_b);
      }
    }
  }
  return out;
}

Matrix circuit_matrix(const Circuit& c) {
  const Eigen::Index dim = pow3(c.n_wires);
  Matrix m = Matrix::Identity(dim, dim);
  for (const Gate& g : c.gates) m = apply_on_wires(m, gate_matrix(g), g.wires, c.n_wires);
  return m;
}

namespace {

// Appends the diagram fragment of one gate, advancing the per-wire frontier.
void emit_fragment(Diagram& d, std::vector<VertexId>& front, const Gate& g) {
  const auto chain = [&](int w, const Generator& gen) {
    const VertexId v = d.add_vertex(gen);
    d.add_edge(front[static_cast<std::size_t>(w)], v);
    front[static_cast<std::size_t>(w)] = v;
    return v;
  };
  switch (g.kind) {
    case GateKind::Zphase: chain(g.wires[0], Generator::z(g.phase)); return;
    case GateKind::H: chain(g.wires[0], Generator::h()); return;
    case GateKind::Hdag: chain(g.wires[0], Generator::hdag()); return;
    case GateKind::X12: chain(g.wires[0], Generator::x(pauli_phase(0))); return;
    case GateKind::X01: chain(g.wires[0], Generator::x(pauli_phase(1))); return;
    case GateKind::X02: chain(g.wires[0], Generator::x(pauli_phase(2))); return;
    case GateKind::Xp1:
      // X(+1) = X12 . X02 (X02 applied first).
      chain(g.wires[0], Generator::x(pauli_phase(2)));
      chain(g.wires[0], Generator::x(pauli_phase(0)));
      return;
    case GateKind::Xm1:
      chain(g.wires[0], Generator::x(pauli_phase(0)));
      chain(g.wires[0], Generator::x(pauli_phase(2)));
      return;
    case GateKind::CX: {
      // Control copies through a Z spider; the flexsymmetric X spider on the
      // target computes -(i+j), so an explicit X12 correction follows on the
      // target output. Each fragment carries a sqrt(3) normalization.
      const VertexId zc = chain(g.wires[0], Generator::z());
      const VertexId xt = chain(g.wires[1], Generator::x());
      d.add_edge(zc, xt);
      chain(g.wires[1], Generator::x(pauli_phase(0)));
      d.multiply_scalar(Scalar::sqrt3(1));
      return;
    }
    case GateKind::CXdag: {
      // Adjoint fragment: the X12 correction sits on the target input.
      chain(g.wires[1], Generator::x(pauli_phase(0)));
      const VertexId zc = chain(g.wires[0], Generator::z());
      const VertexId xt = chain(g.wires[1], Generator::x());
      d.add_edge(zc, xt);
      d.multiply_scalar(Scalar::sqrt3(1));
      return;
    }
  }
  throw std::logic_error("emit_fragment: unreachable");
}

}  // namespace

Diagram to_diagram(const Circuit& c) {
  Diagram d;
  std::vector<VertexId> front;
  for (int w = 0; w < c.n_wires; ++w) front.push_back(d.add_input());
  for (const Gate& g : c.gates) {
    if (g.controlled())
      throw std::invalid_argument("to_diagram: controlled gate has no table entry; decompose first");
    emit_fragment(d, front, g);
  }
  for (int w = 0; w < c.n_wires; ++w) {
    const VertexId out = d.add_output();
    d.add_edge(front[static_cast<std::size_t>(w)], out);
  }
  return d;
}

ResourceCounts count_resources(const Circuit& c) {
  ResourceCounts rc;
  for (const Gate& g : c.gates) {
    if (g.controlled()) {
      ++rc.undecomposed_controls;
      continue;
    }
    if (g.kind == GateKind::Zphase) {
      if (g.phase.is_clifford()) {
        ++rc.clifford_count;
      } else {
        ++rc.nonclifford_phase_count;
        if (g.is_t_family()) ++rc.t_count;
        if (g.is_r_gate()) ++rc.r_count;
      }
    } else {
      ++rc.clifford_count;
    }
  }
  return rc;
}

Circuit decompose_phase_aliases(const Circuit& c) {
  Circuit out(c.n_wires);
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::Zphase || g.controlled()) {
      out.push(g);
      continue;
    }
    const int w = g.wires[0];
    const Phase& p = g.phase;
    if (p.is_zero()) continue;
    if (p.is_clifford()) {
      out.push(g);
      continue;
    }
    const auto integral_offset = [&](const Phase& base) -> std::optional<Phase> {
      const Phase diff = p - base;
      if (diff.is_clifford()) return diff;
      return std::nullopt;
    };
    if (auto rest = integral_offset(Phase(Rational(1, 3), Rational(-1, 3)))) {
      out.push(Gate::t(w));
      if (!rest->is_zero()) out.push(Gate::zphase(w, *rest));
      continue;
    }
    if (auto rest = integral_offset(Phase(Rational(-1, 3), Rational(1, 3)))) {
      out.push(Gate::tdag(w));
      if (!rest->is_zero()) out.push(Gate::zphase(w, *rest));
      continue;
    }
    if (auto rest = integral_offset(Phase(Rational(0), Rational(3, 2)))) {
      out.push(Gate::r(w));
      if (!rest->is_zero()) out.push(Gate::zphase(w, *rest));
      continue;
    }
    if (auto rest = integral_offset(Phase(Rational(3, 2), Rational(0)))) {
      // Z(3/2, 0) = X12 R X12.
      out.push(Gate::simple(GateKind::X12, w));
      out.push(Gate::r(w));
      out.push(Gate::simple(GateKind::X12, w));
      if (!rest->is_zero()) out.push(Gate::zphase(w, *rest));
      continue;
    }
    out.push(g);
  }
  return out;
}

std::string emit_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "# wires " << c.n_wires << "\n";
  for (const Gate& g : c.gates) {
    if (g.controlled()) os << "C" << g.control_level << " ";
    if (g.kind == GateKind::Zphase && !g.controlled()) {
      if (g.phase == Phase(Rational(1, 3), Rational(-1, 3)))
        os << "T " << g.wires[0];
      else if (g.phase == Phase(Rational(-1, 3), Rational(1, 3)))
        os << "TDAG " << g.wires[0];
      else if (g.phase == Phase(Rational(0), Rational(1)))
        os << "S " << g.wires[0];
      else if (g.phase == Phase(Rational(0), Rational(3, 2)))
        os << "R " << g.wires[0];
      else {
        os << "ZPH " << g.wires[0] << " " << format_rational(g.phase.a) << " "
           << format_rational(g.phase.b);
      }
      os << "\n";
      continue;
    }
    if (g.kind == GateKind::Zphase && g.controlled() && pauli_exponent(g.phase) == 1) {
      os << "Z";
      for (int w : g.wires) os << " " << w;
      os << "\n";
      continue;
    }
    os << gate_kind_token(g.kind);
    for (int w : g.wires) os << " " << w;
    if (g.kind == GateKind::Zphase)
      os << " " << format_rational(g.phase.a) << " " << format_rational(g.phase.b);
    os << "\n";
  }
  return os.str();
}

Circuit parse_circuit(const std::string& text) {
  Circuit c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  const std::map<std::string, GateKind> simple = {
      {"XP1", GateKind::Xp1}, {"XM1", GateKind::Xm1},   {"X01", GateKind::X01},
      {"X12", GateKind::X12}, {"X02", GateKind::X02},   {"H", GateKind::H},
      {"HDAG", GateKind::Hdag}, {"CX", GateKind::CX},   {"CXDAG", GateKind::CXdag}};
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    const auto fail = [&](const std::string& msg) -> void {
      throw std::runtime_error("circuit line " + std::to_string(lineno) + ": " + msg);
    };
    const auto wire = [&](const std::string& s) {
      try {
        const int w = std::stoi(s);
        if (w < 0) fail("negative wire");
        return w;
      } catch (const std::runtime_error&) {
        throw;
      } catch (...) {
        fail("bad wire index '" + s + "'");
        return -1;
      }
    };
    const auto rat = [&](const std::string& s) {
      const auto r = parse_rational(s);
      if (!r) fail("bad rational '" + s + "'");
      return *r;
    };
    int level = -1;
    std::size_t at = 0;
    if (tok[0] == "C0" || tok[0] == "C1" || tok[0] == "C2") {
      level = tok[0][1] - '0';
      at = 1;
      if (tok.size() < 2) fail("controlled gate missing inner gate");
    }
    const std::string op = tok[at];
    std::vector<std::string> rest(tok.begin() + static_cast<std::ptrdiff_t>(at) + 1, tok.end());
    int control = -1;
    if (level >= 0) {
      // C<level> <op> <control> <target...> [params...]
      if (rest.empty()) fail("controlled gate missing control wire");
      control = wire(rest[0]);
      rest.erase(rest.begin());
    }
    Gate g;
    if (op == "ZPH") {
      if (rest.size() != 3) fail("ZPH expects: wire a b");
      g = Gate::zphase(wire(rest[0]), Phase(rat(rest[1]), rat(rest[2])));
    } else if (op == "T" || op == "TDAG" || op == "S" || op == "R" || op == "Z") {
      if (rest.size() != 1) fail(op + " expects one wire");
      const int w = wire(rest[0]);
      if (op == "T") g = Gate::t(w);
      else if (op == "TDAG") g = Gate::tdag(w);
      else if (op == "S") g = Gate::s(w);
      else if (op == "R") g = Gate::r(w);
      else g = Gate::pauli_z(w);
    } else if (simple.count(op)) {
      const GateKind k = simple.at(op);
      const std::size_t need = (k == GateKind::CX || k == GateKind::CXdag) ? 2 : 1;
      if (rest.size() != need) fail(op + " expects " + std::to_string(need) + " wire(s)");
      if (need == 2)
        g = Gate{k, {wire(rest[0]), wire(rest[1])}, {}, -1};
      else
        g = Gate::simple(k, wire(rest[0]));
      if (need == 2 && g.wires[0] == g.wires[1]) fail("control and target must differ");
    } else {
      fail("unknown gate '" + op + "'");
    }
    if (level >= 0) g = Gate::controlled_on_level(level, control, std::move(g));
    c.push(std::move(g));
  }
  return c;
}

}  // namespace trizx
