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
#include "trizx/matrix.hpp"
#include "trizx/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trizx {

// Gate-level model of qutrit circuits, independent of the ZX machinery. This
// is the oracle path: matrices here come straight from the gate definitions.

enum class GateKind : std::uint8_t {
  Xp1,   // |t> -> |t+1 mod 3>
  Xm1,   // |t> -> |t-1 mod 3>
  X01,   // swap |0>,|1>
  X12,   // swap |1>,|2>
  X02,   // swap |0>,|2>
  H,     // qutrit Hadamard
  Hdag,
  CX,    // |i,j> -> |i, i+j mod 3>
  CXdag, // |i,j> -> |i, j-i mod 3>
  Zphase // diag(1, w^a, w^b)
};

const char* gate_kind_token(GateKind k);

struct Gate {
  GateKind kind = GateKind::Zphase;
  std::vector<int> wires;  // control first for CX/CXdag and controlled gates
  Phase phase;             // for Zphase
  int control_level = -1;  // -1: uncontrolled; 0/1/2: |level>-controlled, wires[0] is the control

  bool controlled() const { return control_level >= 0; }
  int arity() const { return static_cast<int>(wires.size()); }

  // Canonical phase-gate aliases.
  static Gate zphase(int w, Phase p) { return {GateKind::Zphase, {w}, std::move(p), -1}; }
  static Gate s(int w) { return zphase(w, Phase(0, 1)); }
  static Gate t(int w) { return zphase(w, Phase(Rational(1, 3), Rational(-1, 3))); }
  static Gate tdag(int w) { return zphase(w, Phase(Rational(-1, 3), Rational(1, 3))); }
  static Gate r(int w) { return zphase(w, Phase(Rational(0), Rational(3, 2))); }
  static Gate pauli_z(int w, int x = 1) { return zphase(w, pauli_phase(x)); }

  static Gate simple(GateKind k, int w) { return {k, {w}, {}, -1}; }
  static Gate cx(int c, int t) { return {GateKind::CX, {c, t}, {}, -1}; }
  static Gate cxdag(int c, int t) { return {GateKind::CXdag, {c, t}, {}, -1}; }
  // |level>-controlled inner gate; the inner gate's wires follow the control.
  static Gate controlled_on_level(int level, int control, Gate inner);

  Gate adjointed() const;

  bool is_t_family() const {
    return kind == GateKind::Zphase && !controlled() &&
           (phase == Phase(Rational(1, 3), Rational(-1, 3)) ||
            phase == Phase(Rational(-1, 3), Rational(1, 3)));
  }
  bool is_r_gate() const {
    return kind == GateKind::Zphase && !controlled() && phase == Phase(Rational(0), Rational(3, 2));
  }
};

struct Circuit {
  int n_wires = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int n) : n_wires(n) {}

  void push(Gate g);
  void append(const Circuit& c);  // n_wires grows to cover both circuits
  Circuit adjointed() const;
  std::size_t size() const { return gates.size(); }
};

struct ResourceCounts {
  long t_count = 0;
  long r_count = 0;
  long nonclifford_phase_count = 0;
  long clifford_count = 0;
  long undecomposed_controls = 0;
};

// Exact gate matrix in the computational basis (3^arity dimensional).
Matrix gate_matrix(const Gate& g);

// Ordered product of the gates embedded on n wires: gates listed first are
// applied first.
Matrix circuit_matrix(const Circuit& c);

// Applies a k-wire gate matrix to selected wires of a 3^n-dimensional matrix
// (left multiplication). Exposed for the oracle builders.
Matrix apply_on_wires(const Matrix& m, const Matrix& g, const std::vector<int>& wires, int n);

// Fixed, test-validated gate -> diagram fragment table. Controlled kinds have
// no table entry (they are decomposed by the synthesis layer first) and
// raise std::invalid_argument.
Diagram to_diagram(const Circuit& c);

ResourceCounts count_resources(const Circuit& c);

// Rewrites every phase gate into canonical aliases plus Clifford remainders:
// T/Tdag and R (also in its X12-conjugated Z(3/2,0) form) are split off so
// that resource counting sees them as actual gates.
Circuit decompose_phase_aliases(const Circuit& c);

// Text format, one gate per line: "CX 0 1", "ZPH 2 1/3 -1/3", "C2 Z 0 1".
std::string emit_circuit(const Circuit& c);
Circuit parse_circuit(const std::string& text);  // throws ParseError-compatible runtime_error

}  // namespace trizx
