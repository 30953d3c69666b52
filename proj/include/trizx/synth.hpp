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
#include "trizx/gates.hpp"
#include "trizx/oracle.hpp"

#include <string>
#include <vector>

namespace trizx {
namespace synth {

// A synthesized construction: circuit form, diagram form and enough metadata
// to verify both against the brute-force oracle.
struct SynthResult {
  std::string name;
  Circuit circuit;
  Diagram diagram;
  ResourceCounts counts;            // of the decomposed circuit
  std::vector<int> term_signs;      // phase multiplier term signs, in emission order
  int free_k = 0;                  // the free integer of the emulated phase construction
  std::string description;
};

// Diagonal phase applied by trit sum: |x1..xn> gets w^alpha when the sum is
// 1 mod 3 and w^beta when it is 2. The circuit form is the CX ladder around a
// Z(alpha, beta) phase, pairing every CX with a CX-dagger; the diagram form
// is the fused gadget.
SynthResult phase_gadget(int n, const Rational& alpha, const Rational& beta);
// Deliberately wrong pairing (CX with CX instead of CX-dagger); useful as a
// negative control, not a gadget.
Circuit phase_gadget_wrong_pairing(const Rational& alpha, const Rational& beta);
// The fused diagram form alone.
Diagram fused_phase_gadget(int n, const Rational& alpha, const Rational& beta);

// |x> -> w^(alpha x^2) |x>, i.e. Z(alpha, alpha).
Gate square_phase_gate(const Rational& alpha);

// Single conditional-phase block: identity on control |0>, Z(2a-b, a+b) on
// control |1>, Z(a+b, 2b-a) on control |2>.
Circuit ket2_block(const Rational& a, const Rational& b);

// |2>-controlled Z(theta, phi) via the doubled construction; at most 4
// CX-type gates and 4 phase gates.
SynthResult controlled_phase(const Rational& theta, const Rational& phi);

// Retargets a |2>-controlled construction to control level 0, 1 or 2 by
// conjugating the control wire with X(+-1).
SynthResult controlled_on(int level, SynthResult inner);

// |x,y> -> |x, y + x^2 mod 3>.
SynthResult square_control();

// |x,y> -> w^(alpha (y+x^2)^2) |x,y>.
SynthResult square_phase_pair(const Rational& alpha);

// Phase multiplier, built recursively by inserting the square gadget after
// every phase term of the (n-1)-wire multiplier; emits 2^n - 1 phase terms,
// all with labels +-alpha. The exact action is w^(alpha V) with V the
// left-nested integer product (see oracle::nested_multiplier_spec); V is
// congruent to x1...xn mod 3, so the gate is the reduced-product multiplier
// exactly when alpha is an integer, and on the {0,1} subspace for every
// alpha.
SynthResult phase_multiplier(int n, const Rational& alpha);

// Emulated qubit diagonal diag(w^a_1, ..., w^a_{2^n}) on n qutrits.
SynthResult emulate_qubit_diag(const std::vector<Rational>& alphas);

// Qubit CCU emulation from a 2-qutrit |2>-controlled construction whose
// inner gate preserves the qubit subspace; same non-Clifford cost.
SynthResult emulate_ccu(const SynthResult& ket2_controlled_u);

// |2>-controlled emulated qubit phase diag(1, w^eta); the free integer k is
// chosen to minimize the non-Clifford class of the block phases.
SynthResult emulate_ket2_qubit_phase(const Rational& eta);

// Qubit CCZ emulation: 3 wires, R-count 3, T-count 0.
SynthResult emulate_ccz();

// Construction registry (names accepted by the command line).
std::vector<std::string> construction_names();

}  // namespace synth
}  // namespace trizx
