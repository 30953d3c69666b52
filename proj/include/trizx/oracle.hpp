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

#include "trizx/gates.hpp"
#include "trizx/matrix.hpp"
#include "trizx/rational.hpp"

#include <functional>
#include <vector>

namespace trizx {
namespace oracle {

// Independent brute-force ground truth. Everything here is built by direct
// enumeration over basis states; nothing routes through the diagram
// evaluator (the only shared layers are complex numbers and gate matrices).

// A diagonal unitary on n qutrits, specified by a total function from
// tritstrings to rational omega exponents.
struct DiagonalSpec {
  int n = 0;
  std::vector<Rational> f;  // size 3^n, big-endian tritstring index

  static DiagonalSpec from_function(int n, const std::function<Rational(const std::vector<int>&)>& fn);
};

Matrix diag_matrix(const DiagonalSpec& spec);

// f(x) = alpha * (x_1 ... x_n mod 3)
DiagonalSpec multiplier_spec(int n, const Rational& alpha);
// f(x) = alpha * V with the left-nested integer product
// V = (..((x_1 x_2 mod 3) * x_3) * ..) * x_n, reduced only at the first
// multiplication. This is what the recursive square-gadget construction
// implements exactly; it agrees with multiplier_spec mod 3 (so exactly for
// integer alpha, and exactly on the {0,1} subspace for every alpha).
DiagonalSpec nested_multiplier_spec(int n, const Rational& alpha);
// f(x) = g(sum x_i mod 3) with g(0)=0, g(1)=alpha, g(2)=beta
DiagonalSpec gadget_spec(int n, const Rational& alpha, const Rational& beta);

// x*y == x^2 + y^2 - (x+y)^2 over the integers, squares reduced mod 3,
// checked for all 9 trit pairs (n==2) or the three-variable expansion for
// all 27 triples (n==3).
bool sum_square_identity_check(int n);
// x^4 == x^2 mod 3 for all trits.
bool fourth_power_identity_check();

// |x,y> -> |x, y + x^2 mod 3>, as a 9x9 permutation matrix.
Matrix square_control_matrix();

// Emulation targets.
Matrix qubit_cnot();
Matrix qubit_ccz();
Matrix qubit_diag(const std::vector<Rational>& alphas);  // diag(w^a_1, ..., w^a_k)
// Qubit CCU for a 2x2 qubit unitary U.
Matrix qubit_ccu(const Matrix& u);

struct EmulationReport {
  bool pass = false;
  double leakage = 0.0;
  double residual = 0.0;
  Complex global{1.0, 0.0};
};

// Passes iff the {0,1}-subspace restriction of m equals the qubit target up
// to one global phase and the leakage is within tol.
EmulationReport check_emulation(const Matrix& m, const Matrix& qubit_target,
                                double tol = kDefaultTol);

// Specialized check for a 2-qutrit |2>-controlled emulated qubit phase gate
// diag(1, w^eta): control stays a qutrit, the target is restricted to {0,1},
// and phases on the target |2> level are unconstrained.
EmulationReport check_ket2_qubit_phase(const Matrix& m, const Rational& eta,
                                       double tol = kDefaultTol);

}  // namespace oracle
}  // namespace trizx
