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

#include "trizx/oracle.hpp"

#include <doctest.h>

using namespace trizx;
using namespace trizx::oracle;

TEST_CASE("diag oracle basics") {
  DiagonalSpec zero;
  zero.n = 2;
  zero.f.assign(9, Rational(0));
  CHECK((diag_matrix(zero) - Matrix::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-12);
  DiagonalSpec bad;
  bad.n = 2;
  bad.f.assign(4, Rational(0));
  CHECK_THROWS_AS(diag_matrix(bad), std::invalid_argument);
}

TEST_CASE("the multiplier spec applies alpha times the product") {
  const Rational alpha(2, 7);
  const Matrix m = diag_matrix(multiplier_spec(2, alpha));
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      const Complex expect = omega_pow(alpha * ((x * y) % 3));
      CHECK(std::abs(m(x * 3 + y, x * 3 + y) - expect) < 1e-12);
    }
}

TEST_CASE("gadget spec applies a phase by the trit sum") {
  const Matrix m = diag_matrix(gadget_spec(2, Rational(1, 5), Rational(2, 5)));
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      const int s = (x + y) % 3;
      const Rational e = s == 0 ? Rational(0) : (s == 1 ? Rational(1, 5) : Rational(2, 5));
      CHECK(std::abs(m(x * 3 + y, x * 3 + y) - omega_pow(e)) < 1e-12);
    }
}

TEST_CASE("sum-of-squares identities hold exhaustively over trits") {
  CHECK(sum_square_identity_check(2));
  CHECK(sum_square_identity_check(3));
  CHECK(fourth_power_identity_check());
}

TEST_CASE("nested and reduced multiplier specs agree mod 3") {
  const Rational alpha(1, 5);
  const auto nested = nested_multiplier_spec(3, alpha);
  const auto reduced = multiplier_spec(3, alpha);
  for (std::size_t i = 0; i < nested.f.size(); ++i)
    CHECK(is_integer((nested.f[i] - reduced.f[i]) / (3 * alpha)));
  // They agree everywhere when alpha is an integer.
  const auto ni = nested_multiplier_spec(3, Rational(2));
  const auto ri = multiplier_spec(3, Rational(2));
  const Matrix dm = diag_matrix(ni) - diag_matrix(ri);
  CHECK(dm.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("square control permutation") {
  const Matrix m = square_control_matrix();
  // |0,1> -> |0,1>, |2,2> -> |2,0>, |1,0> -> |1,1>
  CHECK(std::abs(m(0 * 3 + 1, 0 * 3 + 1) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(m(2 * 3 + 0, 2 * 3 + 2) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(m(1 * 3 + 1, 1 * 3 + 0) - Complex(1, 0)) < 1e-12);
  CHECK((m * m.adjoint() - Matrix::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("check_emulation accepts the identity") {
  const auto rep = check_emulation(Matrix::Identity(9, 9), Matrix::Identity(4, 4));
  CHECK(rep.pass);
  CHECK(rep.leakage == 0.0);
}

TEST_CASE("qutrit CX does not emulate CNOT: |1,1> leaks") {
  // Exhaustive enumeration of the four qubit-subspace columns decides this:
  // CX|1,1> = |1,2| which leaves the subspace, so the check must fail and
  // report unit leakage.
  const Matrix cx = gate_matrix(Gate::cx(0, 1));
  const auto rep = check_emulation(cx, qubit_cnot());
  CHECK(!rep.pass);
  CHECK(rep.leakage == doctest::Approx(1.0));
}

TEST_CASE("qubit targets") {
  CHECK(qubit_ccz()(7, 7) == Complex(-1, 0));
  const Matrix u = (Matrix(2, 2) << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 1))
                       .finished();
  const Matrix ccu = qubit_ccu(u);
  CHECK(ccu(6, 6) == Complex(1, 0));
  CHECK(ccu(7, 7) == Complex(0, 1));
  CHECK_THROWS_AS(qubit_ccu(Matrix::Identity(3, 3)), std::invalid_argument);
  const Matrix d = qubit_diag({Rational(0), Rational(3, 2)});
  CHECK(std::abs(d(1, 1) - Complex(-1, 0)) < 1e-12);
}
