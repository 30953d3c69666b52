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

#include "trizx/rational.hpp"
#include "trizx/rng.hpp"
#include "trizx/scalar.hpp"

#include <doctest.h>

using namespace trizx;

TEST_CASE("rational parse and format round-trip") {
  CHECK(format_rational(*parse_rational("3/2")) == "3/2");
  CHECK(format_rational(*parse_rational("-1/3")) == "-1/3");
  CHECK(format_rational(*parse_rational("7")) == "7");
  CHECK(format_rational(*parse_rational("4/2")) == "2");
  CHECK(!parse_rational("1/0"));
  CHECK(!parse_rational("abc"));
  CHECK(!parse_rational("1.5"));
  CHECK(!parse_rational(""));
}

TEST_CASE("mod3 lands in [0,3) for random rationals") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const Rational r = rng.rational(24) - Rational(7, 2);
    const Rational m = mod3(r);
    CHECK(m >= 0);
    CHECK(m < 3);
    CHECK(is_integer((r - m) / 3));
  }
}

TEST_CASE("phase addition is componentwise and normalized") {
  // S * S
  CHECK(phase_add(Phase(0, 1), Phase(0, 1)) == Phase(0, 2));
  // T^3 as a diagonal product equals Z(1,2)
  const Phase t(Rational(1, 3), Rational(-1, 3));
  CHECK(phase_add(phase_add(t, t), t) == Phase(1, 2));
  // R^2 = I
  const Phase r(Rational(0), Rational(3, 2));
  CHECK(phase_add(r, r) == Phase(0, 0));
}

TEST_CASE("phase normalization property") {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const Phase p = rng.phase();
    const Phase q = rng.phase();
    const Phase s = phase_add(p, q);
    CHECK(s.a >= 0);
    CHECK(s.a < 3);
    CHECK(s.b >= 0);
    CHECK(s.b < 3);
  }
}

TEST_CASE("clifford detection is integrality of both exponents") {
  CHECK(Phase(0, 1).is_clifford());
  CHECK(Phase(2, 2).is_clifford());
  CHECK(!Phase(Rational(1, 3), Rational(-1, 3)).is_clifford());
  CHECK(!Phase(Rational(0), Rational(3, 2)).is_clifford());
}

TEST_CASE("pauli phase pairs") {
  CHECK(pauli_exponent(Phase(0, 0)) == 0);
  CHECK(pauli_exponent(Phase(1, 2)) == 1);
  CHECK(pauli_exponent(Phase(2, 1)) == 2);
  CHECK(!pauli_exponent(Phase(1, 1)));
  CHECK(pauli_phase(2) == Phase(2, 4));
}

TEST_CASE("scalar algebra matches its complex value") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const Scalar a(rng.rational(), static_cast<std::int64_t>(rng.below(5)) - 2,
                   rng.below(2) ? 1 : -1);
    const Scalar b(rng.rational(), static_cast<std::int64_t>(rng.below(5)) - 2,
                   rng.below(2) ? 1 : -1);
    const Complex prod = (a * b).to_complex();
    CHECK(std::abs(prod - a.to_complex() * b.to_complex()) < 1e-12);
    CHECK(std::abs((a * a.inverse()).to_complex() - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(a.conjugated().to_complex() - std::conj(a.to_complex())) < 1e-12);
  }
  CHECK(Scalar::omega(Rational(9, 4)).to_complex().imag() == doctest::Approx(-1.0));
}
