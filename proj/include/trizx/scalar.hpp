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

#include <cmath>
#include <cstdint>

namespace trizx {

// Exact global scalar of a diagram: sign * omega^omega_exp * sqrt(3)^sqrt3_exp.
// Rewrite rules only ever introduce factors of this shape, so scalars stay
// exact under rule application; they are materialized as complex only in the
// evaluator.
struct Scalar {
  Rational omega_exp{0};  // normalized to [0,3)
  std::int64_t sqrt3_exp = 0;
  int sign = 1;  // +1 or -1

  Scalar() = default;
  Scalar(Rational w, std::int64_t k, int s) : omega_exp(mod3(std::move(w))), sqrt3_exp(k), sign(s >= 0 ? 1 : -1) {}

  static Scalar one() { return Scalar(); }
  static Scalar omega(Rational w) { return Scalar(std::move(w), 0, 1); }
  static Scalar sqrt3(std::int64_t k) { return Scalar(Rational(0), k, 1); }
  static Scalar minus_one() { return Scalar(Rational(0), 0, -1); }

  bool is_one() const { return omega_exp == 0 && sqrt3_exp == 0 && sign == 1; }

  Scalar conjugated() const { return Scalar(-omega_exp, sqrt3_exp, sign); }
  Scalar inverse() const { return Scalar(-omega_exp, -sqrt3_exp, sign); }

  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    return Scalar(x.omega_exp + y.omega_exp, x.sqrt3_exp + y.sqrt3_exp, x.sign * y.sign);
  }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.omega_exp == y.omega_exp && x.sqrt3_exp == y.sqrt3_exp && x.sign == y.sign;
  }

  Complex to_complex() const {
    const double mag = std::pow(std::sqrt(3.0), static_cast<double>(sqrt3_exp));
    return static_cast<double>(sign) * mag * omega_pow(omega_exp);
  }

  std::string str() const {
    std::string s = sign < 0 ? "-" : "";
    s += "w^" + format_rational(omega_exp) + "*r3^" + std::to_string(sqrt3_exp);
    return s;
  }
};

}  // namespace trizx
