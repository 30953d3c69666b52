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

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace trizx {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Complex = std::complex<double>;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// r mod 3, result in [0, 3).
inline Rational mod3(const Rational& r) {
  const BigInt n = numerator(r);
  const BigInt d = denominator(r);  // canonical: d > 0
  BigInt q = n / (3 * d);
  if (n % (3 * d) != 0 && n < 0) --q;
  return r - 3 * q;
}

// omega^r = exp(2*pi*i*r/3). Phases are measured in omega-exponent units
// throughout, so a unit phase step is 2*pi/3 radians.
inline Complex omega_pow(const Rational& r) {
  const Rational m = mod3(r);
  return std::polar(1.0, 2.0 * std::numbers::pi * to_double(m) / 3.0);
}

std::string format_rational(const Rational& r);

// Parses "num", "-num", "num/den". Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& text);

// The label of a Z or X spider (or a Z(a,b) gate): a pair of exact rational
// omega exponents, kept normalized to [0,3) since omega^3 = 1.
struct Phase {
  Rational a{0};
  Rational b{0};

  Phase() = default;
  Phase(Rational a_, Rational b_) : a(mod3(std::move(a_))), b(mod3(std::move(b_))) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_clifford() const { return is_integer(a) && is_integer(b); }

  Phase negated() const { return Phase(-a, -b); }
  Phase swapped() const { return Phase(b, a); }

  friend Phase operator+(const Phase& p, const Phase& q) { return Phase(p.a + q.a, p.b + q.b); }
  friend Phase operator-(const Phase& p, const Phase& q) { return Phase(p.a - q.a, p.b - q.b); }
  friend bool operator==(const Phase& p, const Phase& q) { return p.a == q.a && p.b == q.b; }
  friend bool operator!=(const Phase& p, const Phase& q) { return !(p == q); }

  // omega-exponent applied to basis state |k>: 0 -> 0, 1 -> a, 2 -> b.
  Rational at(int k) const {
    switch (k) {
      case 0: return Rational(0);
      case 1: return a;
      case 2: return b;
      default: throw std::out_of_range("Phase::at: trit index out of range");
    }
  }

  std::string str() const { return format_rational(a) + "," + format_rational(b); }
};

inline Phase phase_add(const Phase& p, const Phase& q) { return p + q; }

// Pauli-type phase pair (x, 2x) for a trit x.
inline Phase pauli_phase(int x) { return Phase(Rational(x), Rational(2 * x)); }

// If p == (x, 2x) mod 3 for a trit x, returns x.
std::optional<int> pauli_exponent(const Phase& p);

}  // namespace trizx
