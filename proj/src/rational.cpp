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

namespace trizx {

std::string format_rational(const Rational& r) {
  const BigInt n = numerator(r);
  const BigInt d = denominator(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto slash = text.find('/');
  const auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!is_int(text)) return std::nullopt;
      return Rational(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    const BigInt d(den);
    if (d == 0) return std::nullopt;
    return Rational(BigInt(num), d);
  } catch (...) {
    return std::nullopt;
  }
}

std::optional<int> pauli_exponent(const Phase& p) {
  for (int x = 0; x < 3; ++x)
    if (p == pauli_phase(x)) return x;
  return std::nullopt;
}

}  // namespace trizx
