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

#include <cstdint>

namespace trizx {

// Deterministic splitmix64 generator. Sampling avoids std::distributions so
// reports are byte-identical across platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

  int trit() { return static_cast<int>(below(3)); }

  // Random rational in [0, 3) with denominator <= max_den.
  Rational rational(std::uint64_t max_den = 24) {
    const std::uint64_t den = 1 + below(max_den);
    const std::uint64_t num = below(3 * den);
    return Rational(BigInt(num), BigInt(den));
  }

  Phase phase(std::uint64_t max_den = 24) { return Phase(rational(max_den), rational(max_den)); }

 private:
  std::uint64_t state_;
};

}  // namespace trizx
