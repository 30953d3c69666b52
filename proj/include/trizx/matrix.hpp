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

#include <Eigen/Dense>

#include <iosfwd>
#include <string>

namespace trizx {

// Dense complex matrix of dimension 3^m x 3^n. Row/column index order is
// big-endian over the ordered boundary lists: the first listed boundary is
// the most significant trit.
using Matrix = Eigen::MatrixXcd;

constexpr double kDefaultTol = 1e-9;

inline std::int64_t pow3(int n) {
  std::int64_t p = 1;
  while (n-- > 0) p *= 3;
  return p;
}

// Returns k with 3^k == dim, or -1 if dim is not a power of 3.
int log3_exact(Eigen::Index dim);

enum class EquivMode { AnyNonzero, PositiveReal };

struct ScalarEquivalence {
  enum class Verdict { EqualExact, EqualUpToScalar, Inequivalent };
  Verdict verdict = Verdict::Inequivalent;
  Complex c{0.0, 0.0};   // m1 ~ c * m2 when equivalent
  double residual = 0.0; // max-norm error relative to max |m1|
};

// Decides whether m1 == c * m2 for some scalar c within tolerance. The
// candidate c is read off at the largest-magnitude entry of m2 and then
// checked globally. In PositiveReal mode, c must additionally be (close to)
// a positive real number. Throws std::invalid_argument on shape mismatch.
ScalarEquivalence scalar_equiv(const Matrix& m1, const Matrix& m2,
                               EquivMode mode = EquivMode::AnyNonzero, double tol = kDefaultTol);

struct SubspaceRestriction {
  Matrix block;    // 2^n x 2^n submatrix over all-{0,1} trit strings
  double leakage;  // max magnitude mapping a {0,1}-string column outside the subspace
};

// Restricts a 3^n x 3^n matrix to the qubit subspace spanned by basis states
// whose trits are all in {0,1}. Throws on non-square or non-power-of-3 input.
SubspaceRestriction qubit_subspace_restrict(const Matrix& m);

// Matrix file formats (round-trippable):
//  - NPY: standard .npy v1.0, dtype <c16, C order.
//  - CSV: one row per matrix row, entries "re,im" pairs separated by ';'.
void write_npy(const std::string& path, const Matrix& m);
Matrix read_npy(const std::string& path);
void write_csv(const std::string& path, const Matrix& m);
Matrix read_csv(const std::string& path);

}  // namespace trizx
