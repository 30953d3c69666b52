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

#include "trizx/matrix.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace trizx {

int log3_exact(Eigen::Index dim) {
  int k = 0;
  Eigen::Index p = 1;
  while (p < dim) {
    p *= 3;
    ++k;
  }
  return p == dim ? k : -1;
}

namespace {

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, std::abs(m(i, j)));
  return best;
}

}  // namespace

ScalarEquivalence scalar_equiv(const Matrix& m1, const Matrix& m2, EquivMode mode, double tol) {
  if (m1.rows() != m2.rows() || m1.cols() != m2.cols())
    throw std::invalid_argument("scalar_equiv: shape mismatch");
  ScalarEquivalence out;
  const double a1 = max_abs(m1);
  const double a2 = max_abs(m2);
  if (a1 <= tol && a2 <= tol) {
    out.verdict = ScalarEquivalence::Verdict::EqualExact;
    out.c = 1.0;
    return out;
  }
  if (a2 <= tol * a1 || a1 <= tol * a2) {
    out.residual = std::max(a1, a2);
    return out;  // one side is (numerically) zero and the other is not
  }
  // Deterministic pick: lowest linear index among maximal entries of m2.
  Eigen::Index bi = 0, bj = 0;
  double best = -1.0;
  for (Eigen::Index j = 0; j < m2.cols(); ++j)
    for (Eigen::Index i = 0; i < m2.rows(); ++i)
      if (std::abs(m2(i, j)) > best + 1e-15) {
        best = std::abs(m2(i, j));
        bi = i;
        bj = j;
      }
  const Complex c = m1(bi, bj) / m2(bi, bj);
  out.c = c;
  if (std::abs(c) <= tol) return out;
  out.residual = max_abs(m1 - c * m2) / a1;
  if (out.residual > tol) return out;
  if (mode == EquivMode::PositiveReal) {
    if (std::abs(c.imag()) > tol * std::abs(c) || c.real() <= 0.0) {
      out.verdict = ScalarEquivalence::Verdict::Inequivalent;
      return out;
    }
  }
  out.verdict = std::abs(c - 1.0) <= tol ? ScalarEquivalence::Verdict::EqualExact
                                         : ScalarEquivalence::Verdict::EqualUpToScalar;
  return out;
}

SubspaceRestriction qubit_subspace_restrict(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("qubit_subspace_restrict: non-square input");
  const int n = log3_exact(m.rows());
  if (n < 0) throw std::invalid_argument("qubit_subspace_restrict: dimension is not a power of 3");

  // Enumerate indices whose base-3 digits are all in {0,1}.
  std::vector<Eigen::Index> sub;
  std::vector<bool> in_sub(static_cast<std::size_t>(m.rows()), false);
  for (Eigen::Index idx = 0; idx < m.rows(); ++idx) {
    Eigen::Index t = idx;
    bool ok = true;
    for (int k = 0; k < n; ++k) {
      if (t % 3 == 2) {
        ok = false;
        break;
      }
      t /= 3;
    }
    if (ok) {
      sub.push_back(idx);
      in_sub[static_cast<std::size_t>(idx)] = true;
    }
  }

  SubspaceRestriction out;
  const Eigen::Index dim = static_cast<Eigen::Index>(sub.size());
  out.block.resize(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) out.block(i, j) = m(sub[i], sub[j]);
  out.leakage = 0.0;
  for (Eigen::Index j : sub)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!in_sub[static_cast<std::size_t>(i)])
        out.leakage = std::max(out.leakage, std::abs(m(i, j)));
  return out;
}

void write_npy(const std::string& path, const Matrix& m) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_npy: cannot open " + path);
  std::ostringstream hdr;
  hdr << "{'descr': '<c16', 'fortran_order': False, 'shape': (" << m.rows() << ", " << m.cols()
      << "), }";
  std::string h = hdr.str();
  const std::size_t base = 10 + h.size() + 1;
  const std::size_t pad = (64 - base % 64) % 64;
  h.append(pad, ' ');
  h.push_back('\n');
  const char magic[] = "\x93NUMPY\x01\x00";
  f.write(magic, 8);
  const std::uint16_t hlen = static_cast<std::uint16_t>(h.size());
  f.write(reinterpret_cast<const char*>(&hlen), 2);
  f.write(h.data(), static_cast<std::streamsize>(h.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = m(i, j).real(), im = m(i, j).imag();
      f.write(reinterpret_cast<const char*>(&re), 8);
      f.write(reinterpret_cast<const char*>(&im), 8);
    }
}

Matrix read_npy(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_npy: cannot open " + path);
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, "\x93NUMPY", 6) != 0)
    throw std::runtime_error("read_npy: bad magic");
  std::uint16_t hlen = 0;
  f.read(reinterpret_cast<char*>(&hlen), 2);
  std::string h(hlen, '\0');
  f.read(h.data(), hlen);
  if (h.find("'<c16'") == std::string::npos) throw std::runtime_error("read_npy: expected <c16");
  const auto sp = h.find("(");
  const auto ep = h.find(")");
  if (sp == std::string::npos || ep == std::string::npos)
    throw std::runtime_error("read_npy: malformed header");
  std::string shape = h.substr(sp + 1, ep - sp - 1);
  for (char& ch : shape)
    if (ch == ',') ch = ' ';
  std::istringstream ss(shape);
  Eigen::Index r = 0, c = 0;
  ss >> r >> c;
  if (r <= 0 || c <= 0) throw std::runtime_error("read_npy: bad shape");
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) {
      double re = 0, im = 0;
      f.read(reinterpret_cast<char*>(&re), 8);
      f.read(reinterpret_cast<char*>(&im), 8);
      m(i, j) = Complex(re, im);
    }
  if (!f) throw std::runtime_error("read_npy: truncated data");
  return m;
}

void write_csv(const std::string& path, const Matrix& m) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  f.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) f << ';';
      f << m(i, j).real() << ',' << m(i, j).imag();
    }
    f << '\n';
  }
}

Matrix read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_csv: cannot open " + path);
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<Complex> row;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ';')) {
      const auto comma = cell.find(',');
      if (comma == std::string::npos) throw std::runtime_error("read_csv: malformed cell");
      row.emplace_back(std::stod(cell.substr(0, comma)), std::stod(cell.substr(comma + 1)));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("read_csv: empty file");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw std::runtime_error("read_csv: ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

}  // namespace trizx
