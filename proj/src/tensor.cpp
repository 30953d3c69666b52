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

#include "trizx/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace trizx {

namespace {

// Dense tensor over labelled trit legs; labels[0] is the most significant
// index in the row-major data layout.
struct Tensor {
  std::vector<int> labels;
  std::vector<Complex> data;

  std::size_t rank() const { return labels.size(); }
  std::size_t size() const { return data.size(); }
};

Tensor make_scalar(Complex v) { return Tensor{{}, {v}}; }

Tensor spider_tensor(GenKind kind, const Phase& p, int degree) {
  Tensor t;
  t.labels.resize(static_cast<std::size_t>(degree));
  t.data.assign(static_cast<std::size_t>(pow3(degree)), Complex(0, 0));
  const Complex wa = omega_pow(p.a);
  const Complex wb = omega_pow(p.b);
  if (kind == GenKind::ZSpider) {
    if (degree == 0) {
      t.data[0] = Complex(1, 0) + wa + wb;
      return t;
    }
    // |0..0> + w^a |1..1> + w^b |2..2>
    std::size_t idx0 = 0, idx1 = 0, idx2 = 0;
    for (int i = 0; i < degree; ++i) {
      idx1 = idx1 * 3 + 1;
      idx2 = idx2 * 3 + 2;
    }
    t.data[idx0] = Complex(1, 0);
    t.data[idx1] = wa;
    t.data[idx2] = wb;
    return t;
  }
  // X spider: |+>^d + w^a |wbar>^d + w^b |w>^d, with entries
  // 3^{-d/2} (1 + w^a w^{-s} + w^b w^{s}), s = digit sum.
  const double norm = std::pow(3.0, -0.5 * degree);
  const Complex w1 = omega_pow(Rational(1));
  const Complex w2 = omega_pow(Rational(2));
  for (std::size_t idx = 0; idx < t.data.size(); ++idx) {
    std::size_t rest = idx;
    int s = 0;
    for (int i = 0; i < degree; ++i) {
      s += static_cast<int>(rest % 3);
      rest /= 3;
    }
    s %= 3;
    const Complex ws = (s == 0) ? Complex(1, 0) : (s == 1 ? w1 : w2);
    const Complex wsbar = (s == 0) ? Complex(1, 0) : (s == 1 ? w2 : w1);
    t.data[idx] = norm * (Complex(1, 0) + wa * wsbar + wb * ws);
  }
  return t;
}

Tensor hbox_tensor(bool dagger) {
  // H_{jk} = w^{jk} / sqrt(3); the dagger conjugates. Symmetric, so leg order
  // is irrelevant.
  Tensor t;
  t.labels.resize(2);
  t.data.assign(9, Complex(0, 0));
  const double norm = 1.0 / std::sqrt(3.0);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      Complex v = norm * omega_pow(Rational(j * k));
      if (dagger) v = std::conj(v);
      t.data[static_cast<std::size_t>(j * 3 + k)] = v;
    }
  return t;
}

Tensor delta_tensor(int l0, int l1) {
  Tensor t;
  t.labels = {l0, l1};
  t.data.assign(9, Complex(0, 0));
  for (int k = 0; k < 3; ++k) t.data[static_cast<std::size_t>(k * 3 + k)] = Complex(1, 0);
  return t;
}

// Contracts all shared labels between a and b (outer product when none).
Tensor contract(const Tensor& a, const Tensor& b) {
  std::vector<int> shared;
  for (int la : a.labels)
    if (std::find(b.labels.begin(), b.labels.end(), la) != b.labels.end()) shared.push_back(la);

  std::vector<int> afree, bfree;
  for (int la : a.labels)
    if (std::find(shared.begin(), shared.end(), la) == shared.end()) afree.push_back(la);
  for (int lb : b.labels)
    if (std::find(shared.begin(), shared.end(), lb) == shared.end()) bfree.push_back(lb);

  const auto stride_map = [](const Tensor& t) {
    std::map<int, std::size_t> s;
    std::size_t st = 1;
    for (auto it = t.labels.rbegin(); it != t.labels.rend(); ++it) {
      s[*it] = st;
      st *= 3;
    }
    return s;
  };
  const auto astr = stride_map(a);
  const auto bstr = stride_map(b);

  Tensor out;
  out.labels = afree;
  out.labels.insert(out.labels.end(), bfree.begin(), bfree.end());
  out.data.assign(static_cast<std::size_t>(pow3(static_cast<int>(out.labels.size()))),
                  Complex(0, 0));

  const std::size_t na = afree.size(), nb = bfree.size(), ns = shared.size();
  std::vector<int> dig(na + nb + ns, 0);
  const std::size_t total = out.data.size() * static_cast<std::size_t>(pow3(static_cast<int>(ns)));
  for (std::size_t step = 0; step < total; ++step) {
    std::size_t ai = 0, bi = 0, oi = 0;
    for (std::size_t i = 0; i < na; ++i) {
      ai += astr.at(afree[i]) * static_cast<std::size_t>(dig[i]);
      oi = oi * 3 + static_cast<std::size_t>(dig[i]);
    }
    for (std::size_t i = 0; i < nb; ++i) {
      bi += bstr.at(bfree[i]) * static_cast<std::size_t>(dig[na + i]);
      oi = oi * 3 + static_cast<std::size_t>(dig[na + i]);
    }
    for (std::size_t i = 0; i < ns; ++i) {
      ai += astr.at(shared[i]) * static_cast<std::size_t>(dig[na + nb + i]);
      bi += bstr.at(shared[i]) * static_cast<std::size_t>(dig[na + nb + i]);
    }
    out.data[oi] += a.data[ai] * b.data[bi];
    // Increment mixed-radix counter.
    for (std::size_t i = dig.size(); i-- > 0;) {
      if (++dig[i] < 3) break;
      dig[i] = 0;
    }
  }
  return out;
}

std::size_t shared_count(const Tensor& a, const Tensor& b) {
  std::size_t n = 0;
  for (int la : a.labels)
    if (std::find(b.labels.begin(), b.labels.end(), la) != b.labels.end()) ++n;
  return n;
}

}  // namespace

Matrix generator_tensor(const Generator& g, int degree) {
  if (degree < 0) throw std::invalid_argument("generator_tensor: negative degree");
  Tensor t;
  switch (g.kind) {
    case GenKind::ZSpider:
    case GenKind::XSpider: t = spider_tensor(g.kind, g.phase, degree); break;
    case GenKind::HBox:
    case GenKind::HBoxDagger:
      if (degree != 2) throw std::invalid_argument("generator_tensor: H-box degree must be 2");
      t = hbox_tensor(g.kind == GenKind::HBoxDagger);
      break;
    case GenKind::Boundary:
      throw std::invalid_argument("generator_tensor: boundary has no tensor");
  }
  Matrix out(static_cast<Eigen::Index>(t.data.size()), 1);
  for (std::size_t i = 0; i < t.data.size(); ++i) out(static_cast<Eigen::Index>(i), 0) = t.data[i];
  return out;
}

Matrix eval(const Diagram& d) {
  d.validate();

  // Per-(edge, side) labels; a wire delta tensor joins the two sides. A
  // boundary endpoint leaves its side label open.
  std::vector<Tensor> tensors;
  std::map<VertexId, std::vector<int>> legs;  // interior vertex -> leg labels
  std::map<VertexId, int> open_label;         // boundary vertex -> its open label

  int next_label = 0;
  for (const auto& e : d.edges()) {
    const int l0 = next_label++;
    const int l1 = next_label++;
    tensors.push_back(delta_tensor(l0, l1));
    const auto attach = [&](VertexId v, int lab) {
      if (d.generator(v).kind == GenKind::Boundary)
        open_label[v] = lab;
      else
        legs[v].push_back(lab);
    };
    attach(e.first, l0);
    attach(e.second, l1);
  }

  for (const auto& [v, g] : d.vertices()) {
    if (g.kind == GenKind::Boundary) continue;
    const auto it = legs.find(v);
    const int deg = it == legs.end() ? 0 : static_cast<int>(it->second.size());
    Tensor t;
    if (g.is_spider())
      t = spider_tensor(g.kind, g.phase, deg);
    else {
      if (deg != 2) throw std::invalid_argument("eval: H-box degree must be 2");
      t = hbox_tensor(g.kind == GenKind::HBoxDagger);
    }
    if (it != legs.end()) t.labels = it->second;
    tensors.push_back(std::move(t));
  }

  if (tensors.empty()) tensors.push_back(make_scalar(Complex(1, 0)));

  // Greedy pairwise contraction, smallest intermediate first.
  while (tensors.size() > 1) {
    std::size_t bi = 0, bj = 1;
    std::size_t best_size = SIZE_MAX;
    bool found = false;
    for (std::size_t i = 0; i < tensors.size(); ++i)
      for (std::size_t j = i + 1; j < tensors.size(); ++j) {
        const std::size_t s = shared_count(tensors[i], tensors[j]);
        if (s == 0) continue;
        const std::size_t result_rank = tensors[i].rank() + tensors[j].rank() - 2 * s;
        const std::size_t result_size = static_cast<std::size_t>(pow3(static_cast<int>(result_rank)));
        if (!found || result_size < best_size) {
          found = true;
          best_size = result_size;
          bi = i;
          bj = j;
        }
      }
    if (!found) {
      bi = 0;
      bj = 1;
    }
    Tensor merged = contract(tensors[bi], tensors[bj]);
    tensors.erase(tensors.begin() + static_cast<std::ptrdiff_t>(bj));
    tensors.erase(tensors.begin() + static_cast<std::ptrdiff_t>(bi));
    tensors.push_back(std::move(merged));
  }

  Tensor& final_t = tensors.front();

  // Arrange open legs as [outputs..., inputs...], big-endian.
  std::vector<int> want;
  for (VertexId v : d.outputs()) want.push_back(open_label.at(v));
  for (VertexId v : d.inputs()) want.push_back(open_label.at(v));
  if (want.size() != final_t.rank())
    throw std::logic_error("eval: open leg count mismatch");

  const std::size_t m = d.outputs().size(), n = d.inputs().size();
  Matrix out(pow3(static_cast<int>(m)), pow3(static_cast<int>(n)));

  std::map<int, std::size_t> strides;
  std::size_t st = 1;
  for (auto it = final_t.labels.rbegin(); it != final_t.labels.rend(); ++it) {
    strides[*it] = st;
    st *= 3;
  }
  const Complex sc = d.scalar().to_complex();
  std::vector<int> dig(want.size(), 0);
  const std::size_t total = final_t.data.size();
  for (std::size_t step = 0; step < total; ++step) {
    std::size_t src = 0, row = 0, col = 0;
    for (std::size_t i = 0; i < want.size(); ++i) {
      src += strides.at(want[i]) * static_cast<std::size_t>(dig[i]);
      if (i < m)
        row = row * 3 + static_cast<std::size_t>(dig[i]);
      else
        col = col * 3 + static_cast<std::size_t>(dig[i]);
    }
    out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = sc * final_t.data[src];
    for (std::size_t i = dig.size(); i-- > 0;) {
      if (++dig[i] < 3) break;
      dig[i] = 0;
    }
    if (dig.empty()) break;
  }
  if (want.empty()) out(0, 0) = sc * final_t.data[0];
  return out;
}

}  // namespace trizx
