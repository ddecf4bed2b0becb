// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/qp_oracle.hpp"

#include <cmath>
#include <string>

#include "phasemem/errors.hpp"

namespace phasemem {
namespace {

// Dense symmetric reflector H = I - 2 v v^T / (v^T v) with H m = -sign(m_k)|m| e_k,
// where k is the largest-magnitude coordinate of m. Returned row-major with the
// pivot index.
struct Reflector {
  std::size_t n = 0;
  std::size_t pivot = 0;
  std::vector<double> h;

  double at(std::size_t r, std::size_t c) const { return h[r * n + c]; }
};

Reflector build_reflector(const SemanticVector& m) {
  const std::size_t n = m.dim();
  if (n > kOracleMaxDim) {
    throw ConfigError("oracle supports dim <= " + std::to_string(kOracleMaxDim));
  }
  double mnorm = 0.0;
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mnorm += m[i] * m[i];
    if (std::abs(m[i]) > std::abs(m[pivot])) pivot = i;
  }
  mnorm = std::sqrt(mnorm);
  if (mnorm == 0.0) throw DegenerateTangentError("oracle: tangent has zero norm");

  std::vector<double> v(m.values().begin(), m.values().end());
  v[pivot] += std::copysign(mnorm, m[pivot]);
  double vv = 0.0;
  for (double x : v) vv += x * x;

  Reflector r{n, pivot, std::vector<double>(n * n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      r.h[i * n + j] = (i == j ? 1.0 : 0.0) - 2.0 * v[i] * v[j] / vv;
    }
  }
  return r;
}

}  // namespace

std::vector<SemanticVector> complement_basis(const SemanticVector& m) {
  const Reflector r = build_reflector(m);
  // Column `pivot` of H is parallel to m; the other columns span its complement.
  std::vector<SemanticVector> basis;
  basis.reserve(r.n - 1);
  for (std::size_t c = 0; c < r.n; ++c) {
    if (c == r.pivot) continue;
    SemanticVector col = SemanticVector::zeros(r.n);
    for (std::size_t i = 0; i < r.n; ++i) col[i] = r.at(i, c);
    basis.push_back(std::move(col));
  }
  return basis;
}

SemanticVector qp_projection_oracle(const SemanticVector& delta, const SemanticVector& m) {
  require_same_dim(delta, m);
  const auto basis = complement_basis(m);
  SemanticVector out = SemanticVector::zeros(delta.dim());
  for (const auto& q : basis) {
    double coef = 0.0;
    for (std::size_t i = 0; i < q.dim(); ++i) coef += q[i] * delta[i];
    for (std::size_t i = 0; i < q.dim(); ++i) out[i] += coef * q[i];
  }
  return out;
}

}  // namespace phasemem
