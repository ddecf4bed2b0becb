// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/semantic_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phasemem/errors.hpp"

namespace phasemem {

SemanticVector::SemanticVector(std::vector<double> components) : data_(std::move(components)) {
  if (data_.empty()) throw ConfigError("semantic vector must have dim >= 1");
  for (double x : data_) {
    if (!std::isfinite(x)) throw ConfigError("semantic vector component is not finite");
  }
}

SemanticVector::SemanticVector(std::initializer_list<double> components)
    : SemanticVector(std::vector<double>(components)) {}

SemanticVector SemanticVector::zeros(std::size_t dim) {
  if (dim == 0) throw ConfigError("semantic vector must have dim >= 1");
  return SemanticVector(std::vector<double>(dim, 0.0), Unchecked{});
}

SemanticVector SemanticVector::from_span(std::span<const double> components) {
  return SemanticVector(std::vector<double>(components.begin(), components.end()));
}

SemanticVector& SemanticVector::operator+=(const SemanticVector& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

SemanticVector& SemanticVector::operator-=(const SemanticVector& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

SemanticVector& SemanticVector::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

SemanticVector operator+(SemanticVector lhs, const SemanticVector& rhs) { return lhs += rhs; }
SemanticVector operator-(SemanticVector lhs, const SemanticVector& rhs) { return lhs -= rhs; }
SemanticVector operator*(double s, SemanticVector v) { return v *= s; }
SemanticVector operator*(SemanticVector v, double s) { return v *= s; }

void require_same_dim(const SemanticVector& a, const SemanticVector& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw ConfigError(std::string(what) + " (" + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()) + ")");
  }
}

double dot(const SemanticVector& a, const SemanticVector& b) {
  require_same_dim(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
  return acc;
}

double squared_norm(const SemanticVector& v) {
  double acc = 0.0;
  for (double x : v.values()) acc += x * x;
  return acc;
}

double norm(const SemanticVector& v) { return std::sqrt(squared_norm(v)); }

double cosine(const SemanticVector& a, const SemanticVector& b) {
  const double aa = squared_norm(a);
  const double bb = squared_norm(b);
  if (aa == 0.0 || bb == 0.0) return 0.0;
  // sqrt(aa * bb) reproduces aa exactly when a == b, so cos(a, a) == 1.
  return std::clamp(dot(a, b) / std::sqrt(aa * bb), -1.0, 1.0);
}

SemanticVector lerp(const SemanticVector& a, const SemanticVector& b, double t) {
  require_same_dim(a, b);
  SemanticVector out = SemanticVector::zeros(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = (1.0 - t) * a[i] + t * b[i];
  return out;
}

SemanticVector mean_of(std::span<const SemanticVector> vs) {
  if (vs.empty()) throw ConfigError("mean of an empty vector set");
  SemanticVector acc = SemanticVector::zeros(vs.front().dim());
  for (const auto& v : vs) acc += v;
  acc *= 1.0 / static_cast<double>(vs.size());
  return acc;
}

}  // namespace phasemem
