// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace phasemem {

/// Dense finite real vector in the per-head value space.
///
/// Construction from external data checks that every component is finite and
/// that the vector is non-empty; arithmetic on valid vectors does not re-check.
class SemanticVector {
 public:
  SemanticVector() = default;
  explicit SemanticVector(std::vector<double> components);
  SemanticVector(std::initializer_list<double> components);

  static SemanticVector zeros(std::size_t dim);
  static SemanticVector from_span(std::span<const double> components);

  std::size_t dim() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }

  SemanticVector& operator+=(const SemanticVector& rhs);
  SemanticVector& operator-=(const SemanticVector& rhs);
  SemanticVector& operator*=(double s);

  friend bool operator==(const SemanticVector&, const SemanticVector&) = default;

 private:
  struct Unchecked {};
  SemanticVector(std::vector<double> components, Unchecked)
      : data_(std::move(components)) {}

  std::vector<double> data_;
};

SemanticVector operator+(SemanticVector lhs, const SemanticVector& rhs);
SemanticVector operator-(SemanticVector lhs, const SemanticVector& rhs);
SemanticVector operator*(double s, SemanticVector v);
SemanticVector operator*(SemanticVector v, double s);

// Throws ConfigError naming `what` when dims differ.
void require_same_dim(const SemanticVector& a, const SemanticVector& b,
                      const char* what = "dimension mismatch");

double dot(const SemanticVector& a, const SemanticVector& b);
double squared_norm(const SemanticVector& v);
double norm(const SemanticVector& v);

// Cosine similarity; 0 when either vector has zero norm.
double cosine(const SemanticVector& a, const SemanticVector& b);

// (1 - t) * a + t * b
SemanticVector lerp(const SemanticVector& a, const SemanticVector& b, double t);

// Arithmetic mean of a non-empty set of equal-dim vectors.
SemanticVector mean_of(std::span<const SemanticVector> vs);

}  // namespace phasemem
