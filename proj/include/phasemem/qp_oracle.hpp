// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "phasemem/semantic_vector.hpp"

namespace phasemem {

inline constexpr std::size_t kOracleMaxDim = 64;

/// Independent solver for min |x - delta|^2 s.t. <x, m> = 0.
///
/// Builds a Householder reflector H that maps m onto a coordinate axis, takes
/// the remaining columns of H as an orthonormal basis of the complement of m,
/// and expresses delta in that basis. Does not use the closed-form projection.
/// Test-scale only: dim <= kOracleMaxDim.
SemanticVector qp_projection_oracle(const SemanticVector& delta, const SemanticVector& m);

/// Orthonormal basis (dim - 1 vectors) of the hyperplane orthogonal to m,
/// from the same reflector. Exposed so the verification suite can sample
/// feasible points without going through the closed form.
std::vector<SemanticVector> complement_basis(const SemanticVector& m);

}  // namespace phasemem
