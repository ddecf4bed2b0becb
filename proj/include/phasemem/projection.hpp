// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "phasemem/semantic_vector.hpp"

namespace phasemem {

// Orthogonality tolerance for the exact projection, scaled by |d|·|m|.
inline constexpr double kOrthTolerance = 1e-9;

/// Quantities derived at a prompt switch for one head.
struct TransitionSignal {
  SemanticVector delta;       // p_curr - p_prev
  SemanticVector delta_perp;  // delta with the tangent component removed
  double strength = 0.0;      // 1 - cos(p_prev, p_curr), in [0, 2]
  SemanticVector tangent;
};

SemanticVector prompt_delta(const SemanticVector& prev, const SemanticVector& curr);

/// 1 - cos(prev, curr), clamped to [0, 2]. Zero when either signature has
/// zero norm.
double switch_strength(const SemanticVector& prev, const SemanticVector& curr);

/// Finite-difference tangent v_curr - v_prev.
SemanticVector motion_tangent(const SemanticVector& v_prev, const SemanticVector& v_curr);

/// Removes the component of `delta` along `m`. Throws DegenerateTangentError
/// when |m| == 0.
SemanticVector project_motion_neutral_exact(const SemanticVector& delta,
                                            const SemanticVector& m);

/// delta - <delta, m> / (|m|^2 + eps) * m. Leaves a residual
/// <result, m> = eps / (|m|^2 + eps) * <delta, m>. Requires eps > 0.
SemanticVector project_motion_neutral_stabilized(const SemanticVector& delta,
                                                 const SemanticVector& m, double eps);

/// Absolute eps for the stabilized projection given a relative eps: scaled by
/// the mean squared component of `m`, or `relative_eps` itself when m == 0.
double stabilizer_for(const SemanticVector& m, double relative_eps);

/// Full per-head transition: delta, strength, tangent and the stabilized
/// projection using `stabilizer_for(tangent, relative_eps)`.
TransitionSignal make_transition(const SemanticVector& p_prev, const SemanticVector& p_curr,
                                 const SemanticVector& tangent, double relative_eps);

}  // namespace phasemem
