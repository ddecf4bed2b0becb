// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/projection.hpp"

#include <algorithm>

#include "phasemem/errors.hpp"

namespace phasemem {

SemanticVector prompt_delta(const SemanticVector& prev, const SemanticVector& curr) {
  require_same_dim(prev, curr, "prompt signature dimension mismatch");
  return curr - prev;
}

double switch_strength(const SemanticVector& prev, const SemanticVector& curr) {
  require_same_dim(prev, curr, "prompt signature dimension mismatch");
  // A zero signature carries no semantic direction: no switch signal.
  if (squared_norm(prev) == 0.0 || squared_norm(curr) == 0.0) return 0.0;
  return std::clamp(1.0 - cosine(prev, curr), 0.0, 2.0);
}

SemanticVector motion_tangent(const SemanticVector& v_prev, const SemanticVector& v_curr) {
  require_same_dim(v_prev, v_curr, "cache summary dimension mismatch");
  return v_curr - v_prev;
}

SemanticVector project_motion_neutral_exact(const SemanticVector& delta,
                                            const SemanticVector& m) {
  require_same_dim(delta, m);
  const double mm = squared_norm(m);
  if (mm == 0.0) throw DegenerateTangentError("motion tangent has zero norm");
  SemanticVector out = delta;
  const double coef = dot(delta, m) / mm;
  for (std::size_t i = 0; i < out.dim(); ++i) out[i] -= coef * m[i];
  return out;
}

SemanticVector project_motion_neutral_stabilized(const SemanticVector& delta,
                                                 const SemanticVector& m, double eps) {
  if (!(eps > 0.0)) throw ConfigError("stabilizer must be positive", "eps_stabilized");
  require_same_dim(delta, m);
  SemanticVector out = delta;
  const double coef = dot(delta, m) / (squared_norm(m) + eps);
  for (std::size_t i = 0; i < out.dim(); ++i) out[i] -= coef * m[i];
  return out;
}

double stabilizer_for(const SemanticVector& m, double relative_eps) {
  if (!(relative_eps > 0.0)) throw ConfigError("stabilizer must be positive", "eps_stabilized");
  const double mean_sq = squared_norm(m) / static_cast<double>(m.dim());
  return mean_sq > 0.0 ? relative_eps * mean_sq : relative_eps;
}

TransitionSignal make_transition(const SemanticVector& p_prev, const SemanticVector& p_curr,
                                 const SemanticVector& tangent, double relative_eps) {
  TransitionSignal sig;
  sig.delta = prompt_delta(p_prev, p_curr);
  sig.strength = switch_strength(p_prev, p_curr);
  sig.delta_perp =
      project_motion_neutral_stabilized(sig.delta, tangent, stabilizer_for(tangent, relative_eps));
  sig.tangent = tangent;
  return sig;
}

}  // namespace phasemem
