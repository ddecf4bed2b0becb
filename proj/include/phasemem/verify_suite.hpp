// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "phasemem/parallel.hpp"
#include "phasemem/semantic_vector.hpp"

namespace phasemem {

using ProjectionFn = std::function<SemanticVector(const SemanticVector&, const SemanticVector&)>;

struct VerifyOptions {
  int cases = 1000;
  std::uint64_t seed = 7;
  std::vector<int> dims{2, 3, 8, 32};
  int feasible_samples = 100;
  std::vector<double> residual_eps{1.0, 1e-3, 1e-6};
  std::vector<double> convergence_eps{1.0, 1e-3, 1e-6, 1e-9};
  Execution execution = Execution::kParallel;
  // Projection under test; defaults to project_motion_neutral_exact.
  ProjectionFn projection;

  void validate() const;
};

struct CheckResult {
  std::string name;
  int dim = 0;
  int cases = 0;
  int failures = 0;
  std::uint64_t first_failing_seed = 0;  // valid when failures > 0
  double worst = 0.0;                    // largest normalized violation margin seen
  bool passed() const noexcept { return failures == 0; }
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const noexcept;
};

/// Seed of case `index` in dimension `dim`; rerunning that single case with
/// the same seed reproduces it.
std::uint64_t case_seed(std::uint64_t seed, int dim, int index);

/// Property checks on the motion-neutral projection, per dim:
///   oracle_equivalence   |P(d,m) - oracle(d,m)| <= 1e-6 |oracle(d,m)|
///   orthogonality        |<P(d,m), m>| <= 1e-9 |d| |m|
///   min_distortion       |x - d| >= |P(d,m) - d| - 1e-9 for feasible x
///   semantic_preserve    <x, d> <= <P(d,m), d> + 1e-9 for feasible |x| <= |P(d,m)|
///   stabilized_residual  |<S_eps(d,m), m> - eps/(|m|^2+eps) <d,m>| <= 1e-9
///   stabilized_converge  |S_eps(d,m) - P(d,m)| non-increasing as eps shrinks
/// Cases run in parallel; results are independent of thread count.
VerifyReport run_verification(const VerifyOptions& opts);

// The projection with the correction's sign flipped. Negative control only.
SemanticVector faulty_projection_sign_flip(const SemanticVector& delta, const SemanticVector& m);

}  // namespace phasemem
