// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/verify_suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "phasemem/errors.hpp"
#include "phasemem/projection.hpp"
#include "phasemem/qp_oracle.hpp"
#include "phasemem/rng.hpp"

namespace phasemem {
namespace {

constexpr double kOracleRelTol = 1e-6;
constexpr double kAbsTol = 1e-9;

enum Check : std::size_t {
  kOracle,
  kOrthogonality,
  kMinDistortion,
  kSemanticPreserve,
  kResidual,
  kConvergence,
  kCheckCount
};

constexpr std::array<const char*, kCheckCount> kCheckNames = {
    "oracle_equivalence", "orthogonality",       "min_distortion",
    "semantic_preserve",  "stabilized_residual", "stabilized_converge"};

// Positive margin = violation; value is scaled so that 0 is the threshold.
struct CaseOutcome {
  std::array<double, kCheckCount> margin{};
};

struct Sampler {
  CounterRng rng;
  std::uint64_t next = 0;

  double normal() { return rng.normal(next++); }
  double uniform() { return rng.uniform(2 * next++); }

  SemanticVector vector(int dim) {
    SemanticVector v = SemanticVector::zeros(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = normal();
    return v;
  }
};

// Random combination of an orthonormal basis of the feasible hyperplane.
SemanticVector feasible_point(Sampler& s, const std::vector<SemanticVector>& basis, int dim) {
  SemanticVector x = SemanticVector::zeros(static_cast<std::size_t>(dim));
  for (const auto& q : basis) x += s.normal() * q;
  return x;
}

CaseOutcome run_case(std::uint64_t seed, int dim, const VerifyOptions& opts) {
  Sampler s{CounterRng(seed)};
  SemanticVector d = s.vector(dim);
  SemanticVector m = s.vector(dim);
  while (squared_norm(m) == 0.0) m = s.vector(dim);

  CaseOutcome out;
  const SemanticVector p = opts.projection(d, m);
  const SemanticVector oracle = qp_projection_oracle(d, m);
  const double dn = norm(d);
  const double mn = norm(m);

  out.margin[kOracle] = norm(p - oracle) - kOracleRelTol * norm(oracle);
  out.margin[kOrthogonality] = std::abs(dot(p, m)) - kAbsTol * dn * mn;

  // Feasible points come from the oracle's basis, not from the projection.
  const auto basis = complement_basis(m);
  const double best_dist = norm(p - d);
  const double best_response = dot(p, d);
  const double pn = norm(p);
  double worst_dist = -INFINITY;
  double worst_resp = -INFINITY;
  for (int k = 0; k < opts.feasible_samples; ++k) {
    SemanticVector x = feasible_point(s, basis, dim);
    // Every other sample sits close to the optimum to probe the tight side.
    if (k % 2 == 1) x = oracle + (1e-3 * s.uniform()) * x;
    worst_dist = std::max(worst_dist, (best_dist - kAbsTol) - norm(x - d));

    const double xn = norm(x);
    if (xn > 0.0 && pn > 0.0) {
      const double target = k == 0 ? pn : pn * s.uniform();
      x *= target / xn;
      worst_resp = std::max(worst_resp, dot(x, d) - (best_response + kAbsTol));
    }
  }
  out.margin[kMinDistortion] = worst_dist;
  out.margin[kSemanticPreserve] = worst_resp;

  const double mm = squared_norm(m);
  const double dm = dot(d, m);
  double worst_res = -INFINITY;
  for (double eps : opts.residual_eps) {
    const SemanticVector st = project_motion_neutral_stabilized(d, m, eps);
    const double expected = eps / (mm + eps) * dm;
    worst_res = std::max(worst_res, std::abs(dot(st, m) - expected) - kAbsTol);
  }
  out.margin[kResidual] = worst_res;

  double prev_gap = INFINITY;
  double worst_conv = -INFINITY;
  for (double eps : opts.convergence_eps) {
    const double gap = norm(project_motion_neutral_stabilized(d, m, eps) - p);
    worst_conv = std::max(worst_conv, gap - prev_gap);
    prev_gap = gap;
  }
  out.margin[kConvergence] = worst_conv;
  return out;
}

}  // namespace

void VerifyOptions::validate() const {
  if (cases < 1) throw ConfigError("must be at least 1", "cases");
  if (dims.empty()) throw ConfigError("need at least one dimension", "dims");
  for (int d : dims) {
    if (d < 2 || d > static_cast<int>(kOracleMaxDim)) {
      throw ConfigError("each dim must lie in [2, " + std::to_string(kOracleMaxDim) + "]", "dims");
    }
  }
  if (feasible_samples < 1) throw ConfigError("must be at least 1", "feasible_samples");
  for (double e : residual_eps) {
    if (!(e > 0.0)) throw ConfigError("must be positive", "residual_eps");
  }
  for (double e : convergence_eps) {
    if (!(e > 0.0)) throw ConfigError("must be positive", "convergence_eps");
  }
}

bool VerifyReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

std::uint64_t case_seed(std::uint64_t seed, int dim, int index) {
  return derive_key(seed, 0x5EED, static_cast<std::uint64_t>(dim), static_cast<std::uint64_t>(index));
}

SemanticVector faulty_projection_sign_flip(const SemanticVector& delta, const SemanticVector& m) {
  SemanticVector out = delta;
  const double coef = dot(delta, m) / squared_norm(m);
  for (std::size_t i = 0; i < out.dim(); ++i) out[i] += coef * m[i];
  return out;
}

VerifyReport run_verification(const VerifyOptions& opts_in) {
  VerifyOptions opts = opts_in;
  opts.validate();
  if (!opts.projection) opts.projection = project_motion_neutral_exact;

  VerifyReport report;
  for (int dim : opts.dims) {
    std::vector<CaseOutcome> outcomes(static_cast<std::size_t>(opts.cases));
    for_each_index(outcomes.size(), opts.execution, [&](std::size_t i) {
      outcomes[i] = run_case(case_seed(opts.seed, dim, static_cast<int>(i)), dim, opts);
    });
    for (std::size_t c = 0; c < kCheckCount; ++c) {
      CheckResult r;
      r.name = kCheckNames[c];
      r.dim = dim;
      r.cases = opts.cases;
      r.worst = -INFINITY;
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const double margin = outcomes[i].margin[c];
        r.worst = std::max(r.worst, margin);
        if (!(margin <= 0.0)) {
          if (r.failures == 0) r.first_failing_seed = case_seed(opts.seed, dim, static_cast<int>(i));
          ++r.failures;
        }
      }
      report.checks.push_back(r);
    }
  }
  return report;
}

}  // namespace phasemem
