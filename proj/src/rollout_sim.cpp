// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/rollout_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phasemem/errors.hpp"
#include "phasemem/parallel.hpp"
#include "phasemem/rng.hpp"

namespace phasemem {
namespace {

constexpr std::uint64_t kSignatureDomain = 1;
constexpr std::uint64_t kStreamDomain = 2;

SemanticVector gaussian_vector(const CounterRng& rng, std::uint64_t row, int dim) {
  SemanticVector v = SemanticVector::zeros(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    v[static_cast<std::size_t>(i)] = rng.normal(row * static_cast<std::uint64_t>(dim) + i);
  }
  return v;
}

SemanticVector normalized(SemanticVector v) {
  const double n = norm(v);
  if (n == 0.0) {
    v[0] = 1.0;
    return v;
  }
  return v *= 1.0 / n;
}

}  // namespace

void SimConfig::validate() const {
  engine.validate();
  if (!(drift_sigma > 0.0) || !std::isfinite(drift_sigma)) {
    throw ConfigError("must be positive", "drift_sigma");
  }
  if (!(signature_separation >= 0.0 && signature_separation <= 2.0)) {
    throw ConfigError("must lie in [0, 2]", "signature_separation");
  }
}

std::vector<SignatureSet> synth_prompt_signatures(std::uint64_t seed, int segments, int layers,
                                                  int heads, int dim, double separation) {
  if (segments < 1 || layers < 1 || heads < 1 || dim < 1) {
    throw ConfigError("segments, layers, heads and dim must be positive");
  }
  if (!(separation >= 0.0 && separation <= 2.0)) {
    throw ConfigError("must lie in [0, 2]", "signature_separation");
  }
  if (dim == 1 && separation != 0.0 && separation != 2.0) {
    throw ConfigError("dim 1 only supports separation 0 or 2", "signature_separation");
  }
  const double c = 1.0 - separation;
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  const int n_heads = layers * heads;

  std::vector<SignatureSet> out(static_cast<std::size_t>(segments),
                                SignatureSet(static_cast<std::size_t>(n_heads)));
  for (int h = 0; h < n_heads; ++h) {
    const CounterRng rng(derive_key(seed, kSignatureDomain, static_cast<std::uint64_t>(h)));
    SemanticVector p = normalized(gaussian_vector(rng, 0, dim));
    out[0][static_cast<std::size_t>(h)] = p;
    for (int k = 1; k < segments; ++k) {
      SemanticVector next = c * p;
      if (s > 0.0) {
        // Random direction orthogonal to p.
        SemanticVector q = gaussian_vector(rng, static_cast<std::uint64_t>(k), dim);
        q -= dot(q, p) * p;
        q = normalized(std::move(q));
        next += s * q;
      }
      // |c| == 1 keeps p (or -p) exactly unit; renormalizing could move it by an ulp.
      p = s > 0.0 ? normalized(std::move(next)) : std::move(next);
      out[static_cast<std::size_t>(k)][static_cast<std::size_t>(h)] = p;
    }
  }
  return out;
}

StreamState make_stream(std::uint64_t seed, int layer, int head, int dim) {
  StreamState st;
  st.key = derive_key(seed, kStreamDomain, static_cast<std::uint64_t>(layer),
                      static_cast<std::uint64_t>(head));
  st.frame = 0;
  st.value = normalized(gaussian_vector(CounterRng(st.key), 0, dim));
  return st;
}

StreamStep synth_block_values(StreamState state, int frames, double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("must be positive", "drift_sigma");
  const CounterRng rng(state.key);
  const int dim = static_cast<int>(state.value.dim());
  StreamStep step;
  step.frames.reserve(static_cast<std::size_t>(std::max(frames, 0)));
  for (int f = 0; f < frames; ++f) {
    ++state.frame;
    SemanticVector g = gaussian_vector(rng, static_cast<std::uint64_t>(state.frame), dim);
    state.value = normalized(state.value + sigma * g);
    step.frames.push_back(state.value);
  }
  step.state = std::move(state);
  return step;
}

SyntheticRollout::SyntheticRollout(const SimConfig& sim)
    : layers_(sim.engine.layers),
      heads_(sim.engine.heads),
      dim_(sim.engine.value_dim),
      sigma_(sim.drift_sigma) {
  sim.validate();
  signatures_ = synth_prompt_signatures(sim.seed, sim.schedule.segment_count(), layers_, heads_,
                                        dim_, sim.signature_separation);
  for (int l = 0; l < layers_; ++l) {
    for (int h = 0; h < heads_; ++h) streams_.push_back(make_stream(sim.seed, l, h, dim_));
  }
}

BlockValues SyntheticRollout::next_block(int frames) {
  BlockValues block(layers_, heads_, frames, dim_);
  for_each_index(streams_.size(), Execution::kParallel, [&](std::size_t i) {
    StreamStep step = synth_block_values(std::move(streams_[i]), frames, sigma_);
    const int layer = static_cast<int>(i) / heads_;
    const int head = static_cast<int>(i) % heads_;
    for (int f = 0; f < frames; ++f) {
      const auto src = step.frames[static_cast<std::size_t>(f)].values();
      std::copy(src.begin(), src.end(), block.frame(layer, head, f).begin());
    }
    streams_[i] = std::move(step.state);
  });
  return block;
}

RunResult run(const SimConfig& sim) {
  SyntheticRollout rollout(sim);
  MemoryEngine engine(sim.engine, sim.schedule, rollout.signatures());
  while (!engine.finished()) {
    engine.step_block(rollout.next_block(engine.next_block_frames()));
  }
  RunResult res;
  res.traces = engine.traces();
  res.report = budget_report(res.traces);
  return res;
}

ComparisonReport compare_fixed_vs_adaptive(const SimConfig& sim) {
  SyntheticRollout rollout(sim);
  EngineConfig fixed_cfg = sim.engine;
  fixed_cfg.window.w_min = fixed_cfg.window.w_max;
  MemoryEngine adaptive(sim.engine, sim.schedule, rollout.signatures());
  MemoryEngine fixed(fixed_cfg, sim.schedule, rollout.signatures());
  while (!adaptive.finished()) {
    const BlockValues block = rollout.next_block(adaptive.next_block_frames());
    adaptive.step_block(block);
    fixed.step_block(block);
  }

  ComparisonReport rep;
  rep.adaptive_traces = adaptive.traces();
  rep.fixed_traces = fixed.traces();
  const BudgetReport a = budget_report(rep.adaptive_traces);
  const BudgetReport f = budget_report(rep.fixed_traces);
  rep.adaptive_mean_budget = a.mean_budget;
  rep.fixed_mean_budget = f.mean_budget;
  rep.savings_ratio = 1.0 - a.mean_budget / f.mean_budget;
  rep.adaptive_segments = a.segments;
  rep.fixed_segments = f.segments;
  for (const auto& seg : a.segments) rep.boundary_window_max.push_back(seg.max_window);
  return rep;
}

std::vector<DurationReport> duration_sweep(const SimConfig& sim, double base_seconds,
                                           const std::vector<double>& durations) {
  if (!(base_seconds > 0.0)) throw ConfigError("base duration must be positive");
  std::vector<DurationReport> out;
  for (double seconds : durations) {
    if (!(seconds > 0.0)) throw ConfigError("durations must be positive");
    SimConfig scaled = sim;
    scaled.schedule = sim.schedule.scaled(seconds / base_seconds);
    DurationReport r;
    r.seconds = seconds;
    r.total_frames = scaled.schedule.total_frames();
    r.comparison = compare_fixed_vs_adaptive(scaled);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace phasemem
