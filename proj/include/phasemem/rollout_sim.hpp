// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "phasemem/memory_engine.hpp"
#include "phasemem/semantic_vector.hpp"
#include "phasemem/window_scheduler.hpp"

namespace phasemem {

struct SimConfig {
  std::uint64_t seed = 42;
  EngineConfig engine;
  PromptSchedule schedule{{40, 80, 120, 160, 200}, 240};
  double drift_sigma = 0.05;
  double signature_separation = 0.5;

  void validate() const;
};

/// Unit-norm signatures, one set per segment. Consecutive signatures of a head
/// sit at angle acos(1 - separation), so their switch strength equals
/// `separation` up to rounding. dim 1 only supports separation 0 or 2.
std::vector<SignatureSet> synth_prompt_signatures(std::uint64_t seed, int segments, int layers,
                                                  int heads, int dim, double separation);

/// Normalized random walk for one (layer, head).
struct StreamState {
  std::uint64_t key = 0;
  std::int64_t frame = 0;  // frames emitted so far
  SemanticVector value;    // last emitted (or initial) unit vector
};

StreamState make_stream(std::uint64_t seed, int layer, int head, int dim);

struct StreamStep {
  std::vector<SemanticVector> frames;
  StreamState state;
};

// v_t = normalize(v_{t-1} + sigma * g_t). Throws ConfigError unless sigma > 0.
StreamStep synth_block_values(StreamState state, int frames, double sigma);

/// All head streams of a simulation, producing engine-shaped blocks.
class SyntheticRollout {
 public:
  explicit SyntheticRollout(const SimConfig& sim);

  const std::vector<SignatureSet>& signatures() const noexcept { return signatures_; }
  // Next block of `frames` frames for every head.
  BlockValues next_block(int frames);

 private:
  int layers_, heads_, dim_;
  double sigma_;
  std::vector<SignatureSet> signatures_;
  std::vector<StreamState> streams_;
};

struct RunResult {
  std::vector<BlockTrace> traces;
  BudgetReport report;
};

RunResult run(const SimConfig& sim);

struct ComparisonReport {
  double adaptive_mean_budget = 0.0;
  double fixed_mean_budget = 0.0;
  double savings_ratio = 0.0;
  std::vector<SegmentBudget> adaptive_segments;
  std::vector<SegmentBudget> fixed_segments;
  // Largest adaptive window seen in each segment.
  std::vector<int> boundary_window_max;
  std::vector<BlockTrace> adaptive_traces;
  std::vector<BlockTrace> fixed_traces;
};

/// Runs the configured engine and a fixed-window twin (w_min := w_max) on the
/// same value stream.
ComparisonReport compare_fixed_vs_adaptive(const SimConfig& sim);

struct DurationReport {
  double seconds = 0.0;
  std::int64_t total_frames = 0;
  ComparisonReport comparison;
};

/// Repeats the comparison with the schedule scaled from `base_seconds` to each
/// target duration (boundaries and length scaled proportionally).
std::vector<DurationReport> duration_sweep(const SimConfig& sim, double base_seconds,
                                           const std::vector<double>& durations);

}  // namespace phasemem
