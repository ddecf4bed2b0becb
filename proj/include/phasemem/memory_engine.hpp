// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "phasemem/anchor_store.hpp"
#include "phasemem/frame_ring.hpp"
#include "phasemem/injection_cache.hpp"
#include "phasemem/parallel.hpp"
#include "phasemem/projection.hpp"
#include "phasemem/semantic_vector.hpp"
#include "phasemem/window_scheduler.hpp"

namespace phasemem {

struct EngineConfig {
  int layers = 2;
  int heads = 4;
  int value_dim = 16;
  int frames_per_block = 3;
  int sink_frames = 3;
  WindowConfig window;
  AnchorConfig anchors;
  double bridge_lambda = 0.85;
  InjectionSchedule bridge_schedule = InjectionSchedule::kDecayed;
  double eps_stabilized = 1e-6;  // relative to the tangent's mean squared component
  int tokens_per_frame = 1560;
  double bridge_prune_tol = 1e-3;

  // Off: boundaries still drive windows and anchors, but no bridge is written.
  bool injection_enabled = true;
  Execution execution = Execution::kParallel;

  int head_count() const noexcept { return layers * heads; }
  void validate() const;
};

/// Prompt signatures for one segment, one vector per (layer, head), indexed
/// `layer * heads + head`.
using SignatureSet = std::vector<SemanticVector>;

/// Block of per-frame head vectors, row-major (layers, heads, frames, dim).
/// Always owns a copy of its data.
class BlockValues {
 public:
  BlockValues(int layers, int heads, int frames, int dim);
  // Copies `data`; throws ConfigError when its size does not match the shape.
  BlockValues(int layers, int heads, int frames, int dim, std::span<const double> data);

  int layers() const noexcept { return layers_; }
  int heads() const noexcept { return heads_; }
  int frames() const noexcept { return frames_; }
  int dim() const noexcept { return dim_; }
  std::array<int, 4> shape() const noexcept { return {layers_, heads_, frames_, dim_}; }

  std::span<const double> frame(int layer, int head, int f) const;
  std::span<double> frame(int layer, int head, int f);
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t offset(int layer, int head, int f) const;

  int layers_, heads_, frames_, dim_;
  std::vector<double> data_;
};

enum class EntryKind { kSink, kAnchor, kBridgeSink, kBridgeRecent, kLocal };

struct ReadEntry {
  EntryKind kind = EntryKind::kLocal;
  std::int64_t index = -1;  // frame index (sink/local), segment index (anchor), -1 (bridge)
  SemanticVector value;
};

struct HeadReadSet {
  std::vector<ReadEntry> entries;
  int sink_frames = 0;
  int local_frames = 0;
  int anchor_entries = 0;
  int bridge_entries = 0;
  std::int64_t budget = 0;
};

/// Everything one block attends to. Budgets count tokens: each frame entry
/// is `tokens_per_frame` tokens, each anchor or bridge entry is one token.
struct ReadSet {
  std::vector<HeadReadSet> heads;
  std::int64_t budget_per_head = 0;  // identical across heads
  std::int64_t total_budget = 0;
};

struct BlockTrace {
  std::int64_t block_index = 0;
  std::int64_t first_frame = 0;
  int segment_index = 0;
  std::int64_t age = 0;
  std::optional<std::int64_t> distance;
  int window = 0;
  double phase_weight = 0.0;
  std::int64_t read_budget = 0;  // per head
  double bridge_norm = 0.0;      // over all heads, as read this block
  bool switch_flag = false;
  int anchors_count = 0;         // per head

  friend bool operator==(const BlockTrace&, const BlockTrace&) = default;
};

/// Per-head record of the most recent injection.
struct HeadInjection {
  TransitionSignal signal;
  HeadSummaries summaries;
  HeadGates gates;
};

/// Structured attention memory for a multi-prompt rollout.
///
/// Each (layer, head) keeps a sink of the first `sink_frames` frames, a ring of
/// the latest `w_max` frames, an optional bridge pair written at the last
/// prompt switch, and a bounded store of segment anchors. `step_block` must be
/// called sequentially; per-head work inside a step runs in parallel unless
/// `execution` is serial.
class MemoryEngine {
 public:
  MemoryEngine(EngineConfig cfg, PromptSchedule schedule, std::vector<SignatureSet> signatures);

  struct StepResult {
    ReadSet read_set;
    BlockTrace trace;
  };

  StepResult step_block(const BlockValues& block);

  const EngineConfig& config() const noexcept { return cfg_; }
  const PromptSchedule& schedule() const noexcept { return schedule_; }
  const std::vector<BlockTrace>& traces() const noexcept { return traces_; }

  std::int64_t next_frame() const noexcept { return next_frame_; }
  std::int64_t block_count() const noexcept;
  bool finished() const noexcept { return next_frame_ >= schedule_.total_frames(); }
  // Frames in the block `step_block` expects next (shorter for a ragged tail).
  int next_block_frames() const;
  int active_segment() const noexcept { return segment_; }

  // Physically stored frames (sink + ring) for one head.
  std::size_t stored_frames(int layer, int head) const;
  bool bridge_live() const noexcept { return bridge_live_; }
  const std::optional<BridgeMemory>& bridge(int layer, int head) const;
  const AnchorStore& anchors(int layer, int head) const;
  const std::vector<HeadInjection>& last_injection() const noexcept { return last_injection_; }

 private:
  struct HeadState {
    std::vector<SemanticVector> sink;
    FrameRing<SemanticVector> local;
    std::optional<SemanticVector> last_block_mean;
    std::optional<SemanticVector> prev_block_mean;
    std::optional<BridgeMemory> bridge;
    AnchorStore anchors;
  };

  std::size_t head_slot(int layer, int head) const;
  void finalize_segment(HeadState& hs, std::size_t h, int segment) const;
  void inject(HeadState& hs, std::size_t h, int segment, HeadInjection& record) const;
  HeadReadSet assemble(const HeadState& hs, int window) const;
  void append(HeadState& hs, const BlockValues& block, std::size_t h) const;

  EngineConfig cfg_;
  PromptSchedule schedule_;
  std::vector<SignatureSet> signatures_;
  std::vector<HeadState> heads_;
  std::vector<HeadInjection> last_injection_;
  std::vector<BlockTrace> traces_;
  std::int64_t next_frame_ = 0;
  std::int64_t block_index_ = 0;
  int segment_ = 0;
  bool bridge_live_ = false;
  double bridge_initial_norm_ = 0.0;
};

struct SegmentBudget {
  int segment_index = 0;
  std::int64_t blocks = 0;
  double mean_budget = 0.0;
  double mean_window = 0.0;
  int max_window = 0;
};

struct BudgetReport {
  std::int64_t blocks = 0;
  double mean_budget = 0.0;
  std::int64_t min_budget = 0;
  std::int64_t max_budget = 0;
  double mean_window = 0.0;
  std::vector<SegmentBudget> segments;
};

// Throws ConfigError on an empty trace sequence.
BudgetReport budget_report(std::span<const BlockTrace> traces);

}  // namespace phasemem
