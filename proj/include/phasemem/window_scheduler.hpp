// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace phasemem {

/// Prompt switch boundaries over a rollout of `total_frames` frames. Each
/// boundary is the first frame of a new segment; segment 0 starts at frame 0.
class PromptSchedule {
 public:
  PromptSchedule() = default;
  // Throws ConfigError unless boundaries are strictly ascending in (0, total).
  PromptSchedule(std::vector<std::int64_t> boundaries, std::int64_t total_frames);

  const std::vector<std::int64_t>& boundaries() const noexcept { return boundaries_; }
  std::int64_t total_frames() const noexcept { return total_frames_; }
  int segment_count() const noexcept { return static_cast<int>(boundaries_.size()) + 1; }

  // Start frame of segment `m` (0 for the first).
  std::int64_t segment_start(int m) const;

  /// Boundaries and length scaled by `factor`, rounded half-up. Used for
  /// duration sweeps that keep the segment layout.
  PromptSchedule scaled(double factor) const;

 private:
  std::vector<std::int64_t> boundaries_;
  std::int64_t total_frames_ = 1;
};

enum class PhaseUnit { kFrames, kBlocks };

std::string_view to_string(PhaseUnit u);
PhaseUnit parse_phase_unit(std::string_view name);

struct WindowConfig {
  int w_min = 7;
  int w_max = 12;
  double tau_post = 18.0;
  double tau_pre = 9.0;
  PhaseUnit phase_unit = PhaseUnit::kFrames;

  void validate() const;
};

struct SegmentPosition {
  int segment_index = 0;
  std::int64_t segment_start = 0;
  std::optional<std::int64_t> next_boundary;  // nullopt in the last segment
};

struct PhaseWeights {
  double w_post = 1.0;
  double w_pre = 0.0;
  double w = 1.0;
};

/// Phase quantities for one position. `distance` is nullopt when no switch
/// follows (infinite distance). `age` and `distance` are in the configured
/// phase unit.
struct PhaseState {
  std::int64_t t = 0;
  int segment_index = 0;
  std::int64_t age = 0;
  std::optional<std::int64_t> distance;
  double w_post = 1.0;
  double w_pre = 0.0;
  double w = 1.0;
  int window = 0;
};

// Throws RangeError unless 0 <= t < total_frames.
SegmentPosition segment_of(const PromptSchedule& schedule, std::int64_t t);

PhaseWeights phase_weight(std::int64_t age, std::optional<std::int64_t> distance,
                          const WindowConfig& cfg);

// round_half_up(w_min + (w_max - w_min) * w), clamped to [w_min, w_max].
int window_size(double w, const WindowConfig& cfg);

/// Phase state at frame `t` with age/distance measured in frames.
PhaseState phase_state(const PromptSchedule& schedule, std::int64_t t, const WindowConfig& cfg);

/// Phase state for frame `t` honouring `cfg.phase_unit`. In block units every
/// frame maps to its block, and each boundary maps to the first block whose
/// first frame is at or after it.
PhaseState phase_state(const PromptSchedule& schedule, std::int64_t t, const WindowConfig& cfg,
                       int frames_per_block);

/// Per-frame phase table for the whole schedule. Rows are independent, so
/// the parallel build fills them concurrently.
std::vector<PhaseState> phase_table(const PromptSchedule& schedule, const WindowConfig& cfg,
                                    int frames_per_block = 1);
std::vector<PhaseState> phase_table_serial(const PromptSchedule& schedule,
                                           const WindowConfig& cfg, int frames_per_block = 1);

}  // namespace phasemem
