// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/window_scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phasemem/errors.hpp"
#include "phasemem/parallel.hpp"

namespace phasemem {

PromptSchedule::PromptSchedule(std::vector<std::int64_t> boundaries, std::int64_t total_frames)
    : boundaries_(std::move(boundaries)), total_frames_(total_frames) {
  if (total_frames_ < 1) throw ConfigError("must be positive", "total_frames");
  std::int64_t prev = 0;
  for (std::int64_t b : boundaries_) {
    if (b <= prev || b >= total_frames_) {
      throw ConfigError("boundaries must be strictly ascending within (0, total_frames); got " +
                            std::to_string(b),
                        "boundaries");
    }
    prev = b;
  }
}

std::int64_t PromptSchedule::segment_start(int m) const {
  if (m < 0 || m >= segment_count()) throw RangeError("segment index out of range");
  return m == 0 ? 0 : boundaries_[static_cast<std::size_t>(m) - 1];
}

PromptSchedule PromptSchedule::scaled(double factor) const {
  if (!(factor > 0.0)) throw ConfigError("scale factor must be positive");
  auto scale = [factor](std::int64_t x) {
    return static_cast<std::int64_t>(std::floor(static_cast<double>(x) * factor + 0.5));
  };
  std::vector<std::int64_t> b;
  b.reserve(boundaries_.size());
  for (auto x : boundaries_) b.push_back(scale(x));
  return PromptSchedule(std::move(b), scale(total_frames_));
}

std::string_view to_string(PhaseUnit u) { return u == PhaseUnit::kFrames ? "frames" : "blocks"; }

PhaseUnit parse_phase_unit(std::string_view name) {
  if (name == "frames") return PhaseUnit::kFrames;
  if (name == "blocks") return PhaseUnit::kBlocks;
  throw ConfigError("expected 'frames' or 'blocks', got '" + std::string(name) + "'",
                    "phase_unit");
}

void WindowConfig::validate() const {
  if (w_min < 1) throw ConfigError("must be positive", "w_min");
  if (w_max < 1) throw ConfigError("must be positive", "w_max");
  if (w_min > w_max) throw ConfigError("must not exceed w_max", "w_min");
  if (!(tau_post > 0.0) || !std::isfinite(tau_post)) throw ConfigError("must be positive", "tau_post");
  if (!(tau_pre > 0.0) || !std::isfinite(tau_pre)) throw ConfigError("must be positive", "tau_pre");
}

SegmentPosition segment_of(const PromptSchedule& schedule, std::int64_t t) {
  if (t < 0 || t >= schedule.total_frames()) {
    throw RangeError("frame " + std::to_string(t) + " outside [0, " +
                     std::to_string(schedule.total_frames()) + ")");
  }
  const auto& b = schedule.boundaries();
  // First boundary strictly after t; everything before it is at or below t.
  const auto it = std::upper_bound(b.begin(), b.end(), t);
  SegmentPosition pos;
  pos.segment_index = static_cast<int>(it - b.begin());
  pos.segment_start = pos.segment_index == 0 ? 0 : *(it - 1);
  if (it != b.end()) pos.next_boundary = *it;
  return pos;
}

PhaseWeights phase_weight(std::int64_t age, std::optional<std::int64_t> distance,
                          const WindowConfig& cfg) {
  PhaseWeights pw;
  pw.w_post = std::exp(-static_cast<double>(age) / cfg.tau_post);
  pw.w_pre = distance ? std::exp(-static_cast<double>(*distance) / cfg.tau_pre) : 0.0;
  pw.w = std::max(pw.w_post, pw.w_pre);
  return pw;
}

int window_size(double w, const WindowConfig& cfg) {
  const double span = static_cast<double>(cfg.w_max - cfg.w_min);
  const auto raw = static_cast<int>(std::floor(cfg.w_min + span * w + 0.5));
  return std::clamp(raw, cfg.w_min, cfg.w_max);
}

namespace {

PhaseState finish(std::int64_t t, int segment, std::int64_t age,
                  std::optional<std::int64_t> distance, const WindowConfig& cfg) {
  PhaseState ps;
  ps.t = t;
  ps.segment_index = segment;
  ps.age = age;
  ps.distance = distance;
  const PhaseWeights pw = phase_weight(age, distance, cfg);
  ps.w_post = pw.w_post;
  ps.w_pre = pw.w_pre;
  ps.w = pw.w;
  ps.window = window_size(pw.w, cfg);
  return ps;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

PhaseState phase_state(const PromptSchedule& schedule, std::int64_t t, const WindowConfig& cfg) {
  const SegmentPosition pos = segment_of(schedule, t);
  const std::int64_t age = std::max<std::int64_t>(0, t - pos.segment_start);
  std::optional<std::int64_t> distance;
  if (pos.next_boundary) distance = std::max<std::int64_t>(0, *pos.next_boundary - t);
  return finish(t, pos.segment_index, age, distance, cfg);
}

PhaseState phase_state(const PromptSchedule& schedule, std::int64_t t, const WindowConfig& cfg,
                       int frames_per_block) {
  if (cfg.phase_unit == PhaseUnit::kFrames) return phase_state(schedule, t, cfg);
  if (frames_per_block < 1) throw ConfigError("must be positive", "frames_per_block");
  const std::int64_t bsz = frames_per_block;
  const std::int64_t block = t / bsz;
  // The block belongs to the segment of its first frame.
  const SegmentPosition pos = segment_of(schedule, std::max<std::int64_t>(0, t - t % bsz));
  const std::int64_t start_block = ceil_div(pos.segment_start, bsz);
  const std::int64_t age = std::max<std::int64_t>(0, block - start_block);
  std::optional<std::int64_t> distance;
  if (pos.next_boundary) {
    distance = std::max<std::int64_t>(0, ceil_div(*pos.next_boundary, bsz) - block);
  }
  return finish(t, pos.segment_index, age, distance, cfg);
}

std::vector<PhaseState> phase_table_serial(const PromptSchedule& schedule,
                                           const WindowConfig& cfg, int frames_per_block) {
  std::vector<PhaseState> rows;
  rows.reserve(static_cast<std::size_t>(schedule.total_frames()));
  for (std::int64_t t = 0; t < schedule.total_frames(); ++t) {
    rows.push_back(phase_state(schedule, t, cfg, frames_per_block));
  }
  return rows;
}

std::vector<PhaseState> phase_table(const PromptSchedule& schedule, const WindowConfig& cfg,
                                    int frames_per_block) {
  if (cfg.phase_unit == PhaseUnit::kBlocks && frames_per_block < 1) {
    throw ConfigError("must be positive", "frames_per_block");
  }
  const std::int64_t n = schedule.total_frames();
  std::vector<PhaseState> rows(static_cast<std::size_t>(n));
  PHASEMEM_OMP_PRAGMA("omp parallel for schedule(static)")
  for (std::int64_t t = 0; t < n; ++t) {
    rows[static_cast<std::size_t>(t)] = phase_state(schedule, t, cfg, frames_per_block);
  }
  return rows;
}

}  // namespace phasemem
