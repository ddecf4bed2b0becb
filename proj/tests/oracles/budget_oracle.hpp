// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Test-only replay of per-block read budgets from the schedule alone. It
// evaluates the window formula itself and counts entries arithmetically; it
// does not call into the engine or the window scheduler.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace phasemem::oracle {

enum class BridgeMode { kOneShot, kConstant, kDecayed, kNone };

struct BudgetParams {
  std::vector<std::int64_t> boundaries{40, 80, 120, 160, 200};
  std::int64_t total_frames = 240;
  int frames_per_block = 3;
  int sink_frames = 3;
  int w_min = 7;
  int w_max = 12;
  double tau_post = 18.0;
  double tau_pre = 9.0;
  int tokens_per_frame = 1560;
  int max_anchors = 4;
  double lambda = 0.85;
  double prune_tol = 1e-3;
  BridgeMode bridge = BridgeMode::kDecayed;
};

struct OracleBlock {
  std::int64_t first_frame = 0;
  int window = 0;
  std::int64_t budget = 0;
  bool bridge_live = false;
};

inline int oracle_window(const BudgetParams& p, std::int64_t t) {
  std::int64_t start = 0;
  std::int64_t next = -1;
  for (std::size_t i = 0; i < p.boundaries.size(); ++i) {
    if (p.boundaries[i] <= t) start = p.boundaries[i];
    if (p.boundaries[i] > t) {
      next = p.boundaries[i];
      break;
    }
  }
  const double post = std::exp(-static_cast<double>(t - start) / p.tau_post);
  const double pre = next < 0 ? 0.0 : std::exp(-static_cast<double>(next - t) / p.tau_pre);
  const double w = post > pre ? post : pre;
  int win = static_cast<int>(std::floor(p.w_min + (p.w_max - p.w_min) * w + 0.5));
  return std::min(std::max(win, p.w_min), p.w_max);
}

inline std::vector<OracleBlock> replay_budgets(const BudgetParams& p) {
  std::vector<OracleBlock> out;
  int prev_segment = 0;
  int completed_segments = 0;
  std::int64_t blocks_since_switch = -1;  // -1: no switch yet
  for (std::int64_t f = 0; f < p.total_frames; f += p.frames_per_block) {
    int segment = 0;
    for (auto b : p.boundaries) segment += b <= f ? 1 : 0;
    if (segment != prev_segment) {
      completed_segments += segment - prev_segment;
      blocks_since_switch = 0;
      prev_segment = segment;
    } else if (blocks_since_switch >= 0) {
      ++blocks_since_switch;
    }

    bool live = false;
    if (blocks_since_switch >= 0) {
      switch (p.bridge) {
        case BridgeMode::kNone:
          break;
        case BridgeMode::kOneShot:
          live = blocks_since_switch == 0;
          break;
        case BridgeMode::kConstant:
          live = true;
          break;
        case BridgeMode::kDecayed:
          live = std::pow(p.lambda, static_cast<double>(blocks_since_switch)) >= p.prune_tol;
          break;
      }
    }

    OracleBlock blk;
    blk.first_frame = f;
    blk.window = oracle_window(p, f);
    const std::int64_t sink = std::min<std::int64_t>(f, p.sink_frames);
    const std::int64_t ring = std::min<std::int64_t>(f - sink, p.w_max);
    const std::int64_t local = std::min<std::int64_t>(ring, blk.window);
    const std::int64_t anchors = std::min(completed_segments, p.max_anchors);
    blk.bridge_live = live;
    blk.budget = p.tokens_per_frame * (sink + local) + anchors + (live ? 2 : 0);
    out.push_back(blk);
  }
  return out;
}

inline double mean_budget(const std::vector<OracleBlock>& blocks) {
  double s = 0.0;
  for (const auto& b : blocks) s += static_cast<double>(b.budget);
  return s / static_cast<double>(blocks.size());
}

}  // namespace phasemem::oracle
