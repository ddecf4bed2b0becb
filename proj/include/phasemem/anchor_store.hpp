// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "phasemem/semantic_vector.hpp"

namespace phasemem {

struct AnchorConfig {
  double alpha = 0.35;
  int recent_frames = 6;
  int max_anchors = 4;
  double injection_scale = 0.8;

  void validate() const;
};

struct SegmentAnchor {
  SemanticVector vector;
  int segment_index = 0;
  double injection_scale = 1.0;
};

// Mean of the last min(r_anchor, frames.size()) frames.
SemanticVector summarize_recent(std::span<const SemanticVector> frame_values, int r_anchor);

// (1 - alpha) * u + alpha * p
SegmentAnchor make_anchor(const SemanticVector& u, const SemanticVector& p,
                          const AnchorConfig& cfg, int segment_index);

/// Bounded FIFO of segment anchors for one (layer, head).
class AnchorStore {
 public:
  explicit AnchorStore(int max_anchors = 4);

  // Throws ConfigError unless anchor.segment_index exceeds every stored index.
  void push(SegmentAnchor anchor);

  // Anchors in ascending segment order, each vector multiplied by its scale.
  std::vector<SegmentAnchor> view() const;

  std::size_t size() const noexcept { return anchors_.size(); }
  bool empty() const noexcept { return anchors_.empty(); }
  int max_anchors() const noexcept { return max_anchors_; }
  const std::deque<SegmentAnchor>& raw() const noexcept { return anchors_; }

  friend bool operator==(const AnchorStore& a, const AnchorStore& b);

 private:
  int max_anchors_;
  std::deque<SegmentAnchor> anchors_;
};

}  // namespace phasemem
