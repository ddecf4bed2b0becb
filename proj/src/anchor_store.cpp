// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/anchor_store.hpp"

#include <algorithm>
#include <string>

#include "phasemem/errors.hpp"

namespace phasemem {

void AnchorConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("must lie in [0, 1]", "alpha");
  if (recent_frames < 1) throw ConfigError("must be positive", "recent_frames");
  if (max_anchors < 1) throw ConfigError("must be positive", "max_anchors");
  if (!(injection_scale >= 0.0 && injection_scale <= 1.0)) {
    throw ConfigError("must lie in [0, 1]", "injection_scale");
  }
}

SemanticVector summarize_recent(std::span<const SemanticVector> frame_values, int r_anchor) {
  if (frame_values.empty()) throw ConfigError("no frames to summarize");
  if (r_anchor < 1) throw ConfigError("must be positive", "recent_frames");
  const std::size_t k = std::min(frame_values.size(), static_cast<std::size_t>(r_anchor));
  return mean_of(frame_values.last(k));
}

SegmentAnchor make_anchor(const SemanticVector& u, const SemanticVector& p,
                          const AnchorConfig& cfg, int segment_index) {
  return SegmentAnchor{lerp(u, p, cfg.alpha), segment_index, cfg.injection_scale};
}

AnchorStore::AnchorStore(int max_anchors) : max_anchors_(max_anchors) {
  if (max_anchors < 1) throw ConfigError("must be positive", "max_anchors");
}

void AnchorStore::push(SegmentAnchor anchor) {
  if (!anchors_.empty() && anchor.segment_index <= anchors_.back().segment_index) {
    throw ConfigError("anchor segment " + std::to_string(anchor.segment_index) +
                      " does not follow stored segment " +
                      std::to_string(anchors_.back().segment_index));
  }
  anchors_.push_back(std::move(anchor));
  while (anchors_.size() > static_cast<std::size_t>(max_anchors_)) anchors_.pop_front();
}

std::vector<SegmentAnchor> AnchorStore::view() const {
  std::vector<SegmentAnchor> out;
  out.reserve(anchors_.size());
  for (const auto& a : anchors_) {
    out.push_back(SegmentAnchor{a.injection_scale * a.vector, a.segment_index, a.injection_scale});
  }
  return out;
}

bool operator==(const AnchorStore& a, const AnchorStore& b) {
  if (a.max_anchors_ != b.max_anchors_ || a.anchors_.size() != b.anchors_.size()) return false;
  for (std::size_t i = 0; i < a.anchors_.size(); ++i) {
    const auto& x = a.anchors_[i];
    const auto& y = b.anchors_[i];
    if (x.segment_index != y.segment_index || x.injection_scale != y.injection_scale ||
        !(x.vector == y.vector)) {
      return false;
    }
  }
  return true;
}

}  // namespace phasemem
