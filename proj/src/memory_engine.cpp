// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/memory_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "phasemem/errors.hpp"

namespace phasemem {
namespace {

std::string shape_string(int a, int b, int c, int d) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ", " +
         std::to_string(d) + ")";
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

void EngineConfig::validate() const {
  if (layers < 1) throw ConfigError("must be positive", "layers");
  if (heads < 1) throw ConfigError("must be positive", "heads");
  if (value_dim < 1) throw ConfigError("must be positive", "value_dim");
  if (frames_per_block < 1) throw ConfigError("must be positive", "frames_per_block");
  if (sink_frames < 1) throw ConfigError("must be positive", "sink_frames");
  if (tokens_per_frame < 1) throw ConfigError("must be positive", "tokens_per_frame");
  window.validate();
  anchors.validate();
  if (!(bridge_lambda >= 0.0 && bridge_lambda <= 1.0)) {
    throw ConfigError("must lie in [0, 1]", "bridge_lambda");
  }
  if (!(eps_stabilized > 0.0)) throw ConfigError("must be positive", "eps_stabilized");
  if (!(bridge_prune_tol > 0.0)) throw ConfigError("must be positive", "bridge_prune_tol");
}

// ---------------------------------------------------------------------------
// BlockValues

BlockValues::BlockValues(int layers, int heads, int frames, int dim)
    : layers_(layers), heads_(heads), frames_(frames), dim_(dim) {
  if (layers < 1 || heads < 1 || frames < 1 || dim < 1) {
    throw ConfigError("block shape must be positive, got " +
                      shape_string(layers, heads, frames, dim));
  }
  data_.assign(static_cast<std::size_t>(layers) * heads * frames * dim, 0.0);
}

BlockValues::BlockValues(int layers, int heads, int frames, int dim, std::span<const double> data)
    : BlockValues(layers, heads, frames, dim) {
  if (data.size() != data_.size()) {
    throw ConfigError("block buffer holds " + std::to_string(data.size()) +
                      " values, shape " + shape_string(layers, heads, frames, dim) + " needs " +
                      std::to_string(data_.size()));
  }
  std::copy(data.begin(), data.end(), data_.begin());
}

std::size_t BlockValues::offset(int layer, int head, int f) const {
  return ((static_cast<std::size_t>(layer) * heads_ + head) * frames_ + f) * dim_;
}

std::span<const double> BlockValues::frame(int layer, int head, int f) const {
  return std::span<const double>(data_).subspan(offset(layer, head, f), dim_);
}

std::span<double> BlockValues::frame(int layer, int head, int f) {
  return std::span<double>(data_).subspan(offset(layer, head, f), dim_);
}

// ---------------------------------------------------------------------------
// MemoryEngine

MemoryEngine::MemoryEngine(EngineConfig cfg, PromptSchedule schedule,
                           std::vector<SignatureSet> signatures)
    : cfg_(std::move(cfg)), schedule_(std::move(schedule)), signatures_(std::move(signatures)) {
  cfg_.validate();
  const int segments = schedule_.segment_count();
  if (static_cast<int>(signatures_.size()) != segments) {
    throw ConfigError("expected " + std::to_string(segments) + " signature sets (one per segment), got " +
                          std::to_string(signatures_.size()),
                      "signatures");
  }
  for (const auto& set : signatures_) {
    if (static_cast<int>(set.size()) != cfg_.head_count()) {
      throw ConfigError("expected " + std::to_string(cfg_.head_count()) +
                            " signatures per segment (layers * heads), got " +
                            std::to_string(set.size()),
                        "signatures");
    }
    for (const auto& v : set) {
      if (static_cast<int>(v.dim()) != cfg_.value_dim) {
        throw ConfigError("signature dim " + std::to_string(v.dim()) + " != value_dim " +
                              std::to_string(cfg_.value_dim),
                          "signatures");
      }
    }
  }
  // Every segment must own the first frame of at least one block.
  const std::int64_t bsz = cfg_.frames_per_block;
  std::int64_t prev_block = 0;
  for (std::int64_t b : schedule_.boundaries()) {
    const std::int64_t first_block = ceil_div(b, bsz);
    if (first_block <= prev_block || first_block * bsz >= schedule_.total_frames()) {
      throw ConfigError("boundary " + std::to_string(b) +
                            " leaves a segment with no block start at frames_per_block " +
                            std::to_string(bsz),
                        "boundaries");
    }
    prev_block = first_block;
  }

  heads_.reserve(static_cast<std::size_t>(cfg_.head_count()));
  for (int i = 0; i < cfg_.head_count(); ++i) {
    heads_.push_back(HeadState{{},
                               FrameRing<SemanticVector>(static_cast<std::size_t>(cfg_.window.w_max)),
                               std::nullopt,
                               std::nullopt,
                               std::nullopt,
                               AnchorStore(cfg_.anchors.max_anchors)});
  }
  last_injection_.resize(heads_.size());
}

std::int64_t MemoryEngine::block_count() const noexcept {
  return ceil_div(schedule_.total_frames(), cfg_.frames_per_block);
}

int MemoryEngine::next_block_frames() const {
  if (finished()) return 0;
  return static_cast<int>(
      std::min<std::int64_t>(cfg_.frames_per_block, schedule_.total_frames() - next_frame_));
}

std::size_t MemoryEngine::head_slot(int layer, int head) const {
  if (layer < 0 || layer >= cfg_.layers || head < 0 || head >= cfg_.heads) {
    throw RangeError("no head (" + std::to_string(layer) + ", " + std::to_string(head) + ")");
  }
  return static_cast<std::size_t>(layer) * cfg_.heads + head;
}

std::size_t MemoryEngine::stored_frames(int layer, int head) const {
  const auto& hs = heads_[head_slot(layer, head)];
  return hs.sink.size() + hs.local.size();
}

const std::optional<BridgeMemory>& MemoryEngine::bridge(int layer, int head) const {
  return heads_[head_slot(layer, head)].bridge;
}

const AnchorStore& MemoryEngine::anchors(int layer, int head) const {
  return heads_[head_slot(layer, head)].anchors;
}

void MemoryEngine::finalize_segment(HeadState& hs, std::size_t h, int segment) const {
  const auto want = static_cast<std::size_t>(cfg_.anchors.recent_frames);
  std::vector<SemanticVector> recent = hs.local.latest(want);
  // Before the ring has evicted anything, the sink frames directly precede it.
  const bool contiguous =
      hs.local.empty() || hs.local.first_index() == static_cast<std::int64_t>(hs.sink.size());
  if (recent.size() < want && contiguous) {
    const std::size_t extra = std::min(want - recent.size(), hs.sink.size());
    recent.insert(recent.begin(), hs.sink.end() - static_cast<std::ptrdiff_t>(extra), hs.sink.end());
  }
  if (recent.empty()) return;
  const SemanticVector u = summarize_recent(recent, cfg_.anchors.recent_frames);
  hs.anchors.push(make_anchor(u, signatures_[static_cast<std::size_t>(segment)][h], cfg_.anchors,
                              segment));
}

void MemoryEngine::inject(HeadState& hs, std::size_t h, int segment, HeadInjection& record) const {
  const auto dim = static_cast<std::size_t>(cfg_.value_dim);
  const SemanticVector tangent = (hs.last_block_mean && hs.prev_block_mean)
                                     ? motion_tangent(*hs.prev_block_mean, *hs.last_block_mean)
                                     : SemanticVector::zeros(dim);
  const auto& prev_sig = signatures_[static_cast<std::size_t>(segment) - 1][h];
  const auto& curr_sig = signatures_[static_cast<std::size_t>(segment)][h];

  record.signal = make_transition(prev_sig, curr_sig, tangent, cfg_.eps_stabilized);
  record.summaries.recent = hs.last_block_mean ? *hs.last_block_mean : SemanticVector::zeros(dim);
  record.summaries.sink = hs.sink.empty() ? SemanticVector::zeros(dim) : mean_of(hs.sink);
  record.summaries.layer_index = static_cast<int>(h) / cfg_.heads;
  record.summaries.head_index = static_cast<int>(h) % cfg_.heads;
  record.gates = head_gates(record.summaries, record.signal.delta_perp, record.signal.strength);
  if (hs.sink.empty()) record.gates.g_sink = 0.0;
  hs.bridge = build_bridge(record.summaries, record.signal.delta_perp, record.gates,
                           cfg_.bridge_schedule);
}

HeadReadSet MemoryEngine::assemble(const HeadState& hs, int window) const {
  HeadReadSet rs;
  const std::vector<SegmentAnchor> anchors = hs.anchors.view();
  const std::size_t local_n = std::min(static_cast<std::size_t>(window), hs.local.size());
  rs.entries.reserve(hs.sink.size() + anchors.size() + 2 + local_n);

  for (std::size_t i = 0; i < hs.sink.size(); ++i) {
    rs.entries.push_back({EntryKind::kSink, static_cast<std::int64_t>(i), hs.sink[i]});
  }
  for (const auto& a : anchors) {
    rs.entries.push_back({EntryKind::kAnchor, a.segment_index, a.vector});
  }
  if (hs.bridge) {
    rs.entries.push_back({EntryKind::kBridgeSink, -1, hs.bridge->bridge_sink});
    rs.entries.push_back({EntryKind::kBridgeRecent, -1, hs.bridge->bridge_recent});
  }
  const std::size_t skip = hs.local.size() - local_n;
  for (std::size_t i = skip; i < hs.local.size(); ++i) {
    rs.entries.push_back(
        {EntryKind::kLocal, hs.local.first_index() + static_cast<std::int64_t>(i), hs.local.at(i)});
  }

  rs.sink_frames = static_cast<int>(hs.sink.size());
  rs.local_frames = static_cast<int>(local_n);
  rs.anchor_entries = static_cast<int>(anchors.size());
  rs.bridge_entries = hs.bridge ? 2 : 0;
  rs.budget = static_cast<std::int64_t>(cfg_.tokens_per_frame) * (rs.sink_frames + rs.local_frames) +
              rs.anchor_entries + rs.bridge_entries;
  return rs;
}

void MemoryEngine::append(HeadState& hs, const BlockValues& block, std::size_t h) const {
  const int layer = static_cast<int>(h) / cfg_.heads;
  const int head = static_cast<int>(h) % cfg_.heads;
  SemanticVector block_sum = SemanticVector::zeros(static_cast<std::size_t>(cfg_.value_dim));
  for (int f = 0; f < block.frames(); ++f) {
    SemanticVector v = SemanticVector::from_span(block.frame(layer, head, f));
    block_sum += v;
    const std::int64_t index = next_frame_ + f;
    if (hs.sink.size() < static_cast<std::size_t>(cfg_.sink_frames)) {
      hs.sink.push_back(std::move(v));
    } else {
      hs.local.push(index, std::move(v));
    }
  }
  block_sum *= 1.0 / static_cast<double>(block.frames());
  hs.prev_block_mean = std::move(hs.last_block_mean);
  hs.last_block_mean = std::move(block_sum);
}

MemoryEngine::StepResult MemoryEngine::step_block(const BlockValues& block) {
  if (finished()) {
    throw RangeError("rollout already covers all " + std::to_string(schedule_.total_frames()) +
                     " frames");
  }
  const int expected_frames = next_block_frames();
  if (block.layers() != cfg_.layers || block.heads() != cfg_.heads ||
      block.frames() != expected_frames || block.dim() != cfg_.value_dim) {
    const auto s = block.shape();
    throw ConfigError("block shape " + shape_string(s[0], s[1], s[2], s[3]) + " != expected " +
                          shape_string(cfg_.layers, cfg_.heads, expected_frames, cfg_.value_dim),
                      "block_values");
  }
  for (double x : block.data()) {
    if (!std::isfinite(x)) throw ConfigError("block contains a non-finite value", "block_values");
  }

  const std::size_t n = heads_.size();
  const std::int64_t first = next_frame_;
  const SegmentPosition pos = segment_of(schedule_, first);
  const bool switched = pos.segment_index != segment_;

  // 1. Close the finished segment and write the bridge for the new one.
  if (switched) {
    const int finished_segment = segment_;
    const int new_segment = pos.segment_index;
    const bool inject_now = cfg_.injection_enabled;
    for_each_index(n, cfg_.execution, [&](std::size_t h) {
      finalize_segment(heads_[h], h, finished_segment);
      if (inject_now) inject(heads_[h], h, new_segment, last_injection_[h]);
    });
    segment_ = new_segment;
    if (inject_now) {
      double sq = 0.0;
      for (const auto& hs : heads_) {
        const double bn = bridge_norm(*hs.bridge);
        sq += bn * bn;
      }
      bridge_live_ = true;
      bridge_initial_norm_ = std::sqrt(sq);
    }
  }

  // 2. Phase and read set.
  const PhaseState phase = phase_state(schedule_, first, cfg_.window, cfg_.frames_per_block);
  StepResult out;
  out.read_set.heads.resize(n);
  for_each_index(n, cfg_.execution, [&](std::size_t h) {
    out.read_set.heads[h] = assemble(heads_[h], phase.window);
  });
  out.read_set.budget_per_head = out.read_set.heads.front().budget;
  for (const auto& hr : out.read_set.heads) out.read_set.total_budget += hr.budget;

  double read_bridge_sq = 0.0;
  if (bridge_live_) {
    for (const auto& hs : heads_) {
      const double bn = bridge_norm(*hs.bridge);
      read_bridge_sq += bn * bn;
    }
  }

  // 3. Commit the block's frames.
  for_each_index(n, cfg_.execution, [&](std::size_t h) { append(heads_[h], block, h); });

  // 4. Bridge lifetime. Pruning is decided on the norm over all heads so
  // that every head carries the same entry layout.
  if (bridge_live_) {
    const double lambda = cfg_.bridge_lambda;
    for_each_index(n, cfg_.execution,
                   [&](std::size_t h) { heads_[h].bridge = advance_bridge(*heads_[h].bridge, lambda); });
    double sq = 0.0;
    for (const auto& hs : heads_) {
      const double bn = bridge_norm(*hs.bridge);
      sq += bn * bn;
    }
    const bool expired = heads_.front().bridge->scale == 0.0 ||
                         std::sqrt(sq) < cfg_.bridge_prune_tol * bridge_initial_norm_;
    if (expired) {
      for (auto& hs : heads_) hs.bridge.reset();
      bridge_live_ = false;
    }
  }

  // 5. Trace.
  BlockTrace& tr = out.trace;
  tr.block_index = block_index_;
  tr.first_frame = first;
  tr.segment_index = phase.segment_index;
  tr.age = phase.age;
  tr.distance = phase.distance;
  tr.window = phase.window;
  tr.phase_weight = phase.w;
  tr.read_budget = out.read_set.budget_per_head;
  tr.bridge_norm = std::sqrt(read_bridge_sq);
  tr.switch_flag = switched;
  tr.anchors_count = out.read_set.heads.front().anchor_entries;
  traces_.push_back(tr);

  next_frame_ += block.frames();
  ++block_index_;
  return out;
}

// ---------------------------------------------------------------------------

BudgetReport budget_report(std::span<const BlockTrace> traces) {
  if (traces.empty()) throw ConfigError("budget report needs at least one block trace");
  BudgetReport rep;
  rep.blocks = static_cast<std::int64_t>(traces.size());
  rep.min_budget = std::numeric_limits<std::int64_t>::max();
  rep.max_budget = std::numeric_limits<std::int64_t>::min();
  double budget_sum = 0.0;
  double window_sum = 0.0;
  for (const auto& t : traces) {
    budget_sum += static_cast<double>(t.read_budget);
    window_sum += t.window;
    rep.min_budget = std::min(rep.min_budget, t.read_budget);
    rep.max_budget = std::max(rep.max_budget, t.read_budget);
    if (rep.segments.empty() || rep.segments.back().segment_index != t.segment_index) {
      rep.segments.push_back(SegmentBudget{t.segment_index, 0, 0.0, 0.0, 0});
    }
    auto& seg = rep.segments.back();
    ++seg.blocks;
    seg.mean_budget += static_cast<double>(t.read_budget);
    seg.mean_window += t.window;
    seg.max_window = std::max(seg.max_window, t.window);
  }
  rep.mean_budget = budget_sum / static_cast<double>(rep.blocks);
  rep.mean_window = window_sum / static_cast<double>(rep.blocks);
  for (auto& seg : rep.segments) {
    seg.mean_budget /= static_cast<double>(seg.blocks);
    seg.mean_window /= static_cast<double>(seg.blocks);
  }
  return rep;
}

}  // namespace phasemem
