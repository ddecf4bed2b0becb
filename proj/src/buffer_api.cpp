// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/buffer_api.hpp"

#include "phasemem/config_io.hpp"
#include "phasemem/errors.hpp"
#include "phasemem/version.hpp"

namespace phasemem::buffer {
namespace {

std::string shape_text(const std::array<std::int64_t, 4>& s) {
  return "(" + std::to_string(s[0]) + ", " + std::to_string(s[1]) + ", " + std::to_string(s[2]) +
         ", " + std::to_string(s[3]) + ")";
}

void require_shape(const BufferView& buf, const std::array<std::int64_t, 4>& expected,
                   const char* key) {
  if (buf.shape != expected) {
    throw ConfigError("expected shape " + shape_text(expected) + ", got " + shape_text(buf.shape),
                      key);
  }
  std::size_t n = 1;
  for (auto d : expected) n *= static_cast<std::size_t>(d);
  if (buf.data.size() != n) {
    throw ConfigError("shape " + shape_text(expected) + " needs " + std::to_string(n) +
                          " values, buffer holds " + std::to_string(buf.data.size()),
                      key);
  }
}

MemoryEngine& live_engine(const std::shared_ptr<MemoryEngine>& e) {
  if (!e) throw ConfigError("engine handle is closed or was never created", "handle");
  return *e;
}

}  // namespace

EngineHandle new_engine(std::string_view config_json, BufferView signatures) {
  const SimConfig sim = parse_sim_config(config_json);
  const EngineConfig& cfg = sim.engine;
  const int segments = sim.schedule.segment_count();
  require_shape(signatures, {cfg.layers, cfg.heads, segments, cfg.value_dim}, "signatures");

  std::vector<SignatureSet> sets(static_cast<std::size_t>(segments));
  const std::size_t dim = static_cast<std::size_t>(cfg.value_dim);
  for (int s = 0; s < segments; ++s) {
    auto& set = sets[static_cast<std::size_t>(s)];
    set.reserve(static_cast<std::size_t>(cfg.head_count()));
    for (int l = 0; l < cfg.layers; ++l) {
      for (int h = 0; h < cfg.heads; ++h) {
        const std::size_t off = ((static_cast<std::size_t>(l) * cfg.heads + h) * segments + s) * dim;
        set.push_back(SemanticVector::from_span(signatures.data.subspan(off, dim)));
      }
    }
  }
  EngineHandle handle;
  handle.engine_ = std::make_shared<MemoryEngine>(cfg, sim.schedule, std::move(sets));
  return handle;
}

StepSummary step(EngineHandle& handle, BufferView block) {
  MemoryEngine& engine = live_engine(handle.engine_);
  if (engine.finished()) {
    throw RangeError("rollout already covers all " +
                     std::to_string(engine.schedule().total_frames()) + " frames");
  }
  const auto& cfg = engine.config();
  const int frames = engine.next_block_frames();
  require_shape(block, {cfg.layers, cfg.heads, frames, cfg.value_dim}, "block");
  const BlockValues values(cfg.layers, cfg.heads, frames, cfg.value_dim, block.data);

  auto result = engine.step_block(values);
  StepSummary out;
  out.trace = result.trace;
  out.total_budget = result.read_set.total_budget;
  out.heads.reserve(result.read_set.heads.size());
  for (const auto& h : result.read_set.heads) {
    out.heads.push_back({h.sink_frames, h.local_frames, h.anchor_entries, h.bridge_entries, h.budget});
  }
  return out;
}

const MemoryEngine& engine_of(const EngineHandle& handle) { return live_engine(handle.engine_); }

BudgetReport report(const EngineHandle& handle) { return budget_report(engine_of(handle).traces()); }

const std::vector<BlockTrace>& traces(const EngineHandle& handle) {
  return engine_of(handle).traces();
}

std::string_view version() noexcept { return kVersion; }

}  // namespace phasemem::buffer
