// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phasemem/memory_engine.hpp"

// Flat-buffer driver surface for foreign callers (scripting runtimes, ML
// pipelines). Everything crosses as contiguous row-major doubles plus a shape;
// buffers are copied on the way in and never retained.

namespace phasemem::buffer {

/// Caller-owned (layers, heads, frames, dim) block of doubles.
struct BufferView {
  std::span<const double> data;
  std::array<std::int64_t, 4> shape{};
};

struct HeadBudget {
  int sink_frames = 0;
  int local_frames = 0;
  int anchor_entries = 0;
  int bridge_entries = 0;
  std::int64_t budget = 0;
};

struct StepSummary {
  BlockTrace trace;
  std::vector<HeadBudget> heads;  // layer * heads + head
  std::int64_t total_budget = 0;
};

class EngineHandle {
 public:
  EngineHandle() = default;
  bool live() const noexcept { return engine_ != nullptr; }
  // Releases the engine; later calls on this handle throw.
  void close() noexcept { engine_.reset(); }

 private:
  friend EngineHandle new_engine(std::string_view, BufferView);
  friend StepSummary step(EngineHandle&, BufferView);
  friend const MemoryEngine& engine_of(const EngineHandle&);
  std::shared_ptr<MemoryEngine> engine_;
};

/// `config_json` uses the config-file keys (schedule included). Signatures are
/// shaped (layers, heads, segments, dim). Errors are ConfigError whose key()
/// names the offending field ("signatures", "block", "handle" or a config path).
EngineHandle new_engine(std::string_view config_json, BufferView signatures);

// Block shape must be (layers, heads, next_block_frames, value_dim).
StepSummary step(EngineHandle& handle, BufferView block);

BudgetReport report(const EngineHandle& handle);
const std::vector<BlockTrace>& traces(const EngineHandle& handle);
const MemoryEngine& engine_of(const EngineHandle& handle);

// Library version the driver was built against.
std::string_view version() noexcept;

}  // namespace phasemem::buffer
