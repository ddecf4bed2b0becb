// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>

#include "phasemem/semantic_vector.hpp"

namespace phasemem {

/// Temporal pattern of the bridge after it is written at a prompt boundary.
enum class InjectionSchedule {
  kOneShot,   // full strength for exactly one read, then removed
  kConstant,  // full strength until the next switch replaces it
  kDecayed,   // scaled by lambda after every generated block
};

std::string_view to_string(InjectionSchedule s);
// Accepts "one_shot", "constant", "decayed". Throws ConfigError otherwise.
InjectionSchedule parse_injection_schedule(std::string_view name);

struct HeadSummaries {
  SemanticVector recent;
  SemanticVector sink;
  int head_index = 0;
  int layer_index = 0;
};

struct HeadGates {
  double g_recent = 0.0;
  double g_sink = 0.0;
};

/// Transient per-head bridge pair. The vectors are stored already scaled, so
/// `bridge_sink`/`bridge_recent` are exactly what a read sees.
struct BridgeMemory {
  SemanticVector bridge_sink;
  SemanticVector bridge_recent;
  double scale = 1.0;
  int age_blocks = 0;
  InjectionSchedule schedule = InjectionSchedule::kDecayed;
};

// sqrt(|B_s|^2 + |B_r|^2)
double bridge_norm(const BridgeMemory& b);

/// Gates from the clipped cosine between each summary and delta_perp, scaled
/// by the switch strength. The product is clamped into [0, 1] so that the
/// bridge stays a convex blend.
HeadGates head_gates(const HeadSummaries& summaries, const SemanticVector& delta_perp,
                     double rho);

BridgeMemory build_bridge(const HeadSummaries& summaries, const SemanticVector& delta_perp,
                          const HeadGates& gates, InjectionSchedule schedule);

/// One block of bridge lifetime. Throws ConfigError when lambda is outside [0, 1].
BridgeMemory advance_bridge(BridgeMemory bridge, double lambda);

/// Drops the bridge once its norm falls below `norm_tol * initial_norm`, or
/// once its scale reaches zero.
std::optional<BridgeMemory> prune_bridge(BridgeMemory bridge, double norm_tol,
                                         double initial_norm);

}  // namespace phasemem
