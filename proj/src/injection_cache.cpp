// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/injection_cache.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phasemem/errors.hpp"

namespace phasemem {

std::string_view to_string(InjectionSchedule s) {
  switch (s) {
    case InjectionSchedule::kOneShot:
      return "one_shot";
    case InjectionSchedule::kConstant:
      return "constant";
    case InjectionSchedule::kDecayed:
      return "decayed";
  }
  return "decayed";
}

InjectionSchedule parse_injection_schedule(std::string_view name) {
  if (name == "one_shot") return InjectionSchedule::kOneShot;
  if (name == "constant") return InjectionSchedule::kConstant;
  if (name == "decayed") return InjectionSchedule::kDecayed;
  throw ConfigError("unknown injection schedule '" + std::string(name) +
                        "' (expected one_shot, constant or decayed)",
                    "bridge_schedule");
}

double bridge_norm(const BridgeMemory& b) {
  return std::sqrt(squared_norm(b.bridge_sink) + squared_norm(b.bridge_recent));
}

HeadGates head_gates(const HeadSummaries& summaries, const SemanticVector& delta_perp,
                     double rho) {
  require_same_dim(summaries.recent, delta_perp);
  require_same_dim(summaries.sink, delta_perp);
  auto clip01 = [](double x) { return std::clamp(x, 0.0, 1.0); };
  HeadGates g;
  g.g_recent = clip01(rho * clip01(cosine(summaries.recent, delta_perp)));
  g.g_sink = clip01(rho * clip01(cosine(summaries.sink, delta_perp)));
  return g;
}

BridgeMemory build_bridge(const HeadSummaries& summaries, const SemanticVector& delta_perp,
                          const HeadGates& gates, InjectionSchedule schedule) {
  BridgeMemory b;
  b.bridge_recent = lerp(summaries.recent, delta_perp, gates.g_recent);
  b.bridge_sink = lerp(summaries.sink, delta_perp, gates.g_sink);
  b.scale = 1.0;
  b.age_blocks = 0;
  b.schedule = schedule;
  return b;
}

BridgeMemory advance_bridge(BridgeMemory bridge, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("decay factor must lie in [0, 1]", "bridge_lambda");
  }
  ++bridge.age_blocks;
  switch (bridge.schedule) {
    case InjectionSchedule::kDecayed:
      bridge.scale *= lambda;
      bridge.bridge_sink *= lambda;
      bridge.bridge_recent *= lambda;
      break;
    case InjectionSchedule::kConstant:
      break;
    case InjectionSchedule::kOneShot:
      bridge.scale = 0.0;
      bridge.bridge_sink *= 0.0;
      bridge.bridge_recent *= 0.0;
      break;
  }
  return bridge;
}

std::optional<BridgeMemory> prune_bridge(BridgeMemory bridge, double norm_tol,
                                         double initial_norm) {
  if (!(norm_tol > 0.0)) throw ConfigError("prune tolerance must be positive", "bridge_prune_tol");
  if (bridge.scale == 0.0) return std::nullopt;
  if (bridge_norm(bridge) < norm_tol * initial_norm) return std::nullopt;
  return bridge;
}

}  // namespace phasemem
