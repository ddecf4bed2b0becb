// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "phasemem/rollout_sim.hpp"

namespace phasemem {

/// Parses a JSON config document (comments allowed) into a SimConfig.
///
/// Keys mirror the SimConfig/EngineConfig/WindowConfig/AnchorConfig field
/// names; omitted keys keep their defaults and unknown keys are rejected.
/// Errors are ConfigError with `key()` set to the dotted path of the
/// offending field, e.g. "engine.window.w_min".
SimConfig parse_sim_config(std::string_view text);

// Throws ConfigError (key "config") when the file cannot be read.
SimConfig load_sim_config(const std::filesystem::path& path);

// Full config with every key present, in the same format.
std::string dump_sim_config(const SimConfig& cfg);

}  // namespace phasemem
