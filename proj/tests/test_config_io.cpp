// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>

#include "doctest.h"
#include "phasemem/config_io.hpp"
#include "phasemem/errors.hpp"

using namespace phasemem;

namespace {

std::string key_of(std::string_view text) {
  try {
    parse_sim_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("empty document gives defaults") {
  const SimConfig c = parse_sim_config("{}");
  CHECK(c.seed == 42);
  CHECK(c.engine.window.w_min == 7);
  CHECK(c.engine.window.w_max == 12);
  CHECK(c.engine.tokens_per_frame == 1560);
  CHECK(c.schedule.boundaries() == std::vector<std::int64_t>{40, 80, 120, 160, 200});
  CHECK(c.schedule.total_frames() == 240);
}

TEST_CASE("overrides and comments") {
  const SimConfig c = parse_sim_config(R"({
    // shorter rollout
    "seed": 3,
    "schedule": {"boundaries": [30], "total_frames": 90},
    "engine": {"window": {"w_min": 5, "phase_unit": "blocks"}, "bridge_schedule": "constant"}
  })");
  CHECK(c.seed == 3);
  CHECK(c.schedule.segment_count() == 2);
  CHECK(c.engine.window.w_min == 5);
  CHECK(c.engine.window.phase_unit == PhaseUnit::kBlocks);
  CHECK(c.engine.bridge_schedule == InjectionSchedule::kConstant);
}

TEST_CASE("errors carry the dotted key") {
  CHECK(key_of(R"({"bogus": 1})") == "bogus");
  CHECK(key_of(R"({"engine": {"window": {"w_mn": 3}}})") == "engine.window.w_mn");
  CHECK(key_of(R"({"engine": {"window": {"w_min": 13}}})") == "engine.window.w_min");
  CHECK(key_of(R"({"engine": {"window": {"w_min": "seven"}}})") == "engine.window.w_min");
  CHECK(key_of(R"({"engine": {"anchors": {"alpha": 2.0}}})") == "engine.anchors.alpha");
  CHECK(key_of(R"({"engine": {"bridge_schedule": "often"}})") == "engine.bridge_schedule");
  CHECK(key_of(R"({"schedule": {"boundaries": [50, 40]}})") == "schedule.boundaries");
  CHECK(key_of(R"({"drift_sigma": -1})") == "drift_sigma");
  CHECK(key_of(R"({"seed": -1})") == "seed");
  CHECK(key_of("{not json") == "config");
  CHECK(key_of("[]") == "config");
}

TEST_CASE("dump round-trips") {
  SimConfig c;
  c.seed = 77;
  c.engine.bridge_lambda = 0.5;
  c.schedule = PromptSchedule({10, 20}, 60);
  const SimConfig back = parse_sim_config(dump_sim_config(c));
  CHECK(back.seed == 77);
  CHECK(back.engine.bridge_lambda == 0.5);
  CHECK(back.schedule.boundaries() == c.schedule.boundaries());
  CHECK(dump_sim_config(back) == dump_sim_config(c));
}

TEST_CASE("shipped default config matches built-in defaults") {
  const SimConfig c = load_sim_config(std::filesystem::path(PHASEMEM_CONFIG_DIR) / "default.json");
  CHECK(dump_sim_config(c) == dump_sim_config(SimConfig{}));
}

TEST_CASE("missing file") {
  try {
    load_sim_config("/nonexistent/phasemem.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "config");
  }
}
