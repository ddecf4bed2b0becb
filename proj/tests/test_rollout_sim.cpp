// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "phasemem/errors.hpp"
#include "phasemem/projection.hpp"
#include "phasemem/rollout_sim.hpp"

using namespace phasemem;

TEST_CASE("signature separation controls switch strength") {
  for (double sep : {0.0, 0.3, 1.0, 2.0}) {
    const auto sigs = synth_prompt_signatures(11, 4, 2, 3, 16, sep);
    REQUIRE(sigs.size() == 4);
    for (std::size_t k = 1; k < sigs.size(); ++k) {
      for (std::size_t h = 0; h < 6; ++h) {
        CHECK(norm(sigs[k][h]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(switch_strength(sigs[k - 1][h], sigs[k][h]) - sep) <= 1e-9);
      }
    }
  }
  // Zero separation repeats the same vector exactly.
  const auto same = synth_prompt_signatures(11, 3, 1, 1, 5, 0.0);
  CHECK(same[0][0] == same[2][0]);
}

TEST_CASE("signature edge cases") {
  CHECK_NOTHROW(synth_prompt_signatures(1, 3, 1, 1, 1, 2.0));
  CHECK_THROWS_AS(synth_prompt_signatures(1, 3, 1, 1, 1, 0.5), ConfigError);
  CHECK_THROWS_AS(synth_prompt_signatures(1, 3, 1, 1, 4, 2.5), ConfigError);
  CHECK_THROWS_AS(synth_prompt_signatures(1, 0, 1, 1, 4, 0.5), ConfigError);
}

TEST_CASE("signatures and streams are deterministic per seed") {
  CHECK(synth_prompt_signatures(3, 2, 1, 2, 4, 0.5)[1] == synth_prompt_signatures(3, 2, 1, 2, 4, 0.5)[1]);
  CHECK_FALSE(synth_prompt_signatures(3, 2, 1, 2, 4, 0.5)[1][0] ==
              synth_prompt_signatures(4, 2, 1, 2, 4, 0.5)[1][0]);
  const auto a = synth_block_values(make_stream(9, 0, 1, 6), 5, 0.05);
  const auto b = synth_block_values(make_stream(9, 0, 1, 6), 5, 0.05);
  for (int f = 0; f < 5; ++f) CHECK(a.frames[f] == b.frames[f]);
}

TEST_CASE("block-wise generation matches one long draw") {
  const auto whole = synth_block_values(make_stream(9, 1, 0, 6), 9, 0.05);
  auto st = make_stream(9, 1, 0, 6);
  std::vector<SemanticVector> pieces;
  for (int k = 0; k < 3; ++k) {
    auto step = synth_block_values(st, 3, 0.05);
    for (auto& v : step.frames) pieces.push_back(v);
    st = step.state;
  }
  for (int f = 0; f < 9; ++f) CHECK(pieces[f] == whole.frames[f]);
}

TEST_CASE("stream frames stay unit norm and tiny sigma barely moves") {
  const auto step = synth_block_values(make_stream(1, 0, 0, 8), 200, 0.5);
  for (const auto& v : step.frames) CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-12));
  const auto start = make_stream(2, 0, 0, 8);
  const auto tiny = synth_block_values(start, 20, 1e-9);
  for (const auto& v : tiny.frames) CHECK(norm(v - start.value) <= 1e-7);
  CHECK_THROWS_AS(synth_block_values(start, 3, 0.0), ConfigError);
}

TEST_CASE("default run has 80 blocks and 5 switches") {
  const auto res = run(SimConfig{});
  CHECK(res.traces.size() == 80);
  int switches = 0;
  for (const auto& t : res.traces) switches += t.switch_flag ? 1 : 0;
  CHECK(switches == 5);
  CHECK(res.report.blocks == 80);
  CHECK(res.report.segments.size() == 6);
  // Same seed, same traces.
  CHECK(run(SimConfig{}).traces == res.traces);
}

TEST_CASE("fixed-window comparison") {
  SimConfig sim;
  const auto rep = compare_fixed_vs_adaptive(sim);
  CHECK(rep.savings_ratio > 0.0);
  CHECK(rep.adaptive_mean_budget < rep.fixed_mean_budget);
  for (const auto& t : rep.fixed_traces) CHECK(t.window == 12);
  // Blocks sample every third frame, so only segment 0 (block at frame 0)
  // lands exactly on a boundary.
  REQUIRE(rep.boundary_window_max.size() == 6);
  CHECK(rep.boundary_window_max[0] == 12);
  for (std::size_t s = 0; s < 6; ++s) {
    int m = 0;
    for (const auto& t : rep.adaptive_traces) {
      if (t.segment_index == static_cast<int>(s)) m = std::max(m, t.window);
    }
    CHECK(rep.boundary_window_max[s] == m);
  }

  // A degenerate config has nothing to save.
  sim.engine.window.w_min = sim.engine.window.w_max;
  CHECK(compare_fixed_vs_adaptive(sim).savings_ratio == 0.0);
}

TEST_CASE("duration sweep scales the schedule") {
  SimConfig sim;
  const auto sweep = duration_sweep(sim, 60.0, {30.0, 60.0, 90.0});
  REQUIRE(sweep.size() == 3);
  CHECK(sweep[0].total_frames == 120);
  CHECK(sweep[1].total_frames == 240);
  CHECK(sweep[2].total_frames == 360);
  CHECK(sweep[1].comparison.savings_ratio == compare_fixed_vs_adaptive(sim).savings_ratio);
  for (const auto& r : sweep) CHECK(r.comparison.savings_ratio > 0.0);
  CHECK_THROWS_AS(duration_sweep(sim, 0.0, {30.0}), ConfigError);
  CHECK_THROWS_AS(duration_sweep(sim, 60.0, {-1.0}), ConfigError);
}

TEST_CASE("sim config validation") {
  SimConfig sim;
  sim.drift_sigma = 0.0;
  CHECK_THROWS_AS(sim.validate(), ConfigError);
  sim = {};
  sim.signature_separation = 2.1;
  CHECK_THROWS_AS(sim.validate(), ConfigError);
}
