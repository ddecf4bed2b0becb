// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/config_io.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "phasemem/errors.hpp"

namespace phasemem {
namespace {

using json = nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& prefix,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError("expected an object", prefix.empty() ? "config" : prefix);
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key", join(prefix, key));
  }
}

template <typename T>
void read(const json& obj, const std::string& prefix, const char* key, T& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  const std::string path = join(prefix, key);
  if constexpr (std::is_same_v<T, bool>) {
    if (!it->is_boolean()) throw ConfigError("expected a boolean", path);
    out = it->get<bool>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!it->is_number_integer()) throw ConfigError("expected an integer", path);
    if (it->is_number_unsigned()) {
      const auto v = it->get<std::uint64_t>();
      if (v > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) {
        throw ConfigError("integer out of range", path);
      }
      out = static_cast<T>(v);
    } else {
      const auto v = it->get<std::int64_t>();
      if constexpr (std::is_unsigned_v<T>) {
        if (v < 0) throw ConfigError("must not be negative", path);
      } else {
        if (v < static_cast<std::int64_t>(std::numeric_limits<T>::min()) ||
            v > static_cast<std::int64_t>(std::numeric_limits<T>::max())) {
          throw ConfigError("integer out of range", path);
        }
      }
      out = static_cast<T>(v);
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!it->is_number()) throw ConfigError("expected a number", path);
    out = it->get<double>();
  } else {
    if (!it->is_string()) throw ConfigError("expected a string", path);
    out = it->get<std::string>();
  }
}

// Leaf names used by validate() mapped to their document paths.
const std::map<std::string, std::string, std::less<>>& key_paths() {
  static const std::map<std::string, std::string, std::less<>> m = {
      {"layers", "engine.layers"},
      {"heads", "engine.heads"},
      {"value_dim", "engine.value_dim"},
      {"frames_per_block", "engine.frames_per_block"},
      {"sink_frames", "engine.sink_frames"},
      {"tokens_per_frame", "engine.tokens_per_frame"},
      {"bridge_lambda", "engine.bridge_lambda"},
      {"bridge_schedule", "engine.bridge_schedule"},
      {"eps_stabilized", "engine.eps_stabilized"},
      {"bridge_prune_tol", "engine.bridge_prune_tol"},
      {"w_min", "engine.window.w_min"},
      {"w_max", "engine.window.w_max"},
      {"tau_post", "engine.window.tau_post"},
      {"tau_pre", "engine.window.tau_pre"},
      {"phase_unit", "engine.window.phase_unit"},
      {"alpha", "engine.anchors.alpha"},
      {"recent_frames", "engine.anchors.recent_frames"},
      {"max_anchors", "engine.anchors.max_anchors"},
      {"injection_scale", "engine.anchors.injection_scale"},
      {"boundaries", "schedule.boundaries"},
      {"total_frames", "schedule.total_frames"},
  };
  return m;
}

[[noreturn]] void rethrow_with_path(const ConfigError& e) {
  const auto& m = key_paths();
  const auto it = m.find(e.key());
  if (it == m.end()) throw e;
  std::string what = e.what();
  const std::string prefix = e.key() + ": ";
  if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
  throw ConfigError(what, it->second);
}

void read_window(const json& j, WindowConfig& w) {
  const std::string p = "engine.window";
  reject_unknown(j, p, {"w_min", "w_max", "tau_post", "tau_pre", "phase_unit"});
  read(j, p, "w_min", w.w_min);
  read(j, p, "w_max", w.w_max);
  read(j, p, "tau_post", w.tau_post);
  read(j, p, "tau_pre", w.tau_pre);
  std::string unit(to_string(w.phase_unit));
  read(j, p, "phase_unit", unit);
  w.phase_unit = parse_phase_unit(unit);
}

void read_anchors(const json& j, AnchorConfig& a) {
  const std::string p = "engine.anchors";
  reject_unknown(j, p, {"alpha", "recent_frames", "max_anchors", "injection_scale"});
  read(j, p, "alpha", a.alpha);
  read(j, p, "recent_frames", a.recent_frames);
  read(j, p, "max_anchors", a.max_anchors);
  read(j, p, "injection_scale", a.injection_scale);
}

void read_engine(const json& j, EngineConfig& e) {
  const std::string p = "engine";
  reject_unknown(j, p,
                 {"layers", "heads", "value_dim", "frames_per_block", "sink_frames", "window",
                  "anchors", "bridge_lambda", "bridge_schedule", "eps_stabilized",
                  "tokens_per_frame", "bridge_prune_tol"});
  read(j, p, "layers", e.layers);
  read(j, p, "heads", e.heads);
  read(j, p, "value_dim", e.value_dim);
  read(j, p, "frames_per_block", e.frames_per_block);
  read(j, p, "sink_frames", e.sink_frames);
  if (auto it = j.find("window"); it != j.end()) read_window(*it, e.window);
  if (auto it = j.find("anchors"); it != j.end()) read_anchors(*it, e.anchors);
  read(j, p, "bridge_lambda", e.bridge_lambda);
  std::string sched(to_string(e.bridge_schedule));
  read(j, p, "bridge_schedule", sched);
  e.bridge_schedule = parse_injection_schedule(sched);
  read(j, p, "eps_stabilized", e.eps_stabilized);
  read(j, p, "tokens_per_frame", e.tokens_per_frame);
  read(j, p, "bridge_prune_tol", e.bridge_prune_tol);
}

PromptSchedule read_schedule(const json& j, const PromptSchedule& defaults) {
  const std::string p = "schedule";
  reject_unknown(j, p, {"boundaries", "total_frames"});
  std::vector<std::int64_t> boundaries = defaults.boundaries();
  std::int64_t total = defaults.total_frames();
  if (auto it = j.find("boundaries"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("expected an array of integers", "schedule.boundaries");
    boundaries.clear();
    for (const auto& b : *it) {
      if (!b.is_number_integer()) {
        throw ConfigError("expected an array of integers", "schedule.boundaries");
      }
      boundaries.push_back(b.get<std::int64_t>());
    }
  }
  read(j, p, "total_frames", total);
  return PromptSchedule(std::move(boundaries), total);
}

}  // namespace

SimConfig parse_sim_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what(), "config");
  }
  SimConfig cfg;
  try {
    reject_unknown(doc, "", {"seed", "drift_sigma", "signature_separation", "schedule", "engine"});
    read(doc, "", "seed", cfg.seed);
    read(doc, "", "drift_sigma", cfg.drift_sigma);
    read(doc, "", "signature_separation", cfg.signature_separation);
    if (auto it = doc.find("engine"); it != doc.end()) read_engine(*it, cfg.engine);
    if (auto it = doc.find("schedule"); it != doc.end()) {
      cfg.schedule = read_schedule(*it, cfg.schedule);
    }
    cfg.validate();
  } catch (const ConfigError& e) {
    rethrow_with_path(e);
  }
  return cfg;
}

SimConfig load_sim_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string(), "config");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sim_config(ss.str());
}

std::string dump_sim_config(const SimConfig& c) {
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["drift_sigma"] = c.drift_sigma;
  j["signature_separation"] = c.signature_separation;
  j["schedule"]["boundaries"] = c.schedule.boundaries();
  j["schedule"]["total_frames"] = c.schedule.total_frames();
  auto& e = j["engine"];
  e["layers"] = c.engine.layers;
  e["heads"] = c.engine.heads;
  e["value_dim"] = c.engine.value_dim;
  e["frames_per_block"] = c.engine.frames_per_block;
  e["sink_frames"] = c.engine.sink_frames;
  e["window"]["w_min"] = c.engine.window.w_min;
  e["window"]["w_max"] = c.engine.window.w_max;
  e["window"]["tau_post"] = c.engine.window.tau_post;
  e["window"]["tau_pre"] = c.engine.window.tau_pre;
  e["window"]["phase_unit"] = std::string(to_string(c.engine.window.phase_unit));
  e["anchors"]["alpha"] = c.engine.anchors.alpha;
  e["anchors"]["recent_frames"] = c.engine.anchors.recent_frames;
  e["anchors"]["max_anchors"] = c.engine.anchors.max_anchors;
  e["anchors"]["injection_scale"] = c.engine.anchors.injection_scale;
  e["bridge_lambda"] = c.engine.bridge_lambda;
  e["bridge_schedule"] = std::string(to_string(c.engine.bridge_schedule));
  e["eps_stabilized"] = c.engine.eps_stabilized;
  e["tokens_per_frame"] = c.engine.tokens_per_frame;
  e["bridge_prune_tol"] = c.engine.bridge_prune_tol;
  return j.dump(2) + "\n";
}

}  // namespace phasemem
