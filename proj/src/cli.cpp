// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "phasemem/config_io.hpp"
#include "phasemem/errors.hpp"
#include "phasemem/projection.hpp"
#include "phasemem/rollout_sim.hpp"
#include "phasemem/trace_io.hpp"
#include "phasemem/verify_suite.hpp"
#include "phasemem/version.hpp"

namespace phasemem::cli {
namespace {

SimConfig load_or_default(const std::string& path) {
  return path.empty() ? SimConfig{} : load_sim_config(path);
}

// Writes through `fn` into `path`, or into `fallback` when path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path + " for writing");
  fn(os);
  os.flush();
  if (!os) throw IoError("failed writing " + path);
}

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
  std::string injection;
  bool fixed_window = false;
  std::string summary_json;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  SimConfig cfg = load_or_default(a.config);
  if (a.seed) cfg.seed = *a.seed;
  if (!a.injection.empty()) cfg.engine.bridge_schedule = parse_injection_schedule(a.injection);
  if (a.fixed_window) cfg.engine.window.w_min = cfg.engine.window.w_max;
  const TraceFormat format = parse_trace_format(a.format);

  const RunResult res = run(cfg);
  emit(a.out, out, [&](std::ostream& os) { write_trace(os, res.traces, format); });
  std::ostream& summary = a.out.empty() ? err : out;
  write_report_text(summary, res.report);
  if (!a.summary_json.empty()) {
    emit(a.summary_json, out, [&](std::ostream& os) { os << report_json(res.report); });
  }
  return kOk;
}

struct VerifyArgs {
  int cases = 1000;
  std::uint64_t seed = 7;
  std::vector<int> dims{2, 3, 8, 32};
  bool serial = false;
  std::string fault;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  VerifyOptions opts;
  opts.cases = a.cases;
  opts.seed = a.seed;
  opts.dims = a.dims;
  opts.execution = a.serial ? Execution::kSerial : Execution::kParallel;
  if (a.fault == "sign_flip") {
    opts.projection = faulty_projection_sign_flip;
  } else if (!a.fault.empty()) {
    throw ConfigError("unknown fault '" + a.fault + "'", "fault");
  }
  const VerifyReport rep = run_verification(opts);

  char line[160];
  std::snprintf(line, sizeof line, "%-20s %5s %7s %9s %14s  %s\n", "check", "dim", "cases",
                "failures", "worst_margin", "status");
  out << line;
  for (const auto& c : rep.checks) {
    std::snprintf(line, sizeof line, "%-20s %5d %7d %9d %14.3e  %s\n", c.name.c_str(), c.dim,
                  c.cases, c.failures, c.worst, c.passed() ? "PASS" : "FAIL");
    out << line;
  }
  if (rep.all_passed()) return kOk;
  for (const auto& c : rep.checks) {
    if (!c.passed()) {
      err << "FAIL " << c.name << " dim=" << c.dim << " first failing case seed=" << c.first_failing_seed
          << '\n';
    }
  }
  return kVerificationFailed;
}

struct ScheduleArgs {
  std::string config;
  std::string out;
};

int cmd_schedule(const ScheduleArgs& a, std::ostream& out) {
  const SimConfig cfg = load_or_default(a.config);
  const auto rows = phase_table(cfg.schedule, cfg.engine.window, cfg.engine.frames_per_block);
  emit(a.out, out, [&](std::ostream& os) { write_schedule_csv(os, rows); });
  return kOk;
}

struct CompareArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::vector<double> durations;
  double base_seconds = 60.0;
  std::string json_out;
};

nlohmann::ordered_json comparison_json(const ComparisonReport& r) {
  nlohmann::ordered_json j;
  j["adaptive_mean_budget"] = r.adaptive_mean_budget;
  j["fixed_mean_budget"] = r.fixed_mean_budget;
  j["savings_ratio"] = r.savings_ratio;
  auto segs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.adaptive_segments.size(); ++i) {
    nlohmann::ordered_json s;
    s["segment_index"] = r.adaptive_segments[i].segment_index;
    s["adaptive_mean_budget"] = r.adaptive_segments[i].mean_budget;
    s["fixed_mean_budget"] = r.fixed_segments[i].mean_budget;
    s["max_window"] = r.boundary_window_max[i];
    segs.push_back(std::move(s));
  }
  j["segments"] = std::move(segs);
  return j;
}

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  SimConfig cfg = load_or_default(a.config);
  if (a.seed) cfg.seed = *a.seed;

  std::vector<DurationReport> reports;
  if (a.durations.empty()) {
    reports.push_back(DurationReport{a.base_seconds, cfg.schedule.total_frames(),
                                     compare_fixed_vs_adaptive(cfg)});
  } else {
    reports = duration_sweep(cfg, a.base_seconds, a.durations);
  }

  out << "seconds  frames  adaptive_mean_budget  fixed_mean_budget  savings_ratio\n";
  auto all = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    char line[160];
    std::snprintf(line, sizeof line, "%7s  %6lld  %20s  %17s  %13s\n", format_g9(r.seconds).c_str(),
                  static_cast<long long>(r.total_frames),
                  format_g9(r.comparison.adaptive_mean_budget).c_str(),
                  format_g9(r.comparison.fixed_mean_budget).c_str(),
                  format_g9(r.comparison.savings_ratio).c_str());
    out << line;
    nlohmann::ordered_json j;
    j["seconds"] = r.seconds;
    j["total_frames"] = r.total_frames;
    j["comparison"] = comparison_json(r.comparison);
    all.push_back(std::move(j));
  }
  if (!a.json_out.empty()) {
    emit(a.json_out, out, [&](std::ostream& os) { os << all.dump(2) << '\n'; });
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured attention memory simulator and verifier", "phasemem"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a seeded rollout and write its block trace");
  simulate->add_option("config", sim.config, "JSON config file (defaults when omitted)");
  simulate->add_option("--seed", sim.seed, "Override the config seed");
  simulate->add_option("--out", sim.out, "Trace output path (stdout when omitted)");
  simulate->add_option("--format", sim.format, "Trace format")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--injection", sim.injection, "Bridge schedule override")
      ->check(CLI::IsMember({"one_shot", "constant", "decayed"}));
  simulate->add_flag("--fixed-window", sim.fixed_window, "Pin the window at w_max");
  simulate->add_option("--summary-json", sim.summary_json, "Also write the budget summary as JSON");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run the projection property and oracle suite");
  verify->add_option("--cases", ver.cases, "Cases per dimension")->check(CLI::PositiveNumber);
  verify->add_option("--seed", ver.seed, "Suite seed");
  verify->add_option("--dims", ver.dims, "Comma-separated dimensions")
      ->delimiter(',')
      ->check(CLI::Range(2, 64));
  verify->add_flag("--serial", ver.serial, "Use the serial reference loop");
  verify->add_option("--fault", ver.fault, "Negative control: sign_flip")->group("");

  ScheduleArgs sch;
  auto* schedule = app.add_subcommand("schedule", "Dump the per-frame phase and window table");
  schedule->add_option("config", sch.config, "JSON config file (defaults when omitted)");
  schedule->add_option("--out", sch.out, "Output path (stdout when omitted)");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Adaptive vs fixed-window read budgets");
  compare->add_option("config", cmp.config, "JSON config file (defaults when omitted)");
  compare->add_option("--seed", cmp.seed, "Override the config seed");
  compare->add_option("--durations", cmp.durations, "Comma-separated target durations in seconds")
      ->delimiter(',');
  compare->add_option("--base-seconds", cmp.base_seconds, "Duration the config schedule represents")
      ->check(CLI::PositiveNumber);
  compare->add_option("--json", cmp.json_out, "Also write the reports as JSON");

  auto* config = app.add_subcommand("config", "Print the default config document");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*simulate) return cmd_simulate(sim, out, err);
    if (*verify) return cmd_verify(ver, out, err);
    if (*schedule) return cmd_schedule(sch, out);
    if (*compare) return cmd_compare(cmp, out);
    if (*config) {
      out << dump_sim_config(SimConfig{});
      return kOk;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace phasemem::cli
