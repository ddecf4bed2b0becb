// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "phasemem/errors.hpp"

namespace phasemem {

TraceFormat parse_trace_format(std::string_view name) {
  if (name == "csv") return TraceFormat::kCsv;
  if (name == "json") return TraceFormat::kJson;
  throw ConfigError("expected csv or json, got '" + std::string(name) + "'", "format");
}

std::string format_g9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void write_trace_csv(std::ostream& os, std::span<const BlockTrace> traces) {
  os << kTraceCsvHeader << '\n';
  for (const auto& t : traces) {
    os << t.block_index << ',' << t.first_frame << ',' << t.segment_index << ',' << t.age << ',';
    if (t.distance) os << *t.distance;
    os << ',' << t.window << ',' << t.read_budget << ',' << format_g9(t.bridge_norm) << ','
       << (t.switch_flag ? "true" : "false") << ',' << t.anchors_count << '\n';
  }
}

void write_trace_json(std::ostream& os, std::span<const BlockTrace> traces) {
  os << "[\n";
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& t = traces[i];
    nlohmann::ordered_json row;
    row["block_index"] = t.block_index;
    row["first_frame"] = t.first_frame;
    row["segment_index"] = t.segment_index;
    row["age"] = t.age;
    row["distance"] = t.distance ? nlohmann::ordered_json(*t.distance) : nlohmann::ordered_json();
    row["window"] = t.window;
    row["read_budget"] = t.read_budget;
    row["bridge_norm"] = t.bridge_norm;
    row["switch_flag"] = t.switch_flag;
    row["anchors_count"] = t.anchors_count;
    os << "  " << row.dump() << (i + 1 < traces.size() ? ",\n" : "\n");
  }
  os << "]\n";
}

void write_trace(std::ostream& os, std::span<const BlockTrace> traces, TraceFormat format) {
  if (format == TraceFormat::kCsv) {
    write_trace_csv(os, traces);
  } else {
    write_trace_json(os, traces);
  }
}

void write_trace_file(const std::filesystem::path& path, std::span<const BlockTrace> traces,
                      TraceFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_trace(out, traces, format);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void write_schedule_csv(std::ostream& os, std::span<const PhaseState> rows) {
  os << kScheduleCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.t << ',' << r.segment_index << ',' << r.age << ',';
    if (r.distance) os << *r.distance;
    os << ',' << format_g9(r.w_post) << ',' << format_g9(r.w_pre) << ',' << format_g9(r.w) << ','
       << r.window << '\n';
  }
}

void write_report_text(std::ostream& os, const BudgetReport& r) {
  os << "blocks            " << r.blocks << '\n'
     << "mean_read_budget  " << format_g9(r.mean_budget) << '\n'
     << "min_read_budget   " << r.min_budget << '\n'
     << "max_read_budget   " << r.max_budget << '\n'
     << "mean_window       " << format_g9(r.mean_window) << '\n'
     << "segment  blocks  mean_budget  mean_window  max_window\n";
  for (const auto& s : r.segments) {
    char line[128];
    std::snprintf(line, sizeof line, "%7d  %6lld  %11s  %11s  %10d\n", s.segment_index,
                  static_cast<long long>(s.blocks), format_g9(s.mean_budget).c_str(),
                  format_g9(s.mean_window).c_str(), s.max_window);
    os << line;
  }
}

std::string report_json(const BudgetReport& r) {
  nlohmann::ordered_json j;
  j["blocks"] = r.blocks;
  j["mean_read_budget"] = r.mean_budget;
  j["min_read_budget"] = r.min_budget;
  j["max_read_budget"] = r.max_budget;
  j["mean_window"] = r.mean_window;
  auto segs = nlohmann::ordered_json::array();
  for (const auto& s : r.segments) {
    nlohmann::ordered_json o;
    o["segment_index"] = s.segment_index;
    o["blocks"] = s.blocks;
    o["mean_read_budget"] = s.mean_budget;
    o["mean_window"] = s.mean_window;
    o["max_window"] = s.max_window;
    segs.push_back(std::move(o));
  }
  j["segments"] = std::move(segs);
  return j.dump(2) + "\n";
}

}  // namespace phasemem
