// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "phasemem/errors.hpp"
#include "phasemem/trace_io.hpp"

using namespace phasemem;

namespace {

std::vector<BlockTrace> sample() {
  BlockTrace a;
  a.block_index = 0;
  a.first_frame = 0;
  a.distance = 40;
  a.window = 12;
  a.read_budget = 0;
  BlockTrace b;
  b.block_index = 1;
  b.first_frame = 3;
  b.segment_index = 5;
  b.age = 3;
  b.window = 11;
  b.read_budget = 4683;
  b.bridge_norm = 1.0 / 3.0;
  b.switch_flag = true;
  b.anchors_count = 4;
  return {a, b};
}

}  // namespace

TEST_CASE("format_g9") {
  CHECK(format_g9(0.0) == "0");
  CHECK(format_g9(1.0 / 3.0) == "0.333333333");
  CHECK(format_g9(3.858) == "3.858");
  CHECK(format_g9(1e-12) == "1e-12");
}

TEST_CASE("csv rows") {
  std::ostringstream os;
  write_trace_csv(os, sample());
  CHECK(os.str() == std::string(kTraceCsvHeader) +
                        "\n0,0,0,0,40,12,0,0,false,0\n1,3,5,3,,11,4683,0.333333333,true,4\n");
}

TEST_CASE("json rows") {
  std::ostringstream os;
  write_trace_json(os, sample());
  const auto doc = nlohmann::json::parse(os.str());
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["distance"] == 40);
  CHECK(doc[1]["distance"].is_null());
  CHECK(doc[1]["switch_flag"] == true);
  CHECK(doc[1]["bridge_norm"].get<double>() == doctest::Approx(1.0 / 3.0));
  // Keys follow the CSV column order.
  std::string keys;
  const auto ordered = nlohmann::ordered_json::parse(os.str());
  for (const auto& [k, _] : ordered[0].items()) {
    keys += (keys.empty() ? "" : ",") + k;
  }
  CHECK(keys == kTraceCsvHeader);
}

TEST_CASE("format parsing and file errors") {
  CHECK(parse_trace_format("csv") == TraceFormat::kCsv);
  CHECK(parse_trace_format("json") == TraceFormat::kJson);
  CHECK_THROWS_AS(parse_trace_format("xml"), ConfigError);
  CHECK_THROWS_AS(write_trace_file("/nonexistent/dir/trace.csv", sample(), TraceFormat::kCsv),
                  IoError);
}

TEST_CASE("report json") {
  std::vector<BlockTrace> tr = sample();
  const auto doc = nlohmann::json::parse(report_json(budget_report(tr)));
  CHECK(doc["blocks"] == 2);
  CHECK(doc["max_read_budget"] == 4683);
  std::ostringstream os;
  write_report_text(os, budget_report(tr));
  CHECK_FALSE(os.str().empty());
}
