// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "phasemem/memory_engine.hpp"
#include "phasemem/window_scheduler.hpp"

namespace phasemem {

enum class TraceFormat { kCsv, kJson };

TraceFormat parse_trace_format(std::string_view name);

// printf("%.9g")
std::string format_g9(double x);

inline constexpr std::string_view kTraceCsvHeader =
    "block_index,first_frame,segment_index,age,distance,window,read_budget,bridge_norm,"
    "switch_flag,anchors_count";
inline constexpr std::string_view kScheduleCsvHeader = "t,segment,age,distance,w_post,w_pre,w,window";

/// Header plus one newline-terminated row per block. An absent distance is
/// an empty field; floats carry 9 significant digits.
void write_trace_csv(std::ostream& os, std::span<const BlockTrace> traces);

/// JSON array with one object per block (one per line), keys in CSV column
/// order. An absent distance is null.
void write_trace_json(std::ostream& os, std::span<const BlockTrace> traces);

void write_trace(std::ostream& os, std::span<const BlockTrace> traces, TraceFormat format);

// Throws IoError when the file cannot be written.
void write_trace_file(const std::filesystem::path& path, std::span<const BlockTrace> traces,
                      TraceFormat format);

void write_schedule_csv(std::ostream& os, std::span<const PhaseState> rows);

void write_report_text(std::ostream& os, const BudgetReport& report);
std::string report_json(const BudgetReport& report);

}  // namespace phasemem
