// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phasemem::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kIoError = 3,
};

/// Entry point of the `phasemem` command. `args` excludes the program name.
/// Subcommands: simulate, verify, schedule, compare, config.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phasemem::cli
