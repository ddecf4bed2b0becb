// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace phasemem {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace phasemem
