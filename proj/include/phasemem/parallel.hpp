// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#ifdef PHASEMEM_OMP
#include <omp.h>
#define PHASEMEM_OMP_PRAGMA(content) _Pragma(content)
#else
#define PHASEMEM_OMP_PRAGMA(content)
#endif

namespace phasemem {

/// Which kernel variant to run. The serial path is the reference the
/// parallel kernels are tested against; both must produce identical bits.
enum class Execution { kSerial, kParallel };

inline int max_threads() {
#ifdef PHASEMEM_OMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace phasemem

#include <cstddef>
#include <cstdint>

namespace phasemem {

/// Runs fn(i) for i in [0, n). Under kParallel the iterations are spread over
/// OpenMP threads; fn must touch only state owned by index i.
template <typename Fn>
void for_each_index(std::size_t n, Execution exec, Fn&& fn) {
  const auto count = static_cast<std::int64_t>(n);
  if (exec == Execution::kParallel) {
    PHASEMEM_OMP_PRAGMA("omp parallel for schedule(static)")
    for (std::int64_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
  }
}

}  // namespace phasemem
