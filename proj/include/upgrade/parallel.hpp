#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace upgrade::par {

/// Execution mode for the data-parallel loops in the solvers and sweeps.
/// `Serial` is the reference path; `OpenMp` distributes loop iterations
/// over threads. Both paths write results into index-addressed slots and
/// merge serially afterwards, so the outputs are bit-identical.
enum class Mode { Serial, OpenMp };

inline Mode& mode() {
#ifdef _OPENMP
  static Mode m = Mode::OpenMp;
#else
  static Mode m = Mode::Serial;
#endif
  return m;
}

/// Runs body(i) for i in [0, count). Iterations must be independent.
template <typename Body>
void for_each_index(std::size_t count, Body&& body) {
#ifdef _OPENMP
  if (mode() == Mode::OpenMp && count > 1) {
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < n; ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  for (std::size_t i = 0; i < count; ++i) {
    body(i);
  }
}

}  // namespace upgrade::par
