#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crewml::par {

/// Runtime switch for the OpenMP lanes. Defaults to on when compiled with
/// OpenMP; tests flip it to compare against the serial reference.
bool enabled();
void set_enabled(bool on);
int max_threads();

/// Parallel loop over [0, n). The body must only write to its own index's
/// slots so results do not depend on the schedule.
template <typename F>
void parallel_for(std::int64_t n, F&& body) {
#ifdef _OPENMP
  if (enabled() && n > 1) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

/// Sum of term(i) for i in [0, n) with a fixed association order:
/// per-block partials (blocks of `block` consecutive indices) combined in
/// block order. Bit-identical for any thread count, including serial.
template <typename F>
double block_sum(std::int64_t n, F&& term, std::int64_t block = 2048) {
  if (n <= 0) return 0.0;
  std::int64_t n_blocks = (n + block - 1) / block;
  std::vector<double> partial(static_cast<std::size_t>(n_blocks), 0.0);
  parallel_for(n_blocks, [&](std::int64_t b) {
    std::int64_t lo = b * block;
    std::int64_t hi = lo + block < n ? lo + block : n;
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(b)] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace crewml::par
