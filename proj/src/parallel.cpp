#include "rpbcs/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace rpbcs {

int max_threads() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("RPBCS_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

void apply_thread_env() { omp_set_num_threads(max_threads()); }

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.subspan(0, half)) +
         pairwise_sum(values.subspan(half));
}

namespace detail {

void run_slabs(std::size_t n_slabs, Exec exec, void* ctx,
               double (*fn)(void*, std::size_t), std::vector<double>& out) {
  out.assign(n_slabs, 0.0);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_slabs); ++i)
      out[static_cast<std::size_t>(i)] = fn(ctx, static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n_slabs; ++i) out[i] = fn(ctx, i);
  }
}

}  // namespace detail
}  // namespace rpbcs
