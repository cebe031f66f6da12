#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rpbcs {

/// Execution policy for the data-parallel kernels. `Parallel` runs the slab
/// loop under OpenMP; `Serial` runs the identical slab decomposition on one
/// thread, so the two policies produce bit-identical sums.
enum class Exec { Serial, Parallel };

/// Worker count honoring the RPBCS_THREADS environment variable.
int max_threads();

/// Apply the RPBCS_THREADS cap to the OpenMP runtime (used by executables).
void apply_thread_env();

/// Deterministic pairwise reduction; independent of thread scheduling.
double pairwise_sum(std::span<const double> values);

namespace detail {
void run_slabs(std::size_t n_slabs, Exec exec, void* ctx,
               double (*fn)(void*, std::size_t), std::vector<double>& out);
}

/// Evaluate `slab_value(i)` for i in [0, n_slabs), possibly in parallel, and
/// reduce the per-slab partials pairwise in fixed order. The reduction order
/// does not depend on the execution policy.
template <class F>
double slab_sum(std::size_t n_slabs, Exec exec, F&& slab_value) {
  struct Ctx {
    F* f;
  } ctx{&slab_value};
  std::vector<double> partials;
  detail::run_slabs(
      n_slabs, exec, &ctx,
      [](void* c, std::size_t i) { return (*static_cast<Ctx*>(c)->f)(i); },
      partials);
  return pairwise_sum(partials);
}

}  // namespace rpbcs
