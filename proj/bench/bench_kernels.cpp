// Compares the OpenMP kernels against the serial reference implementations:
// wall time and agreement for the momentum-sum quadratures and the spectral
// double sums.

#include <chrono>
#include <cstdio>

#include "rpbcs/bzconst.hpp"
#include "rpbcs/hamiltonian.hpp"
#include "rpbcs/thermal.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <class F>
std::pair<double, double> timed(F&& f) {
  const auto t0 = Clock::now();
  const double v = f();
  const auto t1 = Clock::now();
  return {v, seconds(t0, t1)};
}

void row(const char* name, double serial_s, double parallel_s, double diff) {
  std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  |diff| %.3e\n",
              name, serial_s, parallel_s, serial_s / parallel_s, diff);
}

}  // namespace

int main() {
  rpbcs::apply_thread_env();
  std::printf("threads: %d\n", rpbcs::max_threads());

  {
    const auto [vs, ts] =
        timed([] { return rpbcs::serial_ref::i_d_infinite_raw(3, 128); });
    const auto [vp, tp] =
        timed([] { return rpbcs::i_d_infinite_raw(3, 128, rpbcs::Exec::Parallel); });
    row("bz quadrature d=3 N=128", ts, tp, std::abs(vs - vp));
  }
  {
    const auto [vs, ts] =
        timed([] { return rpbcs::serial_ref::i_d_infinite_raw(4, 96); });
    const auto [vp, tp] =
        timed([] { return rpbcs::i_d_infinite_raw(4, 96, rpbcs::Exec::Parallel); });
    row("bz quadrature d=4 N=96", ts, tp, std::abs(vs - vp));
  }
  {
    const auto [vs, ts] = timed([] { return rpbcs::serial_ref::i_d_finite(3, 24); });
    const auto [vp, tp] =
        timed([] { return rpbcs::i_d_finite(3, 24, rpbcs::Exec::Parallel); });
    row("lattice sum d=3 L=24", ts, tp, std::abs(vs - vp));
  }

  {
    // spectral double sum on the largest desk-scale lattice
    const auto lat = rpbcs::build_lattice(1, 3);
    const auto basis = rpbcs::build_basis(lat);
    rpbcs::ModelParams mp{0.1, 1.0, 0.2, 0.05, 1.0};
    const auto h = rpbcs::build_full(basis, lat, mp);
    const auto sd = rpbcs::diagonalize(h, basis);
    std::vector<int> q(lat.d, lat.L);
    const auto gq = rpbcs::momentum_gamma(basis, lat, q);
    const auto gqd = rpbcs::adjoint(gq);
    const auto [vs, ts] = timed([&] {
      return rpbcs::serial_ref::duhamel(sd, gq, gqd, 2.0).real();
    });
    const auto [vp, tp] = timed([&] {
      return rpbcs::duhamel(sd, gq, gqd, 2.0, rpbcs::Exec::Parallel).real();
    });
    row("duhamel double sum 4096", ts, tp, std::abs(vs - vp));
  }
  return 0;
}
