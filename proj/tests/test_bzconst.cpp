#include <doctest.h>

#include <numbers>
#include <random>

#include "rpbcs/bzconst.hpp"
#include "rpbcs/errors.hpp"

using namespace rpbcs;

TEST_CASE("dispersion helpers") {
  std::vector<double> zero = {0.0, 0.0, 0.0};
  CHECK(e_p(zero) == 0.0);
  std::vector<double> q = {std::numbers::pi, std::numbers::pi, std::numbers::pi};
  CHECK(e_p(q) == doctest::Approx(6.0).epsilon(1e-14));

  // E_{p+Q} = d (1 - Y(p)) on random points
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> p = {u(rng), u(rng), u(rng)};
    std::vector<double> pq = p;
    for (double& c : pq) c += std::numbers::pi;
    CHECK(e_p(pq) == doctest::Approx(3.0 * (1.0 - y_of_p(p))).epsilon(1e-13));
  }
}

TEST_CASE("finite-grid sums against enumerated references") {
  // frozen values from a direct grid enumeration
  CHECK(i_d_finite(1, 8) == doctest::Approx(1.2824551359246468).epsilon(1e-13));
  CHECK(g_d(1, 4) == doctest::Approx(0.9916698300865068).epsilon(1e-13));
  CHECK(delta_beta(3, 8, 10.0, 1.0) ==
        doctest::Approx(0.00910016512296844).epsilon(1e-12));

  CHECK(i_d_finite(2, 3) >= 0.0);
  CHECK(g_d(3, 2) > 0.0);

  // delta is exactly linear in 1/beta
  const double d1 = delta_beta(2, 3, 1.0, 1.5);
  const double d2 = delta_beta(2, 3, 2.0, 1.5);
  CHECK(d2 == doctest::Approx(d1 / 2.0).epsilon(1e-15));
}

TEST_CASE("parallel kernels match the serial references") {
  CHECK(i_d_finite(3, 4, Exec::Parallel) ==
        doctest::Approx(serial_ref::i_d_finite(3, 4)).epsilon(1e-14));
  CHECK(i_d_finite(3, 4, Exec::Parallel) == i_d_finite(3, 4, Exec::Serial));
  CHECK(g_d(3, 4, Exec::Parallel) ==
        doctest::Approx(serial_ref::g_d(3, 4)).epsilon(1e-14));
  CHECK(delta_beta(3, 4, 2.0, 1.0, Exec::Parallel) ==
        doctest::Approx(serial_ref::delta_beta(3, 4, 2.0, 1.0)).epsilon(1e-14));
  CHECK(i_d_infinite_raw(3, 24, Exec::Parallel) ==
        doctest::Approx(serial_ref::i_d_infinite_raw(3, 24)).epsilon(1e-14));
  CHECK(i_d_infinite_raw(3, 24, Exec::Parallel) ==
        i_d_infinite_raw(3, 24, Exec::Serial));
}

TEST_CASE("momentum integral constants") {
  CHECK_THROWS_AS((void)i_d_infinite(2), NumericalError);

  const auto q3 = i_d_infinite(3);
  CHECK(q3.value == doctest::Approx(0.6809).epsilon(2e-3));
  CHECK(q3.error < 5e-3);
  CHECK(q3.extrapolation_order == 1);

  const auto q4 = i_d_infinite(4);
  // converged reference 0.4450737 from high-resolution midpoint stages
  CHECK(std::abs(q4.value - 0.4450737) < std::max(5e-4, 3.0 * q4.error));

  const auto q5 = i_d_infinite(5);
  CHECK(q5.value < q4.value);
  CHECK(q4.value < q3.value);
}

TEST_CASE("finite boxes converge to the quadrature value from below") {
  const auto q3 = i_d_infinite(3);
  double prev = 0.0;
  std::vector<double> vals;
  for (int L : {4, 8, 16}) {
    const double v = i_d_finite(3, L);
    CHECK(v > prev);
    prev = v;
    vals.push_back(v * v);
  }
  CHECK(prev < q3.value);
  // two-point extrapolation in 1/L of the squared sums
  const double r1 = 2.0 * vals[1] - vals[0];
  const double r2 = 2.0 * vals[2] - vals[1];
  const double limit = std::sqrt(r2);
  const double bar = std::abs(std::sqrt(r2) - std::sqrt(r1));
  CHECK(std::abs(limit - q3.value) < bar + q3.error);
}

TEST_CASE("threefold-average convexity reduction") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  auto fconv = [](double s) { return s * s / (1.0 - s); };
  for (int d : {4, 5}) {
    const int triples = d * (d - 1) * (d - 2) / 6;
    for (int trial = 0; trial < 10000; ++trial) {
      std::vector<double> p(d);
      for (double& c : p) c = u(rng);
      const double yp = std::max(y_of_p(p), 0.0);
      double sum_plus = 0.0, sum_f = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
          for (int k = j + 1; k < d; ++k) {
            const double ys = std::max(y_subset(p, i, j, k), 0.0);
            sum_plus += ys;
            sum_f += fconv(ys);
          }
      CHECK(yp <= sum_plus / triples + 1e-12);
      CHECK(fconv(yp) <= sum_f / triples + 1e-12);
    }
  }
}

TEST_CASE("g_d grows with the box and dominates 1/d at d = 3") {
  double prev = 0.0;
  for (int L : {4, 8, 16}) {
    const double g = g_d(3, L);
    CHECK(g > prev);
    prev = g;
  }
  CHECK(3.0 * prev >= 1.0);
}
