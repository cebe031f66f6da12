#include "rpbcs/bzconst.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rpbcs/errors.hpp"

namespace rpbcs {

namespace {

// odometer over (d-1) inner axes of size n each; returns sum of table values
// plus `base`, feeding the innermost axis to `accum`
template <class F>
double inner_sum(int inner_axes, int n, const std::vector<double>& table,
                 double base, F&& accum) {
  std::vector<int> idx(inner_axes, 0);
  double total = 0.0;
  for (;;) {
    double partial = base;
    for (int a = 0; a < inner_axes; ++a) partial += table[idx[a]];
    total += accum(partial);
    int a = inner_axes - 1;
    for (; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
    if (a < 0) break;
  }
  return total;
}

std::vector<double> midpoint_cos(int N) {
  std::vector<double> c(N);
  for (int j = 0; j < N; ++j)
    c[j] = std::cos(-std::numbers::pi + (j + 0.5) * 2.0 * std::numbers::pi / N);
  return c;
}

std::vector<double> lattice_cos(int L) {
  std::vector<double> c(2 * L);
  for (int j = 0; j < 2 * L; ++j) {
    const int k = j - L + 1;  // k in (-L, L]
    c[j] = std::cos(std::numbers::pi * k / L);
  }
  return c;
}

// integrand of the I_d integral as a function of S = Σ cos p_m
double i_integrand(double s, int d) {
  if (s >= 0.0) return 0.0;
  const double y = -s / d;
  if (y >= 1.0) return 0.0;  // the exact corner; excluded grids never hit it
  return y * y / (1.0 - y);
}

struct LatticeSum {
  int d, L;
  std::vector<double> cosv;
  // `kind` selects the summand from S = Σ cos and E = E_{p+Q} = d + S
};

template <class F>
double lattice_grid_sum(int d, int L, Exec exec, F&& summand) {
  // slab over the first axis; odometer over the rest; skip p = Q exactly
  const auto cosv = lattice_cos(L);
  const int n = 2 * L;
  const int qj = 2 * L - 1;  // index of k = L
  return slab_sum(static_cast<std::size_t>(n), exec, [&](std::size_t j0) {
    std::vector<int> idx(d - 1, 0);
    double total = 0.0;
    const double c0 = cosv[j0];
    for (;;) {
      double s = c0;
      bool all_q = (static_cast<int>(j0) == qj);
      for (int a = 0; a < d - 1; ++a) {
        s += cosv[idx[a]];
        all_q = all_q && (idx[a] == qj);
      }
      if (!all_q) total += summand(s);
      if (d == 1) break;
      int a = d - 2;
      for (; a >= 0; --a) {
        if (++idx[a] < n) break;
        idx[a] = 0;
      }
      if (a < 0) break;
    }
    return total;
  });
}

}  // namespace

BZGrid BZGrid::lattice_grid(int d, int L) {
  if (d < 1 || L < 1) throw ConfigError("grid needs d >= 1 and L >= 1");
  BZGrid g;
  g.d = d;
  g.L = L;
  const long long total = static_cast<long long>(std::pow(2.0 * L, d) + 0.5);
  g.kpoints.reserve(total);
  std::vector<int> k(d, -L + 1);
  for (long long i = 0; i < total; ++i) {
    g.kpoints.push_back(k);
    for (int m = d - 1; m >= 0; --m) {
      if (++k[m] <= L) break;
      k[m] = -L + 1;
    }
  }
  return g;
}

std::vector<double> BZGrid::momentum(std::span<const int> k) const {
  std::vector<double> p(d);
  for (int m = 0; m < d; ++m) p[m] = std::numbers::pi * k[m] / L;
  return p;
}

bool BZGrid::is_q(std::span<const int> k) const {
  for (int m = 0; m < d; ++m)
    if (k[m] != L) return false;
  return true;
}

double e_p(std::span<const double> p) {
  double e = 0.0;
  for (double pm : p) e += 1.0 - std::cos(pm);
  return e;
}

double y_of_p(std::span<const double> p) {
  double s = 0.0;
  for (double pm : p) s += std::cos(pm);
  return -s / static_cast<double>(p.size());
}

double y_subset(std::span<const double> p, int i, int j, int k) {
  return -(std::cos(p[i]) + std::cos(p[j]) + std::cos(p[k])) / 3.0;
}

double i_d_finite(int d, int L, Exec exec) {
  if (d < 1 || L < 1) throw ConfigError("i_d_finite needs d >= 1 and L >= 1");
  const double vol = std::pow(2.0 * L, d);
  const double sum = lattice_grid_sum(d, L, exec, [&](double s) {
    const double plus = std::max(-s, 0.0);
    const double epq = d + s;              // E_{p+Q}
    if (plus == 0.0) return 0.0;
    return plus * plus / epq;
  });
  return std::sqrt(sum / (d * vol));
}

double i_d_infinite_raw(int d, int N, Exec exec) {
  const auto cosv = midpoint_cos(N);
  const double sum = slab_sum(static_cast<std::size_t>(N), exec, [&](std::size_t j0) {
    return inner_sum(d - 1, N, cosv, cosv[j0],
                     [&](double s) { return i_integrand(s, d); });
  });
  return sum / std::pow(static_cast<double>(N), d);
}

QuadratureResult i_d_infinite(int d, Exec exec) {
  if (d <= 2)
    throw NumericalError(
        "the momentum integral for I_d diverges for d <= 2: the integrand "
        "grows like |q|^-2 at the corner and the volume element only "
        "supplies |q|^{d-1}");
  QuadratureResult qr;
  qr.resolutions = (d <= 4) ? std::vector<int>{32, 64, 128}
                            : std::vector<int>{16, 24, 32};
  qr.extrapolation_order = (d == 3) ? 1 : 2;
  for (int N : qr.resolutions) qr.raw.push_back(i_d_infinite_raw(d, N, exec));
  const double q = qr.extrapolation_order;
  for (std::size_t i = 0; i + 1 < qr.raw.size(); ++i) {
    const double n1 = std::pow(qr.resolutions[i], q);
    const double n2 = std::pow(qr.resolutions[i + 1], q);
    qr.stages.push_back((n2 * qr.raw[i + 1] - n1 * qr.raw[i]) / (n2 - n1));
  }
  const double i2 = qr.stages.back();
  qr.value = std::sqrt(std::max(0.0, i2));
  const double prev = std::sqrt(std::max(0.0, qr.stages[qr.stages.size() - 2]));
  qr.error = std::abs(qr.value - prev);
  return qr;
}

double g_d(int d, int L, Exec exec) {
  if (d < 1 || L < 1) throw ConfigError("g_d needs d >= 1 and L >= 1");
  const double vol = std::pow(2.0 * L, d);
  const double sum = lattice_grid_sum(
      d, L, exec, [&](double s) { return 1.0 / std::sqrt(d + s); });
  return sum / vol;
}

double delta_beta(int d, int L, double beta, double g, Exec exec) {
  if (beta <= 0.0 || g <= 0.0) throw ConfigError("delta(beta) needs beta, g > 0");
  const double vol = std::pow(2.0 * L, d);
  const double sum = lattice_grid_sum(d, L, exec, [&](double s) {
    const double plus = std::max(-s, 0.0);
    if (plus == 0.0) return 0.0;
    return plus / (2.0 * d * beta * g * (d + s));
  });
  return sum / vol;
}

double delta_prime_beta(int d, int L, double beta, double g, Exec exec) {
  if (beta <= 0.0 || g <= 0.0) throw ConfigError("delta'(beta) needs beta, g > 0");
  const double vol = std::pow(2.0 * L, d);
  const double sum = lattice_grid_sum(
      d, L, exec, [&](double s) { return 1.0 / (2.0 * beta * g * (d + s)); });
  return sum / vol;
}

namespace serial_ref {

double i_d_finite(int d, int L) {
  const auto grid = BZGrid::lattice_grid(d, L);
  double sum = 0.0;
  for (const auto& k : grid.kpoints) {
    if (grid.is_q(k)) continue;
    const auto p = grid.momentum(k);
    double s = 0.0;
    for (double pm : p) s += std::cos(pm);
    const double plus = std::max(-s, 0.0);
    sum += plus * plus / (d + s);
  }
  return std::sqrt(sum / (d * std::pow(2.0 * L, d)));
}

double i_d_infinite_raw(int d, int N) {
  std::vector<int> idx(d, 0);
  std::vector<double> cosv(N);
  for (int j = 0; j < N; ++j)
    cosv[j] =
        std::cos(-std::numbers::pi + (j + 0.5) * 2.0 * std::numbers::pi / N);
  double sum = 0.0;
  for (;;) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += cosv[idx[a]];
    sum += i_integrand(s, d);
    int a = d - 1;
    for (; a >= 0; --a) {
      if (++idx[a] < N) break;
      idx[a] = 0;
    }
    if (a < 0) break;
  }
  return sum / std::pow(static_cast<double>(N), d);
}

double g_d(int d, int L) {
  const auto grid = BZGrid::lattice_grid(d, L);
  double sum = 0.0;
  for (const auto& k : grid.kpoints) {
    if (grid.is_q(k)) continue;
    double s = 0.0;
    for (double pm : grid.momentum(k)) s += std::cos(pm);
    sum += 1.0 / std::sqrt(d + s);
  }
  return sum / std::pow(2.0 * L, d);
}

double delta_beta(int d, int L, double beta, double g) {
  const auto grid = BZGrid::lattice_grid(d, L);
  double sum = 0.0;
  for (const auto& k : grid.kpoints) {
    if (grid.is_q(k)) continue;
    double s = 0.0;
    for (double pm : grid.momentum(k)) s += std::cos(pm);
    const double plus = std::max(-s, 0.0);
    sum += plus / (2.0 * d * beta * g * (d + s));
  }
  return sum / std::pow(2.0 * L, d);
}

}  // namespace serial_ref

}  // namespace rpbcs
