#pragma once

#include <span>
#include <vector>

#include "rpbcs/parallel.hpp"

namespace rpbcs {

/// Dual grid p = π k / L with k components in (-L, L]; Q = (π, ..., π) is the
/// k = (L, ..., L) point.
struct BZGrid {
  int d = 0;
  int L = 0;
  std::vector<std::vector<int>> kpoints;

  static BZGrid lattice_grid(int d, int L);
  std::vector<double> momentum(std::span<const int> k) const;
  bool is_q(std::span<const int> k) const;
};

/// E_p = Σ_m (1 - cos p_m).
double e_p(std::span<const double> p);

/// Y(p) = -(1/d) Σ_m cos p_m; E_{p+Q} = d (1 - Y(p)).
double y_of_p(std::span<const double> p);

double y_subset(std::span<const double> p, int i, int j, int k);

/// Finite-box momentum constant
/// sqrt( (1/(d|Λ|)) Σ_{p≠Q} ({-Σ cos p_m}_+)^2 / E_{p+Q} ).
double i_d_finite(int d, int L, Exec exec = Exec::Parallel);

/// One midpoint-rule stage of the infinite-volume integral
/// ∫dp {Y}_+^2/(1-Y) at N points per axis (shifted grid, never hits Q).
double i_d_infinite_raw(int d, int N, Exec exec = Exec::Parallel);

struct QuadratureResult {
  double value = 0.0;  // extrapolated
  double error = 0.0;  // |last - previous extrapolation stage|
  std::vector<int> resolutions;
  std::vector<double> raw;     // per-resolution integral values
  std::vector<double> stages;  // extrapolants
  int extrapolation_order = 1;
};

/// Infinite-volume constant I_d for d >= 3 by midpoint quadrature plus
/// Richardson extrapolation; diverges for d <= 2 (NumericalError). The
/// leading error is the corner cell O(N^{2-d}) against the smooth midpoint
/// O(N^{-2}), so the extrapolation order is 1 for d = 3 and 2 for d >= 4.
QuadratureResult i_d_infinite(int d, Exec exec = Exec::Parallel);

/// G_d = (1/|Λ|) Σ_{p≠Q} 1/sqrt(E_{p+Q}).
double g_d(int d, int L, Exec exec = Exec::Parallel);

/// δ(β) = (1/|Λ|) Σ_{p≠Q} {-Σ cos p_m}_+ / (2 d β g E_{p+Q}); linear in 1/β.
double delta_beta(int d, int L, double beta, double g,
                  Exec exec = Exec::Parallel);

/// δ'(β) = (1/|Λ|) Σ_{p≠Q} 1 / (2 β g E_{p+Q}).
double delta_prime_beta(int d, int L, double beta, double g,
                        Exec exec = Exec::Parallel);

namespace serial_ref {
/// Naive nested-loop references (independent accumulation order); kept for
/// testing the parallel kernels and for the benchmark.
double i_d_finite(int d, int L);
double i_d_infinite_raw(int d, int N);
double g_d(int d, int L);
double delta_beta(int d, int L, double beta, double g);
}  // namespace serial_ref

}  // namespace rpbcs
