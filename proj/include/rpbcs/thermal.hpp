#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>

#include "rpbcs/fock.hpp"
#include "rpbcs/parallel.hpp"

namespace rpbcs {

struct SectorLabel {
  int sz = 0;      // 2*Sz = N_up - N_down
  int parity = 0;  // N mod 2
  auto operator<=>(const SectorLabel&) const = default;
};

struct SectorBlock {
  SectorLabel label;
  std::vector<std::uint32_t> states;  // global basis states, ascending
  Eigen::VectorXd evals;              // ascending
  Eigen::MatrixXcd evecs;             // columns
};

/// Full eigendecomposition of a sector-preserving hermitian operator,
/// blocked by (2Sz, N mod 2).
struct SpectralData {
  std::size_t dim = 0;
  std::vector<SectorBlock> blocks;  // ordered by label
  double e0 = 0.0;
  int ground_degeneracy = 0;
  double degeneracy_tol = 0.0;  // 1e-9 * max(1, |e0|)

  /// log Tr e^{-beta H}, evaluated on the shifted spectrum (cached).
  double log_partition(double beta) const;

  /// Sector-blocked matrix of an observable in the eigenbasis; requires the
  /// observable to preserve the sectors.
  std::vector<Eigen::MatrixXcd> transform(const OperatorMatrix& a) const;

 private:
  mutable std::map<double, double> partition_cache_;
};

SpectralData diagonalize(const OperatorMatrix& h, const FockBasis& b,
                         std::size_t dense_cap = kDefaultDenseCap);

Complex thermal_expectation(const SpectralData& sd, const OperatorMatrix& a,
                            double beta, Exec exec = Exec::Parallel);

/// Duhamel two-point function (A, B) = Z^{-1} ∫_0^1 ds Tr e^{-sβH} A
/// e^{-(1-s)βH} B, by the spectral double sum. A and B must preserve the
/// sectors.
Complex duhamel(const SpectralData& sd, const OperatorMatrix& a,
                const OperatorMatrix& bop, double beta,
                Exec exec = Exec::Parallel);

/// Integrated Boltzmann kernel (e^{-βe_m} - e^{-βe_n}) / (β (e_n - e_m)) with
/// the degenerate limit e^{-βe_m}; exposed for the continuity test.
double duhamel_weight(double em, double en, double beta);

struct GbcValues {
  double g_p = 0.0;  // symmetrized two-point function
  double b_p = 0.0;  // Duhamel value
  double c_p = 0.0;  // double-commutator expectation
};

/// (g_p, b_p, c_p) at dual-grid momentum k for the Hamiltonian h used to
/// build `sd`.
GbcValues gbc_at_p(const SpectralData& sd, const FockBasis& b,
                   const LatticeSpec& lat, const OperatorMatrix& h,
                   std::span<const int> k, double beta);

/// Long-range order sqrt(<Γ̂_Q Γ̂_Q>)/sqrt(|Λ|) at the staggered momentum.
double lro(const SpectralData& sd, const FockBasis& b, const LatticeSpec& lat,
           double beta);

/// Uniform average over the ground sector (eigenvalues within the
/// degeneracy tolerance of E0).
Complex ground_expectation(const SpectralData& sd, const OperatorMatrix& a);

/// Excitation energy of the filtered trial state:
/// ω(A† Ȟ^{1+ε} A) / ω(A† Ȟ^ε A) with Ȟ = H - E0 and 0^0 := 1 on the
/// ground sector.
double trial_energy(const SpectralData& sd, const OperatorMatrix& a_r,
                    double epsilon);

/// χ(Ȟ)·A via spectral calculus for a pointwise weight χ.
OperatorMatrix spectral_filter(const SpectralData& sd, const OperatorMatrix& a,
                               const std::function<double(double)>& chi);

/// Smooth bump supported on (lo, hi): exp(-1/(t(1-t))) rescaled.
std::function<double(double)> bump_window(double lo, double hi);

struct MeanEnergies {
  double e1 = 0.0;           // -(1/2|Λ|) Σ_x <Γ1_x Γ1_{x±e1}>
  double e_mean = 0.0;       // <H>/|Λ|
  double free_energy = 0.0;  // -(β|Λ|)^{-1} log Z   (β > 0)
  double entropy = 0.0;      // β (e_mean - free_energy) per site
};

MeanEnergies mean_energies(const SpectralData& sd, const FockBasis& b,
                           const LatticeSpec& lat, const OperatorMatrix& h,
                           double beta);

namespace serial_ref {
/// Naive single-threaded references for the spectral double sums; kept for
/// testing the parallel kernels and for the benchmark.
Complex thermal_expectation(const SpectralData& sd, const OperatorMatrix& a,
                            double beta);
Complex duhamel(const SpectralData& sd, const OperatorMatrix& a,
                const OperatorMatrix& bop, double beta);
}  // namespace serial_ref

}  // namespace rpbcs
