#include "rpbcs/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "rpbcs/errors.hpp"

namespace rpbcs {

namespace {

constexpr double kDegenerateGap = 1e-12;

std::vector<SectorBlock> sector_partition(const FockBasis& b) {
  std::map<SectorLabel, std::vector<std::uint32_t>> groups;
  for (std::uint64_t n = 0; n < b.dim; ++n) {
    const auto [sz, parity] = b.sector_of(n);
    groups[{sz, parity}].push_back(static_cast<std::uint32_t>(n));
  }
  std::vector<SectorBlock> blocks;
  blocks.reserve(groups.size());
  for (auto& [label, states] : groups) {
    SectorBlock blk;
    blk.label = label;
    blk.states = std::move(states);
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

Eigen::MatrixXcd extract_block(const SpMat& m,
                               const std::vector<std::uint32_t>& states,
                               double leak_tol, const char* what) {
  const Eigen::Index n = static_cast<Eigen::Index>(states.size());
  std::vector<Eigen::Index> where(m.rows(), -1);
  for (Eigen::Index i = 0; i < n; ++i) where[states[i]] = i;
  Eigen::MatrixXcd blk = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index col = states[i];
    for (SpMat::InnerIterator it(m, col); it; ++it) {
      const Eigen::Index r = where[it.row()];
      if (r < 0) {
        if (std::abs(it.value()) > leak_tol)
          throw NumericalError(std::string(what) +
                               " does not preserve the (Sz, parity) sectors");
        continue;
      }
      blk(r, i) = it.value();
    }
  }
  return blk;
}

}  // namespace

double SpectralData::log_partition(double beta) const {
  auto it = partition_cache_.find(beta);
  if (it != partition_cache_.end()) return it->second;
  double z = 0.0;
  for (const auto& blk : blocks)
    for (Eigen::Index i = 0; i < blk.evals.size(); ++i)
      z += std::exp(-beta * (blk.evals[i] - e0));
  const double logz = -beta * e0 + std::log(z);
  partition_cache_[beta] = logz;
  return logz;
}

std::vector<Eigen::MatrixXcd> SpectralData::transform(
    const OperatorMatrix& a) const {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(blocks.size());
  const double leak = 1e-12 * std::max(1.0, max_abs(a));
  for (const auto& blk : blocks) {
    Eigen::MatrixXcd ab = extract_block(a.mat, blk.states, leak, "observable");
    out.push_back(blk.evecs.adjoint() * ab * blk.evecs);
  }
  return out;
}

SpectralData diagonalize(const OperatorMatrix& h, const FockBasis& b,
                         std::size_t dense_cap) {
  if (b.dim > dense_cap)
    throw CapError("dense diagonalization dimension " + std::to_string(b.dim) +
                   " exceeds the cap " + std::to_string(dense_cap));
  const double scale = std::max(1.0, max_abs(h));
  if (!h.hermitian && !is_hermitian(h, 1e-12 * scale))
    throw NumericalError("diagonalize requires a hermitian operator");

  SpectralData sd;
  sd.dim = b.dim;
  sd.blocks = sector_partition(b);
  const auto nb = static_cast<std::int64_t>(sd.blocks.size());
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
  for (std::int64_t i = 0; i < nb; ++i) {
    auto& blk = sd.blocks[static_cast<std::size_t>(i)];
    const Eigen::MatrixXcd hb =
        extract_block(h.mat, blk.states, 1e-12 * scale, "hamiltonian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hb);
    blk.evals = solver.eigenvalues();
    blk.evecs = solver.eigenvectors();
  }
  sd.e0 = sd.blocks.front().evals.size() ? sd.blocks.front().evals[0] : 0.0;
  for (const auto& blk : sd.blocks)
    if (blk.evals.size()) sd.e0 = std::min(sd.e0, blk.evals[0]);
  sd.degeneracy_tol = 1e-9 * std::max(1.0, std::abs(sd.e0));
  sd.ground_degeneracy = 0;
  for (const auto& blk : sd.blocks)
    for (Eigen::Index i = 0; i < blk.evals.size(); ++i)
      if (blk.evals[i] - sd.e0 <= sd.degeneracy_tol) ++sd.ground_degeneracy;
  return sd;
}

Complex thermal_expectation(const SpectralData& sd, const OperatorMatrix& a,
                            double beta, Exec exec) {
  if (static_cast<std::size_t>(a.mat.rows()) != sd.dim)
    throw ConfigError("dimension mismatch");
  if (beta < 0.0) throw ConfigError("beta must be >= 0");
  const auto ta = sd.transform(a);
  double z = 0.0;
  for (const auto& blk : sd.blocks)
    for (Eigen::Index i = 0; i < blk.evals.size(); ++i)
      z += std::exp(-beta * (blk.evals[i] - sd.e0));

  std::vector<double> re_parts, im_parts;
  for (std::size_t bi = 0; bi < sd.blocks.size(); ++bi) {
    const auto& blk = sd.blocks[bi];
    const auto& ab = ta[bi];
    const std::size_t n = static_cast<std::size_t>(blk.evals.size());
    const double val_re = slab_sum(n, exec, [&](std::size_t i) {
      return std::exp(-beta * (blk.evals[static_cast<Eigen::Index>(i)] - sd.e0)) *
             ab(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    });
    const double val_im = slab_sum(n, exec, [&](std::size_t i) {
      return std::exp(-beta * (blk.evals[static_cast<Eigen::Index>(i)] - sd.e0)) *
             ab(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).imag();
    });
    re_parts.push_back(val_re);
    im_parts.push_back(val_im);
  }
  return Complex(pairwise_sum(re_parts), pairwise_sum(im_parts)) / z;
}

double duhamel_weight(double em, double en, double beta) {
  if (beta == 0.0) return 1.0;
  const double gap = en - em;
  if (std::abs(gap) < kDegenerateGap) return std::exp(-beta * em);
  // expm1 keeps full precision when beta*gap is tiny
  return std::exp(-beta * em) * (-std::expm1(-beta * gap)) / (beta * gap);
}

Complex duhamel(const SpectralData& sd, const OperatorMatrix& a,
                const OperatorMatrix& bop, double beta, Exec exec) {
  if (static_cast<std::size_t>(a.mat.rows()) != sd.dim ||
      static_cast<std::size_t>(bop.mat.rows()) != sd.dim)
    throw ConfigError("dimension mismatch");
  const auto ta = sd.transform(a);
  const auto tb = sd.transform(bop);
  double z = 0.0;
  for (const auto& blk : sd.blocks)
    for (Eigen::Index i = 0; i < blk.evals.size(); ++i)
      z += std::exp(-beta * (blk.evals[i] - sd.e0));

  std::vector<double> re_parts, im_parts;
  for (std::size_t bi = 0; bi < sd.blocks.size(); ++bi) {
    const auto& blk = sd.blocks[bi];
    const auto& ab = ta[bi];
    const auto& bb = tb[bi];
    const std::size_t n = static_cast<std::size_t>(blk.evals.size());
    // row-slab partial sums over the (m, n) double sum, shifted by e0
    const double val_re = slab_sum(n, exec, [&](std::size_t mi) {
      const auto m = static_cast<Eigen::Index>(mi);
      double acc = 0.0;
      for (Eigen::Index nn = 0; nn < static_cast<Eigen::Index>(n); ++nn)
        acc += (ab(m, nn) * bb(nn, m)).real() *
               duhamel_weight(blk.evals[m] - sd.e0, blk.evals[nn] - sd.e0, beta);
      return acc;
    });
    const double val_im = slab_sum(n, exec, [&](std::size_t mi) {
      const auto m = static_cast<Eigen::Index>(mi);
      double acc = 0.0;
      for (Eigen::Index nn = 0; nn < static_cast<Eigen::Index>(n); ++nn)
        acc += (ab(m, nn) * bb(nn, m)).imag() *
               duhamel_weight(blk.evals[m] - sd.e0, blk.evals[nn] - sd.e0, beta);
      return acc;
    });
    re_parts.push_back(val_re);
    im_parts.push_back(val_im);
  }
  return Complex(pairwise_sum(re_parts), pairwise_sum(im_parts)) / z;
}

namespace serial_ref {

Complex thermal_expectation(const SpectralData& sd, const OperatorMatrix& a,
                            double beta) {
  const auto ta = sd.transform(a);
  double z = 0.0;
  Complex acc(0.0, 0.0);
  for (std::size_t bi = 0; bi < sd.blocks.size(); ++bi) {
    const auto& blk = sd.blocks[bi];
    for (Eigen::Index i = 0; i < blk.evals.size(); ++i) {
      const double w = std::exp(-beta * (blk.evals[i] - sd.e0));
      z += w;
      acc += w * ta[bi](i, i);
    }
  }
  return acc / z;
}

Complex duhamel(const SpectralData& sd, const OperatorMatrix& a,
                const OperatorMatrix& bop, double beta) {
  const auto ta = sd.transform(a);
  const auto tb = sd.transform(bop);
  double z = 0.0;
  Complex acc(0.0, 0.0);
  for (std::size_t bi = 0; bi < sd.blocks.size(); ++bi) {
    const auto& blk = sd.blocks[bi];
    const Eigen::Index n = blk.evals.size();
    for (Eigen::Index i = 0; i < n; ++i)
      z += std::exp(-beta * (blk.evals[i] - sd.e0));
    for (Eigen::Index m = 0; m < n; ++m)
      for (Eigen::Index nn = 0; nn < n; ++nn)
        acc += ta[bi](m, nn) * tb[bi](nn, m) *
               duhamel_weight(blk.evals[m] - sd.e0, blk.evals[nn] - sd.e0, beta);
  }
  return acc / z;
}

}  // namespace serial_ref

GbcValues gbc_at_p(const SpectralData& sd, const FockBasis& b,
                   const LatticeSpec& lat, const OperatorMatrix& h,
                   std::span<const int> k, double beta) {
  const OperatorMatrix gp = momentum_gamma(b, lat, k);
  const OperatorMatrix gm = adjoint(gp);  // Γ̂_{-p}
  GbcValues out;
  const Complex sym = thermal_expectation(sd, mul(gp, gm), beta) +
                      thermal_expectation(sd, mul(gm, gp), beta);
  const Complex bp = duhamel(sd, gp, gm, beta);
  const Complex cp =
      thermal_expectation(sd, commutator(gm, commutator(h, gp)), beta);
  if (std::abs(sym.imag()) > 2e-10 || std::abs(bp.imag()) > 1e-10 ||
      std::abs(cp.imag()) > 1e-10)
    throw NumericalError("momentum-resolved values acquired imaginary parts");
  out.g_p = 0.5 * sym.real();
  out.b_p = bp.real();
  out.c_p = cp.real();
  return out;
}

double lro(const SpectralData& sd, const FockBasis& b, const LatticeSpec& lat,
           double beta) {
  std::vector<int> q(lat.d, lat.L);
  const OperatorMatrix gq = momentum_gamma(b, lat, q);
  const Complex val = thermal_expectation(sd, mul(gq, gq), beta);
  if (std::abs(val.imag()) > 1e-10)
    throw NumericalError("long-range order acquired an imaginary part");
  return std::sqrt(std::max(0.0, val.real() / lat.n_sites));
}

Complex ground_expectation(const SpectralData& sd, const OperatorMatrix& a) {
  const auto ta = sd.transform(a);
  Complex acc(0.0, 0.0);
  int q = 0;
  for (std::size_t bi = 0; bi < sd.blocks.size(); ++bi) {
    const auto& blk = sd.blocks[bi];
    for (Eigen::Index i = 0; i < blk.evals.size(); ++i) {
      if (blk.evals[i] - sd.e0 > sd.degeneracy_tol) break;
      acc += ta[bi](i, i);
      ++q;
    }
  }
  return acc / static_cast<double>(q);
}

double trial_energy(const SpectralData& sd, const OperatorMatrix& a_r,
                    double epsilon) {
  if (epsilon < 0.0) throw ConfigError("epsilon must be >= 0");
  // ω(A† Ȟ^{1+ε} A) and ω(A† Ȟ^ε A) via |w> = A |Φ_0,μ> expanded per block
  auto power = [&](double e, double expo) {
    if (e <= sd.degeneracy_tol) return (expo == 0.0) ? 1.0 : 0.0;
    return std::pow(e, expo);
  };
  double num = 0.0, den = 0.0;
  int q = 0;
  for (const auto& blk : sd.blocks) {
    for (Eigen::Index mu = 0; mu < blk.evals.size(); ++mu) {
      if (blk.evals[mu] - sd.e0 > sd.degeneracy_tol) break;
      ++q;
      // ground vector in the full basis
      Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sd.dim));
      for (std::size_t i = 0; i < blk.states.size(); ++i)
        phi[blk.states[i]] = blk.evecs(static_cast<Eigen::Index>(i), mu);
      const Eigen::VectorXcd w = a_r.mat * phi;
      for (const auto& tblk : sd.blocks) {
        Eigen::VectorXcd wloc(static_cast<Eigen::Index>(tblk.states.size()));
        for (std::size_t i = 0; i < tblk.states.size(); ++i)
          wloc[static_cast<Eigen::Index>(i)] = w[tblk.states[i]];
        const Eigen::VectorXcd coeff = tblk.evecs.adjoint() * wloc;
        for (Eigen::Index i = 0; i < coeff.size(); ++i) {
          const double wt = std::norm(coeff[i]);
          if (wt == 0.0) continue;
          const double e = tblk.evals[i] - sd.e0;
          num += wt * power(e, 1.0 + epsilon);
          den += wt * power(e, epsilon);
        }
      }
    }
  }
  num /= q;
  den /= q;
  if (den <= 1e-14)
    throw NumericalError("degenerate trial state: vanishing denominator");
  return num / den;
}

OperatorMatrix spectral_filter(const SpectralData& sd, const OperatorMatrix& a,
                               const std::function<double(double)>& chi) {
  // assemble chi(H - E0) as a sparse block-diagonal matrix
  std::vector<Eigen::Triplet<Complex>> trips;
  for (const auto& blk : sd.blocks) {
    const Eigen::Index n = blk.evals.size();
    Eigen::VectorXd w(n);
    bool any = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      w[i] = chi(blk.evals[i] - sd.e0);
      any = any || (w[i] != 0.0);
    }
    if (!any) continue;
    const Eigen::MatrixXcd f = blk.evecs * w.asDiagonal() * blk.evecs.adjoint();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (std::abs(f(i, j)) > 0.0)
          trips.emplace_back(static_cast<Eigen::Index>(blk.states[i]),
                             static_cast<Eigen::Index>(blk.states[j]), f(i, j));
  }
  OperatorMatrix filt;
  filt.mat = SpMat(static_cast<Eigen::Index>(sd.dim),
                   static_cast<Eigen::Index>(sd.dim));
  filt.mat.setFromTriplets(trips.begin(), trips.end());
  filt.hermitian = true;
  filt.parity = FermionParity::Even;
  return mul(filt, a);
}

std::function<double(double)> bump_window(double lo, double hi) {
  if (!(hi > lo)) throw ConfigError("bump window needs lo < hi");
  return [lo, hi](double e) {
    const double t = (e - lo) / (hi - lo);
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return std::exp(-1.0 / (t * (1.0 - t)));
  };
}

MeanEnergies mean_energies(const SpectralData& sd, const FockBasis& b,
                           const LatticeSpec& lat, const OperatorMatrix& h,
                           double beta) {
  MeanEnergies out;
  OperatorMatrix corr = zero_op(b.dim);
  for (int s = 0; s < lat.n_sites; ++s) {
    const OperatorMatrix g1 = gamma_op(b, s, GammaKind::One);
    corr = add(corr, mul(g1, gamma_op(b, lat.neighbor(s, 1, +1), GammaKind::One)));
    corr = add(corr, mul(g1, gamma_op(b, lat.neighbor(s, 1, -1), GammaKind::One)));
  }
  out.e1 = -0.5 / lat.n_sites * thermal_expectation(sd, corr, beta).real();
  out.e_mean = thermal_expectation(sd, h, beta).real() / lat.n_sites;
  if (beta > 0.0) {
    out.free_energy = -sd.log_partition(beta) / (beta * lat.n_sites);
    out.entropy = beta * (out.e_mean - out.free_energy);
  } else {
    out.free_energy = std::numeric_limits<double>::quiet_NaN();
    out.entropy = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace rpbcs
