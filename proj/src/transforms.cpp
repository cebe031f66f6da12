#include "rpbcs/transforms.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>

#include "rpbcs/errors.hpp"

namespace rpbcs {

namespace {
using Triplet = Eigen::Triplet<Complex>;

UnitaryMatrix diagonal_unitary(const FockBasis& b, const std::string& label,
                               const std::vector<Complex>& mode_phase) {
  // phase(n) = prod over occupied modes of mode_phase[m]
  std::vector<Triplet> trips;
  trips.reserve(b.dim);
  for (std::uint64_t n = 0; n < b.dim; ++n) {
    Complex phase(1.0, 0.0);
    for (int m = 0; m < b.n_modes; ++m)
      if (n & (std::uint64_t{1} << m)) phase *= mode_phase[m];
    trips.emplace_back(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n),
                       phase);
  }
  UnitaryMatrix u;
  u.label = label;
  u.mat = SpMat(static_cast<Eigen::Index>(b.dim), static_cast<Eigen::Index>(b.dim));
  u.mat.setFromTriplets(trips.begin(), trips.end());
  return u;
}

bool is_odd(int c) { return c % 2 != 0; }
}  // namespace

UnitaryMatrix u_bc(const FockBasis& b, const LatticeSpec& lat, int dir, int ell) {
  if (dir < 1 || dir > lat.d) throw ConfigError("bad direction");
  if (ell <= -lat.L + 1 || ell > lat.L)
    throw ConfigError("slab cut must lie strictly inside the box");
  std::vector<Complex> mp(b.n_modes, Complex(1.0, 0.0));
  for (int s = 0; s < lat.n_sites; ++s) {
    const int c = lat.coords[s][dir - 1];
    if (ell <= c && c <= lat.L) {
      mp[b.mode(s, Spin::Up)] = Complex(-1.0, 0.0);
      mp[b.mode(s, Spin::Down)] = Complex(-1.0, 0.0);
    }
  }
  return diagonal_unitary(b, "bc_slab", mp);
}

UnitaryMatrix u_ha(const FockBasis& b, const LatticeSpec& lat, int i, int j) {
  if (i == j || i < 1 || j < 1 || i > lat.d || j > lat.d)
    throw ConfigError("amplitude swap needs two distinct directions");
  std::vector<Complex> mp(b.n_modes, Complex(1.0, 0.0));
  for (int s = 0; s < lat.n_sites; ++s) {
    const auto& x = lat.coords[s];
    if (is_odd(x[i - 1]) && is_odd(x[j - 1])) {
      mp[b.mode(s, Spin::Up)] = Complex(-1.0, 0.0);
      mp[b.mode(s, Spin::Down)] = Complex(-1.0, 0.0);
    }
  }
  return diagonal_unitary(b, "amplitude_swap", mp);
}

UnitaryMatrix u_ha_to_first(const FockBasis& b, const LatticeSpec& lat, int j) {
  if (j < 2 || j > lat.d) throw ConfigError("direction must be in 2..d");
  UnitaryMatrix u = u_ha(b, lat, j, j - 1);
  for (int k = j - 2; k >= 1; --k) {
    UnitaryMatrix next = u_ha(b, lat, j, k);
    u.mat = (u.mat * next.mat).eval();
  }
  u.label = "amplitude_to_first";
  return u;
}

UnitaryMatrix u_phase_even(const FockBasis& b, const LatticeSpec& lat, int j) {
  if (j < 1 || j > lat.d) throw ConfigError("bad direction");
  std::vector<Complex> mp(b.n_modes, Complex(1.0, 0.0));
  for (int s = 0; s < lat.n_sites; ++s) {
    if (!is_odd(lat.coords[s][j - 1])) {
      mp[b.mode(s, Spin::Up)] = Complex(0.0, 1.0);
      mp[b.mode(s, Spin::Down)] = Complex(0.0, 1.0);
    }
  }
  return diagonal_unitary(b, "phase_even_coord", mp);
}

UnitaryMatrix u_phase_even_all(const FockBasis& b, const LatticeSpec& lat) {
  std::vector<Complex> mp(b.n_modes, Complex(1.0, 0.0));
  for (int s = 0; s < lat.n_sites; ++s) {
    Complex p(1.0, 0.0);
    for (int j = 2; j <= lat.d; ++j)
      if (!is_odd(lat.coords[s][j - 1])) p *= Complex(0.0, 1.0);
    mp[b.mode(s, Spin::Up)] = p;
    mp[b.mode(s, Spin::Down)] = p;
  }
  return diagonal_unitary(b, "phase_even_all", mp);
}

UnitaryMatrix u_mode_swap(const FockBasis& b, int site, Spin s) {
  const int m = b.mode(site, s);
  const std::uint64_t bit = std::uint64_t{1} << m;
  const std::uint64_t below = b.jw_mask_below[m];
  std::vector<Triplet> trips;
  trips.reserve(b.dim);
  for (std::uint64_t n = 0; n < b.dim; ++n) {
    // parity string over every other mode, times xi on this mode
    const int string = std::popcount(n & ~bit);
    const int jw = std::popcount(n & below);
    const double sgn = ((string + jw) & 1) ? -1.0 : 1.0;
    trips.emplace_back(static_cast<Eigen::Index>(n ^ bit),
                       static_cast<Eigen::Index>(n), Complex(sgn, 0.0));
  }
  UnitaryMatrix u;
  u.label = "mode_swap";
  u.mat = SpMat(static_cast<Eigen::Index>(b.dim), static_cast<Eigen::Index>(b.dim));
  u.mat.setFromTriplets(trips.begin(), trips.end());
  return u;
}

UnitaryMatrix u_odd(const FockBasis& b, const LatticeSpec& lat) {
  UnitaryMatrix u;
  u.label = "odd_conjugation";
  u.mat = SpMat(static_cast<Eigen::Index>(b.dim), static_cast<Eigen::Index>(b.dim));
  u.mat.setIdentity();
  for (Spin s : {Spin::Up, Spin::Down})
    for (int site = 0; site < lat.n_sites; ++site) {
      if (sublattice_sign(lat.coords[site]) != -1) continue;
      UnitaryMatrix next = u_mode_swap(b, site, s);
      u.mat = (u.mat * next.mat).eval();
    }
  return u;
}

UnitaryMatrix u_tilde_one(const FockBasis& b, const LatticeSpec& lat) {
  UnitaryMatrix u1 = u_phase_even_all(b, lat);
  UnitaryMatrix uo = u_odd(b, lat);
  UnitaryMatrix u;
  u.label = "tilde_one";
  u.mat = (u1.mat * uo.mat).eval();
  return u;
}

UnitaryMatrix u_odd_quarter(const FockBasis& b, const LatticeSpec& lat) {
  std::vector<Complex> mp(b.n_modes, Complex(1.0, 0.0));
  for (int s = 0; s < lat.n_sites; ++s) {
    if (sublattice_sign(lat.coords[s]) != -1) continue;
    mp[b.mode(s, Spin::Up)] = Complex(0.0, 1.0);
    mp[b.mode(s, Spin::Down)] = Complex(0.0, 1.0);
  }
  return diagonal_unitary(b, "odd_quarter", mp);
}

UnitaryMatrix u_particle_hole(const FockBasis& b, const LatticeSpec& lat) {
  UnitaryMatrix u;
  u.label = "particle_hole";
  u.mat = SpMat(static_cast<Eigen::Index>(b.dim), static_cast<Eigen::Index>(b.dim));
  u.mat.setIdentity();
  for (Spin s : {Spin::Up, Spin::Down})
    for (int site = 0; site < lat.n_sites; ++site) {
      UnitaryMatrix next = u_mode_swap(b, site, s);
      u.mat = (u.mat * next.mat).eval();
    }
  return u;
}

UnitaryMatrix u_rotation(const FockBasis& b, const LatticeSpec& lat, double theta) {
  // Π_x exp(iθ Γ3_x / 2) is diagonal with phase exp(iθ (|Λ| - N) / 2).
  std::vector<Triplet> trips;
  trips.reserve(b.dim);
  for (std::uint64_t n = 0; n < b.dim; ++n) {
    const int N = std::popcount(n);
    const double angle = 0.5 * theta * (lat.n_sites - N);
    trips.emplace_back(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n),
                       std::polar(1.0, angle));
  }
  UnitaryMatrix u;
  u.label = "rotation";
  u.mat = SpMat(static_cast<Eigen::Index>(b.dim), static_cast<Eigen::Index>(b.dim));
  u.mat.setFromTriplets(trips.begin(), trips.end());
  return u;
}

UnitaryMatrix build_unitary(const FockBasis& b, const LatticeSpec& lat,
                            const std::string& label, const UnitaryArgs& args) {
  if (label == "bc_slab") return u_bc(b, lat, args.dir, args.ell);
  if (label == "amplitude_swap") return u_ha(b, lat, args.dir, args.dir2);
  if (label == "amplitude_to_first") return u_ha_to_first(b, lat, args.dir);
  if (label == "phase_even_coord") return u_phase_even(b, lat, args.dir);
  if (label == "phase_even_all") return u_phase_even_all(b, lat);
  if (label == "mode_swap") return u_mode_swap(b, args.site, args.spin);
  if (label == "odd_conjugation") return u_odd(b, lat);
  if (label == "tilde_one") return u_tilde_one(b, lat);
  if (label == "odd_quarter") return u_odd_quarter(b, lat);
  if (label == "particle_hole") return u_particle_hole(b, lat);
  if (label == "rotation") return u_rotation(b, lat, args.theta);
  throw ConfigError("unknown unitary label: " + label);
}

OperatorMatrix conjugate(const OperatorMatrix& a, const UnitaryMatrix& u) {
  if (a.mat.rows() != u.mat.rows()) throw ConfigError("dimension mismatch");
  OperatorMatrix r;
  r.mat = (SpMat(u.mat.adjoint()) * a.mat * u.mat).eval();
  r.hermitian = a.hermitian;
  r.parity = a.parity;
  return r;
}

double unitarity_defect(const UnitaryMatrix& u) {
  SpMat prod = SpMat(u.mat.adjoint()) * u.mat;
  OperatorMatrix d;
  d.mat = prod - identity_op(static_cast<std::size_t>(u.mat.rows())).mat;
  return max_abs(d);
}

namespace {

AntiLinearMap antilinear_from_mode_perm(const FockBasis& b,
                                        const std::vector<int>& mode_perm,
                                        const std::string& label) {
  AntiLinearMap t;
  t.label = label;
  t.perm.resize(b.dim);
  t.sign.resize(b.dim);
  // occupied modes sorted by string position; map; count inversions of the
  // image string positions
  std::vector<int> by_pos(b.n_modes);
  std::vector<int> pos_of_mode = b.jw_pos;
  for (int m = 0; m < b.n_modes; ++m) by_pos[pos_of_mode[m]] = m;
  std::vector<int> image_pos;
  for (std::uint64_t n = 0; n < b.dim; ++n) {
    image_pos.clear();
    std::uint64_t out = 0;
    for (int p = 0; p < b.n_modes; ++p) {
      const int m = by_pos[p];
      if (!(n & (std::uint64_t{1} << m))) continue;
      const int mm = mode_perm[m];
      out |= (std::uint64_t{1} << mm);
      image_pos.push_back(pos_of_mode[mm]);
    }
    int inversions = 0;
    for (std::size_t i = 0; i < image_pos.size(); ++i)
      for (std::size_t j = i + 1; j < image_pos.size(); ++j)
        if (image_pos[i] > image_pos[j]) ++inversions;
    t.perm[n] = out;
    t.sign[n] = (inversions & 1) ? -1.0 : 1.0;
  }
  return t;
}

}  // namespace

AntiLinearMap reflection_x1(const FockBasis& b, const LatticeSpec& lat) {
  std::vector<int> mode_perm(b.n_modes);
  for (int s = 0; s < lat.n_sites; ++s) {
    std::vector<int> x = lat.coords[s];
    x[0] = 1 - x[0];
    const int target = lat.site_index(x);
    mode_perm[b.mode(s, Spin::Up)] = b.mode(target, Spin::Up);
    mode_perm[b.mode(s, Spin::Down)] = b.mode(target, Spin::Down);
  }
  return antilinear_from_mode_perm(b, mode_perm, "reflection_x1");
}

AntiLinearMap reflection_spin(const FockBasis& b, const LatticeSpec& lat) {
  std::vector<int> mode_perm(b.n_modes);
  for (int s = 0; s < lat.n_sites; ++s) {
    mode_perm[b.mode(s, Spin::Up)] = b.mode(s, Spin::Down);
    mode_perm[b.mode(s, Spin::Down)] = b.mode(s, Spin::Up);
  }
  return antilinear_from_mode_perm(b, mode_perm, "reflection_spin");
}

OperatorMatrix apply_antilinear(const AntiLinearMap& t, const OperatorMatrix& a) {
  if (static_cast<std::size_t>(a.mat.rows()) != t.perm.size())
    throw ConfigError("dimension mismatch");
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(a.mat.nonZeros()));
  for (int k = 0; k < a.mat.outerSize(); ++k)
    for (SpMat::InnerIterator it(a.mat, k); it; ++it) {
      const auto r = static_cast<std::uint64_t>(it.row());
      const auto c = static_cast<std::uint64_t>(it.col());
      trips.emplace_back(static_cast<Eigen::Index>(t.perm[r]),
                         static_cast<Eigen::Index>(t.perm[c]),
                         t.sign[r] * t.sign[c] * std::conj(it.value()));
    }
  OperatorMatrix out;
  out.mat = SpMat(a.mat.rows(), a.mat.cols());
  out.mat.setFromTriplets(trips.begin(), trips.end());
  out.hermitian = a.hermitian;
  out.parity = a.parity;
  return out;
}

}  // namespace rpbcs
