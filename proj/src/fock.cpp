#include "rpbcs/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "rpbcs/errors.hpp"

namespace rpbcs {

namespace {
using Triplet = Eigen::Triplet<Complex>;

FermionParity mul_parity(FermionParity a, FermionParity b) {
  if (a == FermionParity::Mixed || b == FermionParity::Mixed)
    return FermionParity::Mixed;
  return (a == b) ? FermionParity::Even
                  : FermionParity::Odd;
}

FermionParity add_parity(FermionParity a, FermionParity b) {
  return (a == b) ? a : FermionParity::Mixed;
}
}  // namespace

std::pair<int, int> FockBasis::sector_of(std::uint64_t state) const {
  int up = 0, down = 0;
  for (int s = 0; s < n_sites; ++s) {
    up += (state >> (2 * s)) & 1u;
    down += (state >> (2 * s + 1)) & 1u;
  }
  return {up - down, (up + down) & 1};
}

FockBasis build_basis(const LatticeSpec& lat, std::size_t dim_cap) {
  std::vector<int> order(2 * lat.n_sites);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  return build_basis_with_order(lat, std::move(order), dim_cap);
}

FockBasis build_basis_with_order(const LatticeSpec& lat, std::vector<int> jw_pos,
                                 std::size_t dim_cap) {
  FockBasis b;
  b.n_sites = lat.n_sites;
  b.n_modes = 2 * lat.n_sites;
  if (b.n_modes >= 63 || (std::size_t{1} << b.n_modes) > dim_cap)
    throw CapError("Fock dimension 4^" + std::to_string(lat.n_sites) +
                   " exceeds the cap " + std::to_string(dim_cap));
  b.dim = std::size_t{1} << b.n_modes;
  if (static_cast<int>(jw_pos.size()) != b.n_modes)
    throw ConfigError("mode order must cover every (site, spin) mode");
  std::vector<int> seen(b.n_modes, 0);
  for (int p : jw_pos) {
    if (p < 0 || p >= b.n_modes || seen[p]++)
      throw ConfigError("mode order must be a permutation");
  }
  b.jw_pos = std::move(jw_pos);
  b.jw_mask_below.assign(b.n_modes, 0);
  for (int m = 0; m < b.n_modes; ++m)
    for (int j = 0; j < b.n_modes; ++j)
      if (j != m && b.jw_pos[j] < b.jw_pos[m])
        b.jw_mask_below[m] |= (std::uint64_t{1} << j);
  return b;
}

// --- elementary algebra -----------------------------------------------------

OperatorMatrix identity_op(std::size_t dim) {
  OperatorMatrix a;
  a.mat = SpMat(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  a.mat.setIdentity();
  a.hermitian = true;
  a.parity = FermionParity::Even;
  return a;
}

OperatorMatrix zero_op(std::size_t dim) {
  OperatorMatrix a;
  a.mat = SpMat(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  a.hermitian = true;
  a.parity = FermionParity::Even;
  return a;
}

OperatorMatrix add(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix r;
  r.mat = a.mat + b.mat;
  r.hermitian = a.hermitian && b.hermitian;
  r.parity = add_parity(a.parity, b.parity);
  return r;
}

OperatorMatrix sub(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix r;
  r.mat = a.mat - b.mat;
  r.hermitian = a.hermitian && b.hermitian;
  r.parity = add_parity(a.parity, b.parity);
  return r;
}

OperatorMatrix mul(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix r;
  r.mat = a.mat * b.mat;
  r.hermitian = false;
  r.parity = mul_parity(a.parity, b.parity);
  return r;
}

OperatorMatrix scale(Complex c, const OperatorMatrix& a) {
  OperatorMatrix r;
  r.mat = c * a.mat;
  r.hermitian = a.hermitian && c.imag() == 0.0;
  r.parity = a.parity;
  return r;
}

OperatorMatrix adjoint(const OperatorMatrix& a) {
  OperatorMatrix r;
  r.mat = SpMat(a.mat.adjoint());
  r.hermitian = a.hermitian;
  r.parity = a.parity;
  return r;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix r;
  r.mat = a.mat * b.mat - b.mat * a.mat;
  r.hermitian = false;
  r.parity = mul_parity(a.parity, b.parity);
  return r;
}

OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix r;
  r.mat = a.mat * b.mat + b.mat * a.mat;
  r.hermitian = false;
  r.parity = mul_parity(a.parity, b.parity);
  return r;
}

double max_abs(const OperatorMatrix& a) {
  double m = 0.0;
  for (int k = 0; k < a.mat.outerSize(); ++k)
    for (SpMat::InnerIterator it(a.mat, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix d;
  d.mat = a.mat - b.mat;
  return max_abs(d);
}

bool is_hermitian(const OperatorMatrix& a, double tol) {
  OperatorMatrix d;
  d.mat = a.mat - SpMat(a.mat.adjoint());
  return max_abs(d) <= tol;
}

double operator_norm(const OperatorMatrix& a, double tol) {
  const Eigen::Index n = a.mat.rows();
  if (n == 0) return 0.0;
  Eigen::VectorXcd v(n);
  std::mt19937_64 rng(0x5eed1234u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(u(rng), u(rng));
  v.normalize();
  double lambda = 0.0;
  for (int iter = 0; iter < 20000; ++iter) {
    Eigen::VectorXcd w = a.mat * v;
    w = a.mat.adjoint() * w;
    const double next = std::sqrt(std::max(0.0, w.dot(v).real()));
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    if (std::abs(next - lambda) <= tol * std::max(1.0, next) && iter > 4)
      return next;
    lambda = next;
  }
  return lambda;
}

// --- mode operators ---------------------------------------------------------

OperatorMatrix creation_op(const FockBasis& b, int site, Spin s) {
  const int m = b.mode(site, s);
  if (m < 0 || m >= b.n_modes) throw ConfigError("mode out of range");
  const std::uint64_t bit = std::uint64_t{1} << m;
  const std::uint64_t below = b.jw_mask_below[m];
  std::vector<Triplet> trips;
  trips.reserve(b.dim / 2);
  for (std::uint64_t n = 0; n < b.dim; ++n) {
    if (n & bit) continue;
    const double sgn = (std::popcount(n & below) & 1) ? -1.0 : 1.0;
    trips.emplace_back(static_cast<Eigen::Index>(n | bit),
                       static_cast<Eigen::Index>(n), Complex(sgn, 0.0));
  }
  OperatorMatrix a;
  a.mat = SpMat(static_cast<Eigen::Index>(b.dim), static_cast<Eigen::Index>(b.dim));
  a.mat.setFromTriplets(trips.begin(), trips.end());
  a.parity = FermionParity::Odd;
  return a;
}

OperatorMatrix annihilation_op(const FockBasis& b, int site, Spin s) {
  return adjoint(creation_op(b, site, s));
}

OperatorMatrix number_op(const FockBasis& b, int site, Spin s) {
  const int m = b.mode(site, s);
  const std::uint64_t bit = std::uint64_t{1} << m;
  std::vector<Triplet> trips;
  trips.reserve(b.dim / 2);
  for (std::uint64_t n = 0; n < b.dim; ++n)
    if (n & bit)
      trips.emplace_back(static_cast<Eigen::Index>(n),
                         static_cast<Eigen::Index>(n), Complex(1.0, 0.0));
  OperatorMatrix a;
  a.mat = SpMat(static_cast<Eigen::Index>(b.dim), static_cast<Eigen::Index>(b.dim));
  a.mat.setFromTriplets(trips.begin(), trips.end());
  a.hermitian = true;
  a.parity = FermionParity::Even;
  return a;
}

OperatorMatrix gamma_op(const FockBasis& b, int site, GammaKind kind) {
  switch (kind) {
    case GammaKind::Plus:
      return mul(creation_op(b, site, Spin::Up), creation_op(b, site, Spin::Down));
    case GammaKind::Minus:
      return mul(annihilation_op(b, site, Spin::Down),
                 annihilation_op(b, site, Spin::Up));
    case GammaKind::One: {
      OperatorMatrix g = add(gamma_op(b, site, GammaKind::Plus),
                             gamma_op(b, site, GammaKind::Minus));
      g.hermitian = true;
      g.parity = FermionParity::Even;
      return g;
    }
    case GammaKind::Two: {
      OperatorMatrix g = scale(Complex(0.0, 1.0),
                               sub(gamma_op(b, site, GammaKind::Plus),
                                   gamma_op(b, site, GammaKind::Minus)));
      g.hermitian = true;
      g.parity = FermionParity::Even;
      return g;
    }
    case GammaKind::Three: {
      OperatorMatrix g =
          sub(sub(identity_op(b.dim), number_op(b, site, Spin::Up)),
              number_op(b, site, Spin::Down));
      g.hermitian = true;
      g.parity = FermionParity::Even;
      return g;
    }
  }
  throw ConfigError("unknown gamma kind");
}

OperatorMatrix majorana_op(const FockBasis& b, int site, Spin s, MajoranaKind kind) {
  const OperatorMatrix cr = creation_op(b, site, s);
  const OperatorMatrix an = adjoint(cr);
  OperatorMatrix m = (kind == MajoranaKind::Xi)
                         ? add(cr, an)
                         : scale(Complex(0.0, 1.0), sub(cr, an));
  m.hermitian = true;
  m.parity = FermionParity::Odd;
  return m;
}

OperatorMatrix momentum_gamma(const FockBasis& b, const LatticeSpec& lat,
                              std::span<const int> k) {
  if (static_cast<int>(k.size()) != lat.d)
    throw ConfigError("momentum index must have one component per direction");
  for (int km : k)
    if (km <= -lat.L || km > lat.L)
      throw ConfigError("momentum component off the dual grid (-L, L]");
  OperatorMatrix sum = zero_op(b.dim);
  bool hermitian_phase = true;
  for (int s = 0; s < lat.n_sites; ++s) {
    const auto& x = lat.coords[s];
    long long kdotx = 0;
    for (int m = 0; m < lat.d; ++m) kdotx += static_cast<long long>(k[m]) * x[m];
    Complex phase;
    if (kdotx % lat.L == 0) {
      // exact ±1 at multiples of π
      phase = ((kdotx / lat.L) % 2) ? Complex(-1.0, 0.0) : Complex(1.0, 0.0);
    } else {
      const double angle = -std::numbers::pi * static_cast<double>(kdotx) / lat.L;
      phase = std::polar(1.0, angle);
      hermitian_phase = false;
    }
    sum = add(sum, scale(phase, gamma_op(b, s, GammaKind::One)));
  }
  OperatorMatrix g = scale(Complex(1.0 / std::sqrt(double(lat.n_sites)), 0.0), sum);
  g.hermitian = hermitian_phase;
  g.parity = FermionParity::Even;
  return g;
}

OperatorMatrix local_order_op(const FockBasis& b, const LatticeSpec& lat, int R) {
  if (R < 1) throw ConfigError("window radius must be >= 1");
  if (R > lat.L - 1)
    throw GeometryError("window |x|inf <= " + std::to_string(R) +
                        " does not fit inside the box");
  OperatorMatrix sum = zero_op(b.dim);
  long long count = 0;
  for (int s = 0; s < lat.n_sites; ++s) {
    const auto& x = lat.coords[s];
    int linf = 0;
    for (int c : x) linf = std::max(linf, std::abs(c));
    if (linf > R) continue;
    ++count;
    sum = add(sum, scale(Complex(sublattice_sign(x), 0.0),
                         gamma_op(b, s, GammaKind::One)));
  }
  OperatorMatrix a = scale(Complex(1.0 / static_cast<double>(count), 0.0), sum);
  a.hermitian = true;
  a.parity = FermionParity::Even;
  return a;
}

OperatorMatrix gamma3_weighted(const FockBasis& b, const LatticeSpec& lat,
                               std::span<const double> f) {
  if (static_cast<int>(f.size()) != lat.n_sites)
    throw ConfigError("weight must be defined on every site");
  OperatorMatrix sum = zero_op(b.dim);
  for (int s = 0; s < lat.n_sites; ++s) {
    if (f[s] == 0.0) continue;
    sum = add(sum, scale(Complex(f[s], 0.0), gamma_op(b, s, GammaKind::Three)));
  }
  sum.hermitian = true;
  sum.parity = FermionParity::Even;
  return sum;
}

// --- serialization ----------------------------------------------------------

void dump_operator(std::ostream& os, const OperatorMatrix& a) {
  char buf[128];
  os << a.mat.rows() << " " << a.mat.nonZeros() << "\n";
  for (int k = 0; k < a.mat.outerSize(); ++k)
    for (SpMat::InnerIterator it(a.mat, k); it; ++it) {
      std::snprintf(buf, sizeof buf, "%lld %lld %.17g %.17g\n",
                    static_cast<long long>(it.row()),
                    static_cast<long long>(it.col()), it.value().real(),
                    it.value().imag());
      os << buf;
    }
}

OperatorMatrix load_operator(std::istream& is) {
  long long dim = 0, nnz = 0;
  if (!(is >> dim >> nnz) || dim < 0 || nnz < 0)
    throw ConfigError("malformed operator dump header");
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(nnz));
  for (long long i = 0; i < nnz; ++i) {
    long long r = 0, c = 0;
    double re = 0.0, im = 0.0;
    if (!(is >> r >> c >> re >> im))
      throw ConfigError("malformed operator dump entry");
    trips.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c),
                       Complex(re, im));
  }
  OperatorMatrix a;
  a.mat = SpMat(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  a.mat.setFromTriplets(trips.begin(), trips.end());
  return a;
}

}  // namespace rpbcs
