#include "oracle_dense.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracle {

namespace {
int popcount_below(long state, int mode) {
  int c = 0;
  for (int j = 0; j < mode; ++j)
    if (state & (1L << j)) ++c;
  return c;
}
}  // namespace

DenseModel::DenseModel(int d_, int L_, double kappa_, double g_, double gprime_,
                       double B_)
    : d(d_), L(L_), kappa(kappa_), g(g_), gprime(gprime_), B(B_) {
  nsites = 1;
  for (int m = 0; m < d; ++m) nsites *= 2 * L;
  nmodes = 2 * nsites;
  if (nmodes > 20) throw std::runtime_error("oracle limited to small boxes");
  dim = 1L << nmodes;

  std::vector<int> x(d, -L + 1);
  for (int i = 0; i < nsites; ++i) {
    coords.push_back(x);
    for (int m = d - 1; m >= 0; --m) {
      if (++x[m] <= L) break;
      x[m] = -L + 1;
    }
  }

  hamiltonian = Mat::Zero(dim, dim);
  for (int s = 0; s < nsites; ++s) {
    for (int m = 0; m < d; ++m) {
      std::vector<int> y = coords[s];
      const bool wrap = (y[m] == L);
      y[m] = wrap ? (-L + 1) : (y[m] + 1);
      const int t = site_of(y);
      int fl = 0;
      for (int j = 0; j < m; ++j) fl += coords[s][j];
      double sign = (fl % 2) ? -1.0 : 1.0;
      if (wrap) sign = -sign;
      for (int spin = 0; spin < 2; ++spin) {
        const Mat cs = creation(s, spin);
        const Mat ct = creation(t, spin);
        hamiltonian += Cx(0.0, kappa * sign) *
                       (cs * ct.adjoint() - ct * cs.adjoint());
      }
      // interaction on the same periodic edge
      const Mat gps = creation(s, 0) * creation(s, 1);
      const Mat gpt = creation(t, 0) * creation(t, 1);
      hamiltonian += g * (gps * gpt.adjoint() + gps.adjoint() * gpt);
      if (gprime != 0.0) hamiltonian += gprime * gamma3(s) * gamma3(t);
    }
    // symmetry-breaking field
    const Mat pair = creation(s, 0) * creation(s, 1);
    hamiltonian += Cx(0.0, -B * stagger(s)) * (pair - pair.adjoint());
  }

  Eigen::SelfAdjointEigenSolver<Mat> solver(hamiltonian);
  evals = solver.eigenvalues();
  evecs = solver.eigenvectors();
}

int DenseModel::site_of(const std::vector<int>& x) const {
  int idx = 0;
  for (int m = 0; m < d; ++m) idx = idx * 2 * L + (x[m] + L - 1);
  return idx;
}

int DenseModel::stagger(int site) const {
  int s = 0;
  for (int c : coords[site]) s += c;
  return (s % 2) ? -1 : 1;
}

Mat DenseModel::creation(int site, int spin) const {
  const int mode = 2 * site + spin;
  Mat a = Mat::Zero(dim, dim);
  for (long n = 0; n < dim; ++n) {
    if (n & (1L << mode)) continue;
    const double sgn = (popcount_below(n, mode) % 2) ? -1.0 : 1.0;
    a(n | (1L << mode), n) = sgn;
  }
  return a;
}

Mat DenseModel::number(int site, int spin) const {
  const Mat c = creation(site, spin);
  return c * c.adjoint();
}

Mat DenseModel::gamma1(int site) const {
  const Mat pair = creation(site, 0) * creation(site, 1);
  return pair + pair.adjoint();
}

Mat DenseModel::gamma2(int site) const {
  const Mat pair = creation(site, 0) * creation(site, 1);
  return Cx(0.0, 1.0) * (pair - pair.adjoint());
}

Mat DenseModel::gamma3(int site) const {
  return Mat::Identity(dim, dim) - number(site, 0) - number(site, 1);
}

Mat DenseModel::momentum_gamma1(const std::vector<int>& k) const {
  Mat out = Mat::Zero(dim, dim);
  for (int s = 0; s < nsites; ++s) {
    double kx = 0.0;
    for (int m = 0; m < d; ++m) kx += k[m] * coords[s][m];
    out += std::polar(1.0, -std::numbers::pi * kx / L) * gamma1(s);
  }
  return out / std::sqrt(double(nsites));
}

double DenseModel::log_partition(double beta) const {
  const double e0 = evals.minCoeff();
  double z = 0.0;
  for (long i = 0; i < dim; ++i) z += std::exp(-beta * (evals[i] - e0));
  return -beta * e0 + std::log(z);
}

Cx DenseModel::expectation(const Mat& a, double beta) const {
  const double e0 = evals.minCoeff();
  double z = 0.0;
  Cx acc(0.0, 0.0);
  for (long i = 0; i < dim; ++i) {
    const double w = std::exp(-beta * (evals[i] - e0));
    z += w;
    acc += w * Cx(evecs.col(i).adjoint() * (a * evecs.col(i)));
  }
  return acc / z;
}

Cx DenseModel::duhamel(const Mat& a, const Mat& b, double beta) const {
  const double e0 = evals.minCoeff();
  const Mat ta = evecs.adjoint() * a * evecs;
  const Mat tb = evecs.adjoint() * b * evecs;
  double z = 0.0;
  for (long i = 0; i < dim; ++i) z += std::exp(-beta * (evals[i] - e0));
  Cx acc(0.0, 0.0);
  for (long m = 0; m < dim; ++m)
    for (long n = 0; n < dim; ++n) {
      const double em = evals[m] - e0, en = evals[n] - e0;
      double w;
      if (beta == 0.0) w = 1.0;
      else if (std::abs(en - em) < 1e-12) w = std::exp(-beta * em);
      else w = (std::exp(-beta * em) - std::exp(-beta * en)) / (beta * (en - em));
      acc += ta(m, n) * tb(n, m) * w;
    }
  return acc / z;
}

Cx DenseModel::duhamel_quadrature(const Mat& a, const Mat& b, double beta,
                                  int npts) const {
  // Gauss-Legendre nodes on [0,1] by Newton iteration on P_n
  std::vector<double> xs(npts), ws(npts);
  for (int i = 0; i < npts; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (npts + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= npts; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double dp = npts * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= npts; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    const double dp = npts * (x * p1 - p0) / (x * x - 1.0);
    xs[i] = 0.5 * (x + 1.0);
    ws[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }

  const double e0 = evals.minCoeff();
  double z = 0.0;
  for (long i = 0; i < dim; ++i) z += std::exp(-beta * (evals[i] - e0));
  Cx acc(0.0, 0.0);
  for (int q = 0; q < npts; ++q) {
    const double s = xs[q];
    Eigen::VectorXd wl(dim), wr(dim);
    for (long i = 0; i < dim; ++i) {
      wl[i] = std::exp(-s * beta * (evals[i] - e0));
      wr[i] = std::exp(-(1.0 - s) * beta * (evals[i] - e0));
    }
    const Mat ta = evecs.adjoint() * a * evecs;
    const Mat tb = evecs.adjoint() * b * evecs;
    Cx tr(0.0, 0.0);
    for (long m = 0; m < dim; ++m)
      for (long n = 0; n < dim; ++n) tr += wl[m] * ta(m, n) * wr[n] * tb(n, m);
    acc += ws[q] * tr;
  }
  return acc / z;
}

double DenseModel::lro(double beta) const {
  double total = 0.0;
  for (int x = 0; x < nsites; ++x)
    for (int y = 0; y < nsites; ++y)
      total += stagger(x) * stagger(y) *
               expectation(gamma1(x) * gamma1(y), beta).real();
  return std::sqrt(std::max(0.0, total)) / nsites;
}

}  // namespace oracle
