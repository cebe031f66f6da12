#include <doctest.h>

#include <Eigen/Dense>

#include "rpbcs/errors.hpp"
#include "rpbcs/hamiltonian.hpp"

using namespace rpbcs;

namespace {
OperatorMatrix sz_operator(const FockBasis& b, const LatticeSpec& lat) {
  OperatorMatrix sz = zero_op(b.dim);
  for (int s = 0; s < lat.n_sites; ++s)
    sz = add(sz, sub(number_op(b, s, Spin::Up), number_op(b, s, Spin::Down)));
  return sz;
}
}  // namespace

TEST_CASE("hopping block spectrum on the two-site chain") {
  const auto lat = build_lattice(1, 1);
  const auto b = build_basis(lat);
  CHECK(max_abs(build_hop(b, lat, 0.0)) == 0.0);

  const auto h = build_hop(b, lat, 1.0);
  CHECK(is_hermitian(h, 0.0));

  // single-particle up-spin block: bulk and wrap bonds add to +-2
  Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(16), v1 = v0;
  v0[1] = 1.0;                         // a'_{0,up} |0>
  v1[1 << 2] = 1.0;                    // a'_{1,up} |0>
  Eigen::Matrix2cd m;
  m(0, 0) = (v0.adjoint() * (h.mat * v0))(0);
  m(0, 1) = (v0.adjoint() * (h.mat * v1))(0);
  m(1, 0) = (v1.adjoint() * (h.mat * v0))(0);
  m(1, 1) = (v1.adjoint() * (h.mat * v1))(0);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
  CHECK(es.eigenvalues()[0] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(es.eigenvalues()[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("interaction forms agree") {
  const auto lat = build_lattice(1, 2);
  const auto b = build_basis(lat);
  const double g = 1.3;

  // pair form vs the quadratic pair-operator form
  const auto hint = build_int(b, lat, g, 0.0);
  OperatorMatrix quad = zero_op(b.dim);
  for (int s = 0; s < lat.n_sites; ++s) {
    const int t = lat.neighbor(s, 1, +1);
    const auto g1s = gamma_op(b, s, GammaKind::One);
    const auto g1t = gamma_op(b, t, GammaKind::One);
    const auto g2s = gamma_op(b, s, GammaKind::Two);
    const auto g2t = gamma_op(b, t, GammaKind::Two);
    quad = add(quad, scale(Complex(g / 2.0, 0),
                           add(mul(g1s, g1t), mul(g2s, g2t))));
  }
  CHECK(max_abs_diff(hint, quad) < 1e-13);

  // the completed-square form at h = 0 reproduces the interaction
  CHECK(max_abs_diff(build_int_fields(b, lat, g, FieldConfig::zero(lat)), hint) <
        1e-13);
}

TEST_CASE("field expansion of the deformed interaction") {
  const auto lat = build_lattice(1, 2);
  const auto b = build_basis(lat);
  const double g = 0.9;
  FieldConfig h = FieldConfig::zero(lat);
  for (int s = 0; s < lat.n_sites; ++s) h.values[0][s] = 0.3 * s - 0.5;

  const auto lhs = sub(build_int_fields(b, lat, g, h),
                       build_int_fields(b, lat, g, FieldConfig::zero(lat)));
  OperatorMatrix rhs = zero_op(b.dim);
  double hsq = 0.0;
  for (int s = 0; s < lat.n_sites; ++s) {
    const int t = lat.neighbor(s, 1, +1);
    const double hv = h.values[0][s];
    hsq += hv * hv;
    rhs = add(rhs, scale(Complex(g / 2.0 * sublattice_sign(lat.coords[s]) * hv, 0),
                         add(gamma_op(b, s, GammaKind::One),
                             gamma_op(b, t, GammaKind::One))));
  }
  rhs = add(rhs, scale(Complex(g / 4.0 * hsq, 0), identity_op(b.dim)));
  CHECK(max_abs_diff(lhs, rhs) < 1e-13);
}

TEST_CASE("coulomb square form") {
  const auto lat = build_lattice(1, 2);
  const auto b = build_basis(lat);
  const double gp = 0.7;
  const auto repul = build_repul_fields(b, lat, gp, FieldConfig::zero(lat));
  OperatorMatrix direct = zero_op(b.dim);
  for (int s = 0; s < lat.n_sites; ++s)
    direct = add(direct, scale(Complex(gp, 0),
                               mul(gamma_op(b, s, GammaKind::Three),
                                   gamma_op(b, lat.neighbor(s, 1, +1),
                                            GammaKind::Three))));
  CHECK(max_abs_diff(repul, direct) < 1e-13);

  // conserved rotation generator
  OperatorMatrix total_g3 = zero_op(b.dim);
  for (int s = 0; s < lat.n_sites; ++s)
    total_g3 = add(total_g3, gamma_op(b, s, GammaKind::Three));
  CHECK(max_abs(commutator(repul, total_g3)) == 0.0);
}

TEST_CASE("order parameter") {
  const auto lat = build_lattice(1, 1);
  const auto b = build_basis(lat);
  const auto o = build_order_param(b, lat);
  CHECK(is_hermitian(o, 0.0));

  // matches the explicit fermion form
  OperatorMatrix direct = zero_op(b.dim);
  for (int s = 0; s < lat.n_sites; ++s) {
    const auto pair = mul(creation_op(b, s, Spin::Up),
                          creation_op(b, s, Spin::Down));
    direct = add(direct,
                 scale(Complex(0, sublattice_sign(lat.coords[s])),
                       sub(pair, adjoint(pair))));
  }
  CHECK(max_abs_diff(o, direct) == 0.0);

  // integer spectrum, symmetric about zero, bounded by the site count
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(o.mat)};
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double e = es.eigenvalues()[i];
    CHECK(std::abs(e - std::round(e)) < 1e-12);
    CHECK(std::abs(e) <= 2.0 + 1e-12);
    CHECK(std::abs(es.eigenvalues()[es.eigenvalues().size() - 1 - i] + e) <
          1e-12);
  }
}

TEST_CASE("full Hamiltonian symmetries") {
  const auto lat = build_lattice(1, 2);
  const auto b = build_basis(lat);
  ModelParams mp{0.3, 1.1, 0.4, 0.2, 1.0};
  const auto h = build_full(b, lat, mp);
  CHECK(is_hermitian(h, 1e-14));
  CHECK(max_abs(commutator(h, sz_operator(b, lat))) == 0.0);

  ModelParams zero{0.0, 0.0, 0.0, 0.0, 1.0};
  CHECK(max_abs(build_full(b, lat, zero)) == 0.0);
}

TEST_CASE("ramp profile") {
  CHECK_THROWS_AS((void)build_ramp(build_lattice(1, 2), 1), GeometryError);

  const auto lat = build_lattice(1, 5);
  const int R = 2;
  const auto f = build_ramp(lat, R);
  auto at = [&](int c) {
    std::vector<int> x = {c};
    return f.values[0][lat.site_index(x)];
  };
  CHECK(at(0) == 1.0);
  CHECK(at(R + 1) == 1.0);                       // plateau edge
  CHECK(at(2 * R) == doctest::Approx(1.0 / R));  // ramp edge, both sides
  CHECK(at(-2 * R) == doctest::Approx(1.0 / R));
  CHECK(at(5) == 0.0);  // outside

  // combined weight doubles the profile on the window interior
  const auto lat3 = build_lattice(1, 3);
  const auto f3 = build_ramp(lat3, 1);
  const auto w = combined_ramp_weight(lat3, f3);
  for (int c : {-1, 0, 1}) {
    std::vector<int> x = {c};
    CHECK(w[lat3.site_index(x)] == 2.0);
  }
}
