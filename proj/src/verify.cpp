#include "rpbcs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rpbcs/bzconst.hpp"
#include "rpbcs/errors.hpp"
#include "rpbcs/hamiltonian.hpp"
#include "rpbcs/thermal.hpp"
#include "rpbcs/transforms.hpp"

namespace rpbcs {

namespace {

constexpr double kExactTol = 1e-12;

std::string beta_tag(double beta) {
  std::ostringstream os;
  os << "beta=" << beta;
  return os.str();
}

std::string k_tag(std::span<const int> k) {
  std::string s = "k=(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(k[i]);
  }
  return s + ")";
}

/// Shared context: lattice, basis, model operators.
struct Ctx {
  const SuiteParams& p;
  LatticeSpec lat;
  FockBasis basis;
  ModelParams mp;

  explicit Ctx(const SuiteParams& p_) : p(p_) {
    lat = build_lattice(p.d, p.L);
    basis = build_basis(lat, p.op_cap);
    mp.kappa = p.kappa;
    mp.g = p.g;
    mp.gprime = p.gprime;
    mp.B = p.B;
  }

  double tol(double t) const { return t * p.tolerance_scale; }
};

FieldConfig random_fields(const LatticeSpec& lat, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  FieldConfig f = FieldConfig::zero(lat);
  for (auto& comp : f.values)
    for (double& v : comp) v = u(rng);
  return f;
}

// --- ALGEBRA -----------------------------------------------------------------

void algebra_suite(const Ctx& c, std::vector<Check>& out) {
  const auto& b = c.basis;
  const auto& lat = c.lat;
  const std::size_t dim = b.dim;

  // canonical anticommutation relations over every mode pair
  double worst_mixed = 0.0, worst_ann = 0.0, worst_nilp = 0.0;
  std::vector<OperatorMatrix> cr, an;
  for (int s = 0; s < lat.n_sites; ++s)
    for (Spin sp : {Spin::Up, Spin::Down}) {
      cr.push_back(creation_op(b, s, sp));
      an.push_back(adjoint(cr.back()));
    }
  const OperatorMatrix one = identity_op(dim);
  for (std::size_t i = 0; i < cr.size(); ++i) {
    worst_nilp = std::max(worst_nilp, max_abs(mul(cr[i], cr[i])));
    for (std::size_t j = 0; j < cr.size(); ++j) {
      OperatorMatrix acomm = anticommutator(an[i], cr[j]);
      if (i == j) acomm = sub(acomm, one);
      worst_mixed = std::max(worst_mixed, max_abs(acomm));
      worst_ann = std::max(worst_ann, max_abs(anticommutator(an[i], an[j])));
    }
  }
  out.push_back(Check::identity("algebra/car_mixed",
                                "{a_i, a_j^dag} = delta_ij", worst_mixed,
                                c.tol(kExactTol)));
  out.push_back(Check::identity("algebra/car_annihilation", "{a_i, a_j} = 0",
                                worst_ann, c.tol(kExactTol)));
  out.push_back(Check::identity("algebra/nilpotency", "(a_i^dag)^2 = 0",
                                worst_nilp, c.tol(kExactTol)));

  // pair-operator commutation table, per site, plus cross-site commuting
  double w12 = 0.0, w23 = 0.0, w31 = 0.0, wsq = 0.0, wcross = 0.0;
  const Complex two_i(0.0, 2.0);
  for (int s = 0; s < lat.n_sites; ++s) {
    const OperatorMatrix g1 = gamma_op(b, s, GammaKind::One);
    const OperatorMatrix g2 = gamma_op(b, s, GammaKind::Two);
    const OperatorMatrix g3 = gamma_op(b, s, GammaKind::Three);
    w12 = std::max(w12, max_abs_diff(commutator(g1, g2), scale(two_i, g3)));
    w23 = std::max(w23, max_abs_diff(commutator(g2, g3), scale(two_i, g1)));
    w31 = std::max(w31, max_abs_diff(commutator(g3, g1), scale(two_i, g2)));
    // [Γ1]^2 = 2 n_up n_dn - n_up - n_dn + 1
    const OperatorMatrix nu = number_op(b, s, Spin::Up);
    const OperatorMatrix nd = number_op(b, s, Spin::Down);
    OperatorMatrix rhs = add(
        sub(sub(scale(Complex(2.0, 0.0), mul(nu, nd)), nu), nd), one);
    wsq = std::max(wsq, max_abs_diff(mul(g1, g1), rhs));
    for (int t = 0; t < lat.n_sites; ++t) {
      if (t == s) continue;
      wcross = std::max(
          wcross, max_abs(commutator(g1, gamma_op(b, t, GammaKind::Two))));
    }
  }
  out.push_back(Check::identity("algebra/gamma_comm_12",
                                "[G1_x, G2_x] = 2i G3_x", w12, c.tol(kExactTol)));
  out.push_back(Check::identity("algebra/gamma_comm_23",
                                "[G2_x, G3_x] = 2i G1_x", w23, c.tol(kExactTol)));
  out.push_back(Check::identity("algebra/gamma_comm_31",
                                "[G3_x, G1_x] = 2i G2_x", w31, c.tol(kExactTol)));
  out.push_back(Check::identity("algebra/gamma1_square",
                                "G1^2 = 2 n_up n_dn - n_up - n_dn + 1", wsq,
                                c.tol(kExactTol)));
  out.push_back(Check::identity("algebra/gamma_cross_site",
                                "[G_x, G_y] = 0 for x != y", wcross,
                                c.tol(kExactTol)));

  // Majorana relations
  double wxx = 0.0, wee = 0.0, wxe = 0.0, wsq2 = 0.0, wrec = 0.0;
  for (int s = 0; s < lat.n_sites; ++s)
    for (Spin sp : {Spin::Up, Spin::Down}) {
      const OperatorMatrix xi = majorana_op(b, s, sp, MajoranaKind::Xi);
      const OperatorMatrix eta = majorana_op(b, s, sp, MajoranaKind::Eta);
      wsq2 = std::max(wsq2, max_abs_diff(mul(xi, xi), one));
      wsq2 = std::max(wsq2, max_abs_diff(mul(eta, eta), one));
      OperatorMatrix rec = scale(Complex(0.5, 0.0),
                                 add(xi, scale(Complex(0.0, 1.0), eta)));
      wrec = std::max(wrec, max_abs_diff(rec, annihilation_op(b, s, sp)));
      for (int t = 0; t < lat.n_sites; ++t)
        for (Spin tp : {Spin::Up, Spin::Down}) {
          const OperatorMatrix xj = majorana_op(b, t, tp, MajoranaKind::Xi);
          const OperatorMatrix ej = majorana_op(b, t, tp, MajoranaKind::Eta);
          OperatorMatrix axx = anticommutator(xi, xj);
          OperatorMatrix aee = anticommutator(eta, ej);
          if (t == s && tp == sp) {
            axx = sub(axx, scale(Complex(2.0, 0.0), one));
            aee = sub(aee, scale(Complex(2.0, 0.0), one));
          }
          wxx = std::max(wxx, max_abs(axx));
          wee = std::max(wee, max_abs(aee));
          wxe = std::max(wxe, max_abs(anticommutator(xi, ej)));
        }
    }
  out.push_back(Check::identity("algebra/majorana_xi_pairs",
                                "{xi_i, xi_j} = 2 delta_ij", wxx,
                                c.tol(kExactTol)));
  out.push_back(Check::identity("algebra/majorana_eta_pairs",
                                "{eta_i, eta_j} = 2 delta_ij", wee,
                                c.tol(kExactTol)));
  out.push_back(Check::identity("algebra/majorana_mixed_pairs",
                                "{xi_i, eta_j} = 0", wxe, c.tol(kExactTol)));
  out.push_back(Check::identity("algebra/majorana_squares",
                                "xi^2 = eta^2 = 1", wsq2, c.tol(kExactTol)));
  out.push_back(Check::identity("algebra/majorana_reconstruction",
                                "a = (xi + i eta)/2", wrec, c.tol(kExactTol)));

  // pair-state eigenvectors: Γ1 (1 ± a†a†)|0> = ±(...), Γ2 exchanges branches
  {
    double weig = 0.0, wexc = 0.0;
    const OperatorMatrix g1 = gamma_op(b, 0, GammaKind::One);
    const OperatorMatrix pair = gamma_op(b, 0, GammaKind::Plus);
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    vac[0] = 1.0;
    for (double sgn : {1.0, -1.0}) {
      Eigen::VectorXcd v = vac + sgn * (pair.mat * vac);
      Eigen::VectorXcd gv = g1.mat * v;
      weig = std::max(weig, (gv - sgn * v).cwiseAbs().maxCoeff());
      // (a†a† - aa)(1 ± a†a†)|0> = ∓(1 ∓ a†a†)|0>
      Eigen::VectorXcd ev =
          (pair.mat - SpMat(pair.mat.adjoint())) * v;
      Eigen::VectorXcd target = vac - sgn * (pair.mat * vac);
      wexc = std::max(wexc, (ev + sgn * target).cwiseAbs().maxCoeff());
    }
    out.push_back(Check::identity("algebra/pair_state_eigen",
                                  "G1 (1 +- a'a')|0> = +-(1 +- a'a')|0>", weig,
                                  c.tol(kExactTol)));
    out.push_back(Check::identity("algebra/pair_state_exchange",
                                  "(a'a' - aa)(1 +- a'a')|0> = -+(1 -+ a'a')|0>",
                                  wexc, c.tol(kExactTol)));
  }

  // U(1) rotation of the pair operators at a grid of angles
  {
    double worst = 0.0;
    for (double theta : {0.0, std::numbers::pi / 4, std::numbers::pi / 2,
                         std::numbers::pi}) {
      const UnitaryMatrix u = u_rotation(b, lat, theta);
      for (int s = 0; s < std::min(lat.n_sites, 2); ++s) {
        const OperatorMatrix g1 = gamma_op(b, s, GammaKind::One);
        const OperatorMatrix g2 = gamma_op(b, s, GammaKind::Two);
        OperatorMatrix want1 = add(scale(Complex(std::cos(theta), 0.0), g1),
                                   scale(Complex(std::sin(theta), 0.0), g2));
        OperatorMatrix want2 = sub(scale(Complex(std::cos(theta), 0.0), g2),
                                   scale(Complex(std::sin(theta), 0.0), g1));
        worst = std::max(worst, max_abs_diff(conjugate(g1, u), want1));
        worst = std::max(worst, max_abs_diff(conjugate(g2, u), want2));
      }
    }
    out.push_back(Check::identity(
        "algebra/u1_rotation",
        "U(th)' G1 U(th) = cos th G1 + sin th G2 (and G2 likewise)", worst,
        c.tol(kExactTol)));
  }

  // momentum completeness: Σ_p Γ̂_p Γ̂_{-p} = Σ_x (Γ1_x)^2
  {
    const BZGrid grid = BZGrid::lattice_grid(lat.d, lat.L);
    OperatorMatrix lhs = zero_op(dim);
    for (const auto& k : grid.kpoints) {
      const OperatorMatrix gp = momentum_gamma(b, lat, k);
      lhs = add(lhs, mul(gp, adjoint(gp)));
    }
    OperatorMatrix rhs = zero_op(dim);
    for (int s = 0; s < lat.n_sites; ++s) {
      const OperatorMatrix g1 = gamma_op(b, s, GammaKind::One);
      rhs = add(rhs, mul(g1, g1));
    }
    out.push_back(Check::identity("algebra/momentum_completeness",
                                  "sum_p Gp G-p = sum_x G1_x^2",
                                  max_abs_diff(lhs, rhs), c.tol(1e-11)));
  }

  // window commutator [G3[h~], A_R] = (4i/|W_R|) Σ_{x in W_R} (-1)^{Σx} G2_x
  if (4 * c.p.R + 1 <= 2 * lat.L) {
    const FieldConfig ramp = build_ramp(lat, c.p.R);
    const auto weight = combined_ramp_weight(lat, ramp);
    const OperatorMatrix g3w = gamma3_weighted(b, lat, weight);
    const OperatorMatrix ar = local_order_op(b, lat, c.p.R);
    OperatorMatrix rhs = zero_op(dim);
    long long count = 0;
    for (int s = 0; s < lat.n_sites; ++s) {
      int linf = 0;
      for (int cc : lat.coords[s]) linf = std::max(linf, std::abs(cc));
      if (linf > c.p.R) continue;
      ++count;
      rhs = add(rhs, scale(Complex(sublattice_sign(lat.coords[s]), 0.0),
                           gamma_op(b, s, GammaKind::Two)));
    }
    rhs = scale(Complex(0.0, 4.0 / static_cast<double>(count)), rhs);
    out.push_back(Check::identity("algebra/window_commutator",
                                  "[G3[h~], A_R] = (4i/|W_R|) sum (-1)^x G2_x",
                                  max_abs_diff(commutator(g3w, ar), rhs),
                                  c.tol(kExactTol)));
  } else {
    out.push_back(Check::skipped("algebra/window_commutator",
                                 "[G3[h~], A_R] = (4i/|W_R|) sum (-1)^x G2_x",
                                 "window 4R+1 exceeds the box side"));
  }
}

// --- GAUGE --------------------------------------------------------------------

void gauge_suite(const Ctx& c, std::vector<Check>& out, std::mt19937_64& rng) {
  const auto& b = c.basis;
  const auto& lat = c.lat;
  const std::size_t dim = b.dim;
  const ModelParams& mp = c.mp;

  // boundary-sign relocation
  {
    const int ell = 1;
    const UnitaryMatrix u = u_bc(b, lat, 1, ell);
    const OperatorMatrix h = build_full(b, lat, mp);
    const auto bonds = enumerate_bonds(lat);
    const auto moved = relocate_boundary_signs(lat, bonds, 1, ell);
    OperatorMatrix target = build_hop_from_bonds(b, lat, moved, mp.kappa);
    target = add(target, build_int(b, lat, mp.g, mp.gprime));
    if (mp.B != 0.0)
      target = add(target, scale(Complex(-mp.B, 0.0), build_order_param(b, lat)));
    out.push_back(Check::identity(
        "gauge/boundary_relocation",
        "U_bc' H U_bc = H with the minus bonds moved to the cut",
        max_abs_diff(conjugate(h, u), target), c.tol(kExactTol)));
  }

  // amplitude-swap sign action, term by term on bulk bonds
  if (lat.d >= 2) {
    double worst_i = 0.0, worst_j = 0.0;
    const int i = 1, j = 2;
    const UnitaryMatrix u = u_ha(b, lat, i, j);
    for (const Bond& bond : enumerate_bonds(lat)) {
      if (bond.is_boundary) continue;
      OperatorMatrix term = zero_op(dim);
      for (Spin sp : {Spin::Up, Spin::Down}) {
        const OperatorMatrix cf = creation_op(b, bond.from, sp);
        const OperatorMatrix ct = creation_op(b, bond.to, sp);
        term = add(term, sub(mul(cf, adjoint(ct)), mul(ct, adjoint(cf))));
      }
      const auto& x = lat.coords[bond.from];
      if (bond.direction == i) {
        const double sgn = (x[j - 1] % 2) ? -1.0 : 1.0;
        worst_i = std::max(worst_i, max_abs_diff(conjugate(term, u),
                                                 scale(Complex(sgn, 0.0), term)));
      } else if (bond.direction == j) {
        const double sgn = (x[i - 1] % 2) ? -1.0 : 1.0;
        worst_j = std::max(worst_j, max_abs_diff(conjugate(term, u),
                                                 scale(Complex(sgn, 0.0), term)));
      }
    }
    out.push_back(Check::identity(
        "gauge/amplitude_swap_dir_i",
        "U_ha' T_i(x) U_ha = (-1)^{x_j} T_i(x) on bulk bonds", worst_i,
        c.tol(kExactTol)));
    out.push_back(Check::identity(
        "gauge/amplitude_swap_dir_j",
        "U_ha' T_j(x) U_ha = (-1)^{x_i} T_j(x) on bulk bonds", worst_j,
        c.tol(kExactTol)));
  } else {
    out.push_back(Check::skipped("gauge/amplitude_swap_dir_i",
                                 "U_ha' T_i U_ha sign action",
                                 "needs d >= 2"));
    out.push_back(Check::skipped("gauge/amplitude_swap_dir_j",
                                 "U_ha' T_j U_ha sign action",
                                 "needs d >= 2"));
  }

  // first-direction hopping in Majorana form after the dressing unitary
  {
    const UnitaryMatrix ut = u_tilde_one(b, lat);
    OperatorMatrix hop1 = zero_op(dim);
    for (const Bond& bond : enumerate_bonds(lat)) {
      if (bond.direction != 1) continue;
      for (Spin sp : {Spin::Up, Spin::Down}) {
        const OperatorMatrix cf = creation_op(b, bond.from, sp);
        const OperatorMatrix ct = creation_op(b, bond.to, sp);
        hop1 = add(hop1, scale(Complex(0.0, mp.kappa) * bond.hop_phase,
                               sub(mul(cf, adjoint(ct)), mul(ct, adjoint(cf)))));
      }
    }
    OperatorMatrix rhs = zero_op(dim);
    for (const Bond& bond : enumerate_bonds(lat)) {
      if (bond.direction != 1) continue;
      const double sgn = bond.is_boundary ? -1.0 : 1.0;
      for (Spin sp : {Spin::Up, Spin::Down}) {
        const OperatorMatrix xi_f = majorana_op(b, bond.from, sp, MajoranaKind::Xi);
        const OperatorMatrix xi_t = majorana_op(b, bond.to, sp, MajoranaKind::Xi);
        const OperatorMatrix eta_f =
            majorana_op(b, bond.from, sp, MajoranaKind::Eta);
        const OperatorMatrix eta_t =
            majorana_op(b, bond.to, sp, MajoranaKind::Eta);
        rhs = add(rhs, scale(Complex(0.0, sgn * mp.kappa / 2.0),
                             sub(mul(xi_f, xi_t), mul(eta_f, eta_t))));
      }
    }
    out.push_back(Check::identity(
        "gauge/hop1_majorana_form",
        "U~' H_hop,1 U~ = (i k/2) sum (xi xi - eta eta)",
        max_abs_diff(conjugate(hop1, ut), rhs), c.tol(kExactTol)));
  }

  // dressed interaction squares, random fields
  {
    const UnitaryMatrix ut = u_tilde_one(b, lat);
    FieldConfig h = random_fields(lat, rng);
    const double dsign = (lat.d % 2 == 0) ? -1.0 : 1.0;  // (-1)^{d-1}
    auto tail_sign = [&](int site) {
      int s = 0;
      for (int m = 1; m < lat.d; ++m) s += lat.coords[site][m];
      return (s % 2) ? -1.0 : 1.0;
    };
    // direction 1: squares with Γ1 difference and dressed field
    {
      const OperatorMatrix lhs =
          conjugate(build_int_fields_dir(b, lat, mp.g, h, 1), ut);
      OperatorMatrix rhs = zero_op(dim);
      for (int s = 0; s < lat.n_sites; ++s) {
        const int t = lat.neighbor(s, 1, +1);
        OperatorMatrix lin = sub(gamma_op(b, s, GammaKind::One),
                                 gamma_op(b, t, GammaKind::One));
        const double hv = dsign * tail_sign(s) * h.values[0][s];
        if (hv != 0.0)
          lin = add(lin, scale(Complex(hv, 0.0), identity_op(dim)));
        rhs = add(rhs, scale(Complex(mp.g / 4.0, 0.0), mul(lin, lin)));
        OperatorMatrix diff = sub(gamma_op(b, s, GammaKind::Two),
                                  gamma_op(b, t, GammaKind::Two));
        rhs = add(rhs, scale(Complex(-mp.g / 4.0, 0.0), mul(diff, diff)));
      }
      out.push_back(Check::identity(
          "gauge/dressed_int_dir1",
          "U~' H_int,1(h) U~ = squares with G1 differences and dressed h",
          max_abs_diff(lhs, rhs), c.tol(kExactTol)));
    }
    if (lat.d >= 2) {
      const int j = 2;
      const OperatorMatrix lhs =
          conjugate(build_int_fields_dir(b, lat, mp.g, h, j), ut);
      OperatorMatrix rhs = zero_op(dim);
      for (int s = 0; s < lat.n_sites; ++s) {
        const int t = lat.neighbor(s, j, +1);
        OperatorMatrix lin = add(gamma_op(b, s, GammaKind::One),
                                 gamma_op(b, t, GammaKind::One));
        const double hv = dsign * tail_sign(s) * h.values[j - 1][s];
        if (hv != 0.0)
          lin = add(lin, scale(Complex(hv, 0.0), identity_op(dim)));
        rhs = add(rhs, scale(Complex(mp.g / 4.0, 0.0), mul(lin, lin)));
        OperatorMatrix sum2 = add(gamma_op(b, s, GammaKind::Two),
                                  gamma_op(b, t, GammaKind::Two));
        rhs = add(rhs, scale(Complex(-mp.g / 4.0, 0.0), mul(sum2, sum2)));
      }
      out.push_back(Check::identity(
          "gauge/dressed_int_dirj",
          "U~' H_int,j(h) U~ = squares with G1 sums and dressed h",
          max_abs_diff(lhs, rhs), c.tol(kExactTol)));
    } else {
      out.push_back(Check::skipped("gauge/dressed_int_dirj",
                                   "U~' H_int,j(h) U~ transverse square",
                                   "needs d >= 2"));
    }
  }

  // odd-sublattice quarter rotation flips the pairing sign
  {
    const UnitaryMatrix u = u_odd_quarter(b, lat);
    const OperatorMatrix hint = build_int(b, lat, mp.g, 0.0);
    out.push_back(Check::identity(
        "gauge/pairing_sign_flip", "U_oq' H_pair U_oq = -H_pair",
        max_abs_diff(conjugate(hint, u), scale(Complex(-1.0, 0.0), hint)),
        c.tol(kExactTol)));
  }

  // spin-reflection factorization of the pairing term
  {
    const AntiLinearMap th = reflection_spin(b, lat);
    const int x = 0;
    const int y = lat.neighbor(0, 1, +1);
    const OperatorMatrix hopup =
        mul(creation_op(b, x, Spin::Up), annihilation_op(b, y, Spin::Up));
    const OperatorMatrix lhs =
        mul(mul(creation_op(b, x, Spin::Up), creation_op(b, x, Spin::Down)),
            mul(annihilation_op(b, y, Spin::Down),
                annihilation_op(b, y, Spin::Up)));
    const OperatorMatrix rhs = mul(hopup, apply_antilinear(th, hopup));
    out.push_back(Check::identity(
        "gauge/spin_factorization",
        "a'_xu a'_xd a_yd a_yu = (a'_xu a_yu) th_spin(a'_xu a_yu)",
        max_abs_diff(lhs, rhs), c.tol(kExactTol)));
  }

  // particle-hole symmetry
  {
    const UnitaryMatrix u = u_particle_hole(b, lat);
    const OperatorMatrix h = build_full(b, lat, mp);
    out.push_back(Check::identity("gauge/particle_hole_h",
                                  "U_ph' H(B) U_ph = H(B)",
                                  max_abs_diff(conjugate(h, u), h),
                                  c.tol(kExactTol)));
    const OperatorMatrix g3 = gamma_op(b, 0, GammaKind::Three);
    out.push_back(Check::identity(
        "gauge/particle_hole_g3", "U_ph' G3 U_ph = -G3",
        max_abs_diff(conjugate(g3, u), scale(Complex(-1.0, 0.0), g3)),
        c.tol(kExactTol)));
    const OperatorMatrix o = build_order_param(b, lat);
    out.push_back(Check::identity("gauge/particle_hole_order",
                                  "U_ph' O U_ph = O",
                                  max_abs_diff(conjugate(o, u), o),
                                  c.tol(kExactTol)));
  }

  // mode-swap action and odd-sublattice Majorana action
  {
    double worst = 0.0;
    const UnitaryMatrix u = u_mode_swap(b, 0, Spin::Up);
    for (int s = 0; s < lat.n_sites; ++s)
      for (Spin sp : {Spin::Up, Spin::Down}) {
        const OperatorMatrix a = annihilation_op(b, s, sp);
        const OperatorMatrix want = (s == 0 && sp == Spin::Up)
                                        ? creation_op(b, s, sp)
                                        : a;
        worst = std::max(worst, max_abs_diff(conjugate(a, u), want));
      }
    out.push_back(Check::identity("gauge/mode_swap_action",
                                  "u' a u = a^dag on one mode, fixes the rest",
                                  worst, c.tol(kExactTol)));

    const UnitaryMatrix uo = u_odd(b, lat);
    double wxi = 0.0, weta = 0.0;
    for (int s = 0; s < lat.n_sites; ++s)
      for (Spin sp : {Spin::Up, Spin::Down}) {
        const OperatorMatrix xi = majorana_op(b, s, sp, MajoranaKind::Xi);
        const OperatorMatrix eta = majorana_op(b, s, sp, MajoranaKind::Eta);
        const double sgn = (sublattice_sign(lat.coords[s]) == -1) ? -1.0 : 1.0;
        wxi = std::max(wxi, max_abs_diff(conjugate(xi, uo), xi));
        weta = std::max(weta, max_abs_diff(conjugate(eta, uo),
                                           scale(Complex(sgn, 0.0), eta)));
      }
    out.push_back(Check::identity("gauge/odd_swap_xi", "U_odd' xi U_odd = xi",
                                  wxi, c.tol(kExactTol)));
    out.push_back(Check::identity("gauge/odd_swap_eta",
                                  "U_odd' eta U_odd = -eta on the odd sites",
                                  weta, c.tol(kExactTol)));
  }

  // spatial reflection: anti-linear, multiplicative, involutive
  {
    const AntiLinearMap th = reflection_x1(b, lat);
    double wxi = 0.0, weta = 0.0, wg2 = 0.0;
    for (int s = 0; s < lat.n_sites; ++s) {
      std::vector<int> x = lat.coords[s];
      x[0] = 1 - x[0];
      const int t = lat.site_index(x);
      for (Spin sp : {Spin::Up, Spin::Down}) {
        wxi = std::max(wxi, max_abs_diff(
                                apply_antilinear(
                                    th, majorana_op(b, s, sp, MajoranaKind::Xi)),
                                majorana_op(b, t, sp, MajoranaKind::Xi)));
        weta = std::max(
            weta,
            max_abs_diff(
                apply_antilinear(th, majorana_op(b, s, sp, MajoranaKind::Eta)),
                scale(Complex(-1.0, 0.0),
                      majorana_op(b, t, sp, MajoranaKind::Eta))));
      }
      wg2 = std::max(
          wg2, max_abs_diff(apply_antilinear(th, gamma_op(b, s, GammaKind::Two)),
                            scale(Complex(-1.0, 0.0),
                                  gamma_op(b, t, GammaKind::Two))));
    }
    out.push_back(Check::identity("gauge/reflection_xi",
                                  "th(xi_x) = xi_{th(x)}", wxi,
                                  c.tol(kExactTol)));
    out.push_back(Check::identity("gauge/reflection_eta",
                                  "th(eta_x) = -eta_{th(x)}", weta,
                                  c.tol(kExactTol)));
    out.push_back(Check::identity("gauge/reflection_gamma2",
                                  "th(G2_x) = -G2_{th(x)}", wg2,
                                  c.tol(kExactTol)));
    // involution and multiplicativity on a random sparse operator pair
    const OperatorMatrix a = build_hop(b, lat, 1.0);
    const OperatorMatrix g2 = gamma_op(b, 0, GammaKind::Two);
    out.push_back(Check::identity(
        "gauge/reflection_involution", "th(th(A)) = A",
        max_abs_diff(apply_antilinear(th, apply_antilinear(th, a)), a),
        c.tol(kExactTol)));
    out.push_back(Check::identity(
        "gauge/reflection_product", "th(AB) = th(A) th(B)",
        max_abs_diff(apply_antilinear(th, mul(a, g2)),
                     mul(apply_antilinear(th, a), apply_antilinear(th, g2))),
        c.tol(kExactTol)));
  }

  // every named unitary is unitary
  {
    double worst = 0.0;
    worst = std::max(worst, unitarity_defect(u_bc(b, lat, 1, 1)));
    worst = std::max(worst, unitarity_defect(u_tilde_one(b, lat)));
    worst = std::max(worst, unitarity_defect(u_particle_hole(b, lat)));
    worst = std::max(worst, unitarity_defect(u_odd_quarter(b, lat)));
    worst = std::max(worst, unitarity_defect(u_rotation(b, lat, 0.7)));
    if (lat.d >= 2) {
      worst = std::max(worst, unitarity_defect(u_ha(b, lat, 1, 2)));
      worst = std::max(worst, unitarity_defect(u_phase_even(b, lat, 2)));
    }
    out.push_back(Check::identity("gauge/unitarity", "U'U = 1", worst,
                                  c.tol(kExactTol)));
  }
}

// --- DOMINATION ----------------------------------------------------------------

void domination_suite(const Ctx& c, std::vector<Check>& out,
                      std::mt19937_64& rng) {
  const auto& b = c.basis;
  const auto& lat = c.lat;
  const ModelParams& mp = c.mp;

  const OperatorMatrix hop = build_hop(b, lat, mp.kappa);
  const OperatorMatrix order = build_order_param(b, lat);
  const OperatorMatrix base_pairing =
      build_int_fields(b, lat, mp.g, FieldConfig::zero(lat));
  const OperatorMatrix h_pair_0 = [&] {
    OperatorMatrix h = add(hop, base_pairing);
    if (mp.B != 0.0) h = add(h, scale(Complex(-mp.B, 0.0), order));
    return h;
  }();
  const SpectralData sd_pair_0 = diagonalize(h_pair_0, b, c.p.dense_cap);

  // base Hamiltonian without Coulomb; the deformed Coulomb square is added on top
  ModelParams base = mp;
  base.gprime = 0.0;
  const OperatorMatrix full_base = build_full(b, lat, base);
  const OperatorMatrix repul0 =
      build_repul_fields(b, lat, mp.gprime, FieldConfig::zero(lat));
  const OperatorMatrix h_repul_0 = add(full_base, repul0);
  const SpectralData sd_repul_0 = diagonalize(h_repul_0, b, c.p.dense_cap);

  for (double beta : c.p.betas) {
    const double logz_pair_0 = sd_pair_0.log_partition(beta);
    const double logz_repul_0 = sd_repul_0.log_partition(beta);

    double worst_pair = -1e300, worst_repul = -1e300;
    for (int draw = 0; draw < c.p.domination_draws; ++draw) {
      {
        const FieldConfig h = random_fields(lat, rng);
        OperatorMatrix hh = add(hop, build_int_fields(b, lat, mp.g, h));
        if (mp.B != 0.0) hh = add(hh, scale(Complex(-mp.B, 0.0), order));
        const SpectralData sd = diagonalize(hh, b, c.p.dense_cap);
        worst_pair = std::max(worst_pair, sd.log_partition(beta) - logz_pair_0);
      }
      {
        const FieldConfig hp = random_fields(lat, rng);
        const OperatorMatrix hh =
            add(full_base, build_repul_fields(b, lat, mp.gprime, hp));
        const SpectralData sd = diagonalize(hh, b, c.p.dense_cap);
        worst_repul =
            std::max(worst_repul, sd.log_partition(beta) - logz_repul_0);
      }
    }
    out.push_back(Check::bound(
        "domination/pairing_field[" + beta_tag(beta) + "]",
        "log Tr e^{-bH(h)} <= log Tr e^{-bH(0)} over random h", worst_pair, 0.0,
        c.tol(1e-10)));
    out.push_back(Check::bound(
        "domination/coulomb_field[" + beta_tag(beta) + "]",
        "log Tr e^{-bH(g',h')} <= log Tr e^{-bH(g',0)} over random h'",
        worst_repul, 0.0, c.tol(1e-10)));

    // equality of the literal square form at h = 0
    out.push_back(Check::identity(
        "domination/equality_at_zero[" + beta_tag(beta) + "]",
        "H(h=0) square form reproduces H exactly",
        std::abs(sd_pair_0.log_partition(beta) -
                 diagonalize(build_full(b, lat,
                                        ModelParams{mp.kappa, mp.g, 0.0, mp.B,
                                                    mp.beta}),
                             b, c.p.dense_cap)
                     .log_partition(beta)),
        c.tol(1e-12)));
  }
}

// --- CORRELATION -----------------------------------------------------------------

void correlation_suite(const Ctx& c, std::vector<Check>& out,
                       std::mt19937_64& rng) {
  const auto& b = c.basis;
  const auto& lat = c.lat;
  const OperatorMatrix h = build_full(b, lat, c.mp);
  const SpectralData sd = diagonalize(h, b, c.p.dense_cap);

  for (double beta : c.p.betas) {
    const std::string tag = "[" + beta_tag(beta) + "]";

    // nearest-neighbour pair correlators are non-positive
    double worst1 = -1e300, worst2 = -1e300;
    for (int s = 0; s < lat.n_sites; ++s)
      for (int dir = 1; dir <= lat.d; ++dir) {
        const int t = lat.neighbor(s, dir, +1);
        const Complex v1 = thermal_expectation(
            sd, mul(gamma_op(b, s, GammaKind::One), gamma_op(b, t, GammaKind::One)),
            beta);
        const Complex v2 = thermal_expectation(
            sd, mul(gamma_op(b, s, GammaKind::Two), gamma_op(b, t, GammaKind::Two)),
            beta);
        worst1 = std::max(worst1, v1.real());
        worst2 = std::max(worst2, v2.real());
      }
    out.push_back(Check::bound("correlation/nn_gamma1" + tag,
                               "<G1_x G1_y> <= 0 for |x-y| = 1", worst1, 0.0,
                               c.tol(1e-10)));
    out.push_back(Check::bound("correlation/nn_gamma2" + tag,
                               "<G2_x G2_y> <= 0 for |x-y| = 1", worst2, 0.0,
                               c.tol(1e-10)));

    // staggered pairing correlator sign, all pairs
    double worst_sc = -1e300;
    for (int x = 0; x < lat.n_sites; ++x)
      for (int y = 0; y < lat.n_sites; ++y) {
        const OperatorMatrix op =
            mul(mul(creation_op(b, x, Spin::Up), creation_op(b, x, Spin::Down)),
                mul(annihilation_op(b, y, Spin::Down),
                    annihilation_op(b, y, Spin::Up)));
        const Complex v = thermal_expectation(sd, op, beta);
        const double sgn = sublattice_sign(lat.coords[x]) *
                           sublattice_sign(lat.coords[y]);
        worst_sc = std::max(worst_sc, -sgn * v.real());
      }
    out.push_back(Check::bound("correlation/staggered_pairing" + tag,
                               "(-1)^{x+y} <a'a'aa> >= 0 for all pairs",
                               worst_sc, 0.0, c.tol(1e-10)));

    // <(n_up - z)(n_dn - conj z)> >= 0 for random complex z
    {
      std::uniform_real_distribution<double> u(-2.0, 2.0);
      const OperatorMatrix nu = number_op(b, 0, Spin::Up);
      const OperatorMatrix nd = number_op(b, 0, Spin::Down);
      const Complex nud = thermal_expectation(sd, mul(nu, nd), beta);
      const Complex eu = thermal_expectation(sd, nu, beta);
      const Complex ed = thermal_expectation(sd, nd, beta);
      double worst = -1e300;
      for (int i = 0; i < c.p.zeta_draws; ++i) {
        const Complex z(u(rng), u(rng));
        const Complex v = nud - std::conj(z) * eu - z * ed + z * std::conj(z);
        worst = std::max(worst, -v.real());
      }
      out.push_back(Check::bound("correlation/occupation_quadratic" + tag,
                                 "<(n_up - z)(n_dn - conj z)> >= 0", worst, 0.0,
                                 c.tol(1e-10)));
    }

    // half filling and its consequences
    {
      double worst = 0.0, worst_docc = -1e300, worst_g1sq = -1e300;
      for (int s = 0; s < lat.n_sites; ++s) {
        for (Spin sp : {Spin::Up, Spin::Down}) {
          const Complex v = thermal_expectation(sd, number_op(b, s, sp), beta);
          worst = std::max(worst, std::abs(v - Complex(0.5, 0.0)));
        }
        const Complex docc = thermal_expectation(
            sd, mul(number_op(b, s, Spin::Up), number_op(b, s, Spin::Down)),
            beta);
        worst_docc = std::max(worst_docc, 0.25 - docc.real());
        const OperatorMatrix g1 = gamma_op(b, s, GammaKind::One);
        const Complex g1sq = thermal_expectation(sd, mul(g1, g1), beta);
        worst_g1sq = std::max(worst_g1sq, 0.5 - g1sq.real());
      }
      out.push_back(Check::identity("correlation/half_filling" + tag,
                                    "<n_{x,s}> = 1/2", worst, c.tol(1e-10)));
      out.push_back(Check::bound("correlation/double_occupancy" + tag,
                                 "<n_up n_dn> >= 1/4", worst_docc, 0.0,
                                 c.tol(1e-10)));
      out.push_back(Check::bound("correlation/gamma1_square_lower" + tag,
                                 "<G1^2> >= 1/2", worst_g1sq, 0.0,
                                 c.tol(1e-10)));
    }

    // two-unit translation invariance (gauge-equivalent shift)
    if (2 * lat.L >= 4) {
      double worst = 0.0;
      for (int s = 0; s < std::min(lat.n_sites, 4); ++s) {
        int shifted = s;
        for (int step = 0; step < 2; ++step) shifted = lat.neighbor(shifted, 1, +1);
        for (GammaKind kind : {GammaKind::One, GammaKind::Two}) {
          const Complex v0 =
              thermal_expectation(sd, gamma_op(b, s, kind), beta);
          const Complex v1 =
              thermal_expectation(sd, gamma_op(b, shifted, kind), beta);
          worst = std::max(worst, std::abs(v0 - v1));
          const int nb0 = lat.neighbor(s, 1, +1);
          int nb1 = nb0;
          for (int step = 0; step < 2; ++step) nb1 = lat.neighbor(nb1, 1, +1);
          const Complex w0 = thermal_expectation(
              sd, mul(gamma_op(b, s, kind), gamma_op(b, nb0, kind)), beta);
          const Complex w1 = thermal_expectation(
              sd, mul(gamma_op(b, shifted, kind), gamma_op(b, nb1, kind)), beta);
          worst = std::max(worst, std::abs(w0 - w1));
        }
      }
      out.push_back(Check::identity("correlation/shift_two_units" + tag,
                                    "<G_x> = <G_{x+2e}> and the two-point analog",
                                    worst, c.tol(1e-10)));
    } else {
      out.push_back(Check::skipped("correlation/shift_two_units" + tag,
                                   "<G_x> = <G_{x+2e}>",
                                   "needs side 2L >= 4"));
    }

    // direction independence of the bond correlator sum
    if (lat.d >= 2) {
      double ref = 0.0, worst = 0.0;
      for (int dir = 1; dir <= lat.d; ++dir) {
        double total = 0.0;
        for (int s = 0; s < lat.n_sites; ++s)
          total += thermal_expectation(
                       sd,
                       mul(gamma_op(b, s, GammaKind::One),
                           gamma_op(b, lat.neighbor(s, dir, +1), GammaKind::One)),
                       beta)
                       .real();
        if (dir == 1) ref = total;
        else worst = std::max(worst, std::abs(total - ref));
      }
      out.push_back(Check::identity("correlation/direction_independence" + tag,
                                    "sum_x <G1_x G1_{x+e1}> = sum_x <G1_x G1_{x+ej}>",
                                    worst, c.tol(1e-10)));
    } else {
      out.push_back(Check::skipped("correlation/direction_independence" + tag,
                                   "bond correlator direction independence",
                                   "needs d >= 2"));
    }
  }
}

// --- INFRARED ---------------------------------------------------------------------

void infrared_suite(const Ctx& c, std::vector<Check>& out) {
  const auto& b = c.basis;
  const auto& lat = c.lat;
  const ModelParams& mp = c.mp;
  const OperatorMatrix h = build_full(b, lat, mp);
  const SpectralData sd = diagonalize(h, b, c.p.dense_cap);
  const BZGrid grid = BZGrid::lattice_grid(lat.d, lat.L);

  for (double beta : c.p.betas) {
    const std::string tag = "[" + beta_tag(beta) + "]";
    double worst_bp = -1e300, worst_dls = -1e300, worst_cp = -1e300;
    for (const auto& k : grid.kpoints) {
      const GbcValues v = gbc_at_p(sd, b, lat, h, k, beta);
      worst_cp = std::max(worst_cp, -v.c_p);
      const double dls_rhs =
          0.5 * (v.b_p + std::sqrt(std::max(0.0, v.b_p * v.b_p +
                                                     beta * v.b_p * v.c_p)));
      worst_dls = std::max(worst_dls, v.g_p - dls_rhs);
      if (!grid.is_q(k) && beta > 0.0) {
        // E_{p+Q} = sum_m (1 + cos p_m)
        double epq = 0.0;
        for (double pm : grid.momentum(k)) epq += 1.0 + std::cos(pm);
        worst_bp = std::max(worst_bp, v.b_p - 1.0 / (2.0 * beta * mp.g * epq));
      }
    }
    out.push_back(Check::bound("infrared/duhamel_bound" + tag,
                               "b_p <= 1/(2 b g E_{p+Q}) for p != Q", worst_bp,
                               0.0, c.tol(1e-9)));
    out.push_back(Check::bound(
        "infrared/dls_chain" + tag,
        "g_p <= (b_p + sqrt(b_p^2 + b b_p c_p))/2", worst_dls, 0.0,
        c.tol(1e-9)));
    out.push_back(Check::bound("infrared/cp_nonnegative" + tag,
                               "c_p >= 0", worst_cp, 0.0, c.tol(1e-10)));

    // sum rules
    double g1sq_sum = 0.0, bond_sum = 0.0;
    for (int s = 0; s < lat.n_sites; ++s) {
      const OperatorMatrix g1 = gamma_op(b, s, GammaKind::One);
      g1sq_sum += thermal_expectation(sd, mul(g1, g1), beta).real();
      bond_sum +=
          thermal_expectation(
              sd, mul(g1, gamma_op(b, lat.neighbor(s, 1, +1), GammaKind::One)),
              beta)
              .real() +
          thermal_expectation(
              sd, mul(g1, gamma_op(b, lat.neighbor(s, 1, -1), GammaKind::One)),
              beta)
              .real();
    }
    // plain sum rule needs <Gp G-p> not symmetrized; recompute directly
    double plain_sum = 0.0;
    for (const auto& k : grid.kpoints) {
      const OperatorMatrix gp = momentum_gamma(b, lat, k);
      plain_sum += thermal_expectation(sd, mul(gp, adjoint(gp)), beta).real();
    }
    out.push_back(Check::identity(
        "infrared/sum_rule_plain" + tag,
        "(1/|L|) sum_p <Gp G-p> = (1/|L|) sum_x <G1_x^2>",
        std::abs(plain_sum - g1sq_sum) / lat.n_sites, c.tol(1e-10)));
    double plain_weighted = 0.0;
    for (const auto& k : grid.kpoints) {
      const OperatorMatrix gp = momentum_gamma(b, lat, k);
      const auto p = grid.momentum(k);
      double cos_sum = 0.0;
      for (double pm : p) cos_sum += std::cos(pm);
      plain_weighted +=
          thermal_expectation(sd, mul(gp, adjoint(gp)), beta).real() *
          (-cos_sum / lat.d);
    }
    out.push_back(Check::identity(
        "infrared/sum_rule_weighted" + tag,
        "-(1/(d|L|)) sum_p <Gp G-p> sum_i cos p_i = -(1/(2|L|)) sum_x "
        "<G1_x G1_{x-e1} + G1_x G1_{x+e1}>",
        std::abs(plain_weighted + 0.5 * bond_sum) / lat.n_sites,
        c.tol(1e-10)));

    // mean-energy bounds at B = 0
    {
      ModelParams mp0 = mp;
      mp0.B = 0.0;
      const OperatorMatrix h0 = build_full(b, lat, mp0);
      const SpectralData sd0 = diagonalize(h0, b, c.p.dense_cap);
      const MeanEnergies me = mean_energies(sd0, b, lat, h0, beta);
      out.push_back(Check::bound("infrared/e1_nonnegative" + tag,
                                 "E1 >= 0", -me.e1, 0.0, c.tol(1e-12)));
      out.push_back(Check::bound("infrared/e1_mean_energy" + tag,
                                 "-d|k| <= E_mean + d g E1",
                                 -lat.d * std::abs(mp.kappa) -
                                     (me.e_mean + lat.d * mp.g * me.e1),
                                 0.0, c.tol(1e-9)));
      double sum_cp0 = 0.0;
      for (const auto& k : grid.kpoints)
        sum_cp0 += gbc_at_p(sd0, b, lat, h0, k, beta).c_p;
      out.push_back(Check::bound(
          "infrared/sum_cp_bound" + tag,
          "(1/|L|) sum_p c_p <= 8 d |k| + 4 d g E1 at B = 0",
          sum_cp0 / lat.n_sites,
          8.0 * lat.d * std::abs(mp.kappa) + 4.0 * lat.d * mp.g * me.e1,
          c.tol(1e-9)));
      if (beta > 0.0) {
        const double f = -sd0.log_partition(beta) / (beta * lat.n_sites);
        out.push_back(Check::identity(
            "infrared/free_energy_identity" + tag, "F = E - S/b",
            std::abs(f - (me.e_mean - me.entropy / beta)), c.tol(1e-10)));
      }
      out.push_back(Check::info(
          "infrared/xy_energy_analogy" + tag,
          "E1 <= sqrt(d(d+1))/2 (heuristic analogy, reported only)",
          std::sqrt(lat.d * (lat.d + 1.0)) / 2.0 - me.e1,
          "E1=" + fmt17(me.e1)));
    }

    // hopping double-commutator norm bound, every momentum
    {
      const OperatorMatrix hop = build_hop(b, lat, mp.kappa);
      double worst = -1e300;
      for (const auto& k : grid.kpoints) {
        const OperatorMatrix gp = momentum_gamma(b, lat, k);
        const double nrm =
            operator_norm(commutator(adjoint(gp), commutator(hop, gp)));
        worst = std::max(worst, nrm - 8.0 * lat.d * std::abs(mp.kappa));
      }
      out.push_back(Check::bound("infrared/hop_double_commutator" + tag,
                                 "||[G-p, [H_hop, Gp]]|| <= 8 d |kappa|",
                                 worst, 0.0, c.tol(1e-8)));
    }
  }
}

// --- VARIATIONAL -----------------------------------------------------------------

void variational_suite(const Ctx& c, std::vector<Check>& out) {
  const auto& b = c.basis;
  const auto& lat = c.lat;
  const ModelParams& mp = c.mp;

  // staggered pair-condensate product state
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.dim));
  v[0] = 1.0;
  for (int s = 0; s < lat.n_sites; ++s) {
    const OperatorMatrix pair = gamma_op(b, s, GammaKind::Plus);
    const double sgn = sublattice_sign(lat.coords[s]);
    v = (v + sgn * (pair.mat * v)).eval();
  }
  v.normalize();

  ModelParams mpp = mp;
  mpp.B = 0.0;
  const OperatorMatrix hp = build_full(b, lat, mpp, Boundary::Periodic);
  const double energy = (v.adjoint() * (hp.mat * v))(0).real();
  out.push_back(Check::identity(
      "variational/pair_condensate_energy",
      "<Phi, H_per Phi> = -(d g / 2) |L|",
      std::abs(energy + 0.5 * lat.d * mp.g * lat.n_sites), c.tol(1e-10)));

  const SpectralData sd = diagonalize(hp, b, c.p.dense_cap);
  out.push_back(Check::bound("variational/ground_energy_upper",
                             "E0(periodic) <= -(d g / 2) |L|", sd.e0,
                             -0.5 * lat.d * mp.g * lat.n_sites, c.tol(1e-10)));
}

// --- NGMODE ----------------------------------------------------------------------

void ngmode_suite(const Ctx& c, std::vector<Check>& out) {
  const auto& b = c.basis;
  const auto& lat = c.lat;
  const ModelParams& mp = c.mp;
  const int R = c.p.R;

  if (4 * R + 1 > 2 * lat.L) {
    const char* reason = "window 4R+1 exceeds the box side";
    for (const char* name :
         {"ngmode/susceptibility_finite_beta", "ngmode/susceptibility_ground",
          "ngmode/bogoliubov", "ngmode/comm_norm_hop", "ngmode/comm_norm_int",
          "ngmode/comm_norm_field", "ngmode/coulomb_u1_invariance",
          "ngmode/trial_energy", "ngmode/filter_support",
          "ngmode/filter_energy_form", "ngmode/ground_thermal_consistency"})
      out.push_back(Check::skipped(name, "", reason));
    return;
  }
  if (mp.gprime <= 0.0) {
    out.push_back(Check::skipped("ngmode/susceptibility_finite_beta", "",
                                 "needs g' > 0"));
    out.push_back(
        Check::skipped("ngmode/susceptibility_ground", "", "needs g' > 0"));
  }

  const FieldConfig ramp = build_ramp(lat, R);
  const auto weight = combined_ramp_weight(lat, ramp);
  const OperatorMatrix g3w = gamma3_weighted(b, lat, weight);
  const OperatorMatrix ar = local_order_op(b, lat, R);
  const OperatorMatrix h = build_full(b, lat, mp);
  const SpectralData sd = diagonalize(h, b, c.p.dense_cap);

  double ramp_norm_sq = 0.0;
  for (const auto& comp : ramp.values)
    for (double hv : comp) ramp_norm_sq += hv * hv;

  if (mp.gprime > 0.0) {
    for (double beta : std::vector<double>{c.p.betas.front(), 50.0}) {
      const Complex sus = duhamel(sd, g3w, g3w, beta);
      out.push_back(Check::bound(
          "ngmode/susceptibility_finite_beta[" + beta_tag(beta) + "]",
          "(b/2)(G3[h~], G3[h~]) <= (1/(4g')) sum |h'|^2",
          0.5 * beta * sus.real(), ramp_norm_sq / (4.0 * mp.gprime),
          c.tol(1e-9)));
    }
    // ground-sector spectral form of the susceptibility
    double acc = 0.0;
    int q = 0;
    for (const auto& blk : sd.blocks) {
      for (Eigen::Index mu = 0; mu < blk.evals.size(); ++mu) {
        if (blk.evals[mu] - sd.e0 > sd.degeneracy_tol) break;
        ++q;
        Eigen::VectorXcd phi =
            Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sd.dim));
        for (std::size_t i = 0; i < blk.states.size(); ++i)
          phi[blk.states[i]] = blk.evecs(static_cast<Eigen::Index>(i), mu);
        const Eigen::VectorXcd w = g3w.mat * phi;
        for (const auto& tblk : sd.blocks) {
          Eigen::VectorXcd wloc(static_cast<Eigen::Index>(tblk.states.size()));
          for (std::size_t i = 0; i < tblk.states.size(); ++i)
            wloc[static_cast<Eigen::Index>(i)] = w[tblk.states[i]];
          const Eigen::VectorXcd coeff = tblk.evecs.adjoint() * wloc;
          for (Eigen::Index i = 0; i < coeff.size(); ++i) {
            const double e = tblk.evals[i] - sd.e0;
            if (e <= sd.degeneracy_tol) continue;
            acc += std::norm(coeff[i]) / e;
          }
        }
      }
    }
    out.push_back(Check::bound(
        "ngmode/susceptibility_ground",
        "omega(G3[h~] (1-P0)/H G3[h~]) <= (1/(4g')) sum |h'|^2", acc / q,
        ramp_norm_sq / (4.0 * mp.gprime), c.tol(1e-9)));
  }

  // Bogoliubov inequality at finite beta
  for (double beta : c.p.betas) {
    const Complex lhs = thermal_expectation(sd, commutator(g3w, ar), beta);
    const Complex curv =
        thermal_expectation(sd, commutator(adjoint(g3w), commutator(h, g3w)),
                            beta);
    const Complex fluct =
        thermal_expectation(sd, anticommutator(ar, adjoint(ar)), beta);
    out.push_back(Check::bound(
        "ngmode/bogoliubov[" + beta_tag(beta) + "]",
        "|<[C,A]>|^2 <= (b/2) <[C',[H,C]]> <{A,A'}>", std::norm(lhs),
        0.5 * beta * curv.real() * fluct.real(), c.tol(1e-9)));
  }

  // double-commutator norm bounds with the explicit window constants
  {
    const double vol = std::pow(4.0 * R + 1.0, lat.d);
    for (Spin sp : {Spin::Up, Spin::Down}) {
      const OperatorMatrix hops = build_hop_spin(b, lat, mp.kappa, sp);
      const double nrm =
          operator_norm(commutator(commutator(g3w, hops), g3w));
      out.push_back(Check::bound(
          std::string("ngmode/comm_norm_hop[") +
              (sp == Spin::Up ? "up" : "down") + "]",
          "||[[G3[h~], H_hop,s], G3[h~]]|| <= 32 d |k| (4R+1)^d / R^2", nrm,
          32.0 * lat.d * std::abs(mp.kappa) * vol / (R * R), c.tol(1e-8)));
    }
    const OperatorMatrix hint = build_int(b, lat, mp.g, 0.0);
    out.push_back(Check::bound(
        "ngmode/comm_norm_int",
        "||[[G3[h~], H_pair], G3[h~]]|| <= 128 d g (4R+1)^d / R^2",
        operator_norm(commutator(commutator(g3w, hint), g3w)),
        128.0 * lat.d * mp.g * vol / (R * R), c.tol(1e-8)));
    const OperatorMatrix field =
        scale(Complex(mp.B, 0.0), build_order_param(b, lat));
    out.push_back(Check::bound(
        "ngmode/comm_norm_field",
        "||[[G3[h~], B O], G3[h~]]|| <= 8 |B| (4R+1)^d",
        operator_norm(commutator(commutator(g3w, field), g3w)),
        8.0 * std::abs(mp.B) * vol, c.tol(1e-8)));
    // the Coulomb part commutes with G3[h~] exactly
    const OperatorMatrix repul =
        build_repul_fields(b, lat, std::max(mp.gprime, 1.0), FieldConfig::zero(lat));
    out.push_back(Check::identity(
        "ngmode/coulomb_u1_invariance", "[G3[h~], H_coul] = 0",
        max_abs(commutator(g3w, repul)), c.tol(kExactTol)));
  }

  // trial-energy pipeline
  {
    const double phi = trial_energy(sd, ar, c.p.epsilon);
    out.push_back(Check::bound("ngmode/trial_energy",
                               "phi = w(A'H^{1+e}A)/w(A'H^eA) >= 0", -phi, 0.0,
                               c.tol(1e-12)));
  }

  // spectral window annihilates the ground sector and reproduces the
  // eigen-sum energy form
  {
    const auto chi = bump_window(sd.degeneracy_tol, c.p.delta_e1);
    const OperatorMatrix fa = spectral_filter(sd, ar, chi);
    const OperatorMatrix proj = spectral_filter(sd, identity_op(sd.dim), chi);
    double worst = 0.0;
    double energy_form = 0.0, oracle_form = 0.0;
    for (const auto& blk : sd.blocks) {
      for (Eigen::Index mu = 0; mu < blk.evals.size(); ++mu) {
        if (blk.evals[mu] - sd.e0 > sd.degeneracy_tol) break;
        Eigen::VectorXcd phi0 =
            Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sd.dim));
        for (std::size_t i = 0; i < blk.states.size(); ++i)
          phi0[blk.states[i]] = blk.evecs(static_cast<Eigen::Index>(i), mu);
        // chi(H) P0 = 0 when chi(0) = 0
        worst = std::max(worst, (proj.mat * phi0).norm());
        const Eigen::VectorXcd w = fa.mat * phi0;
        // w(A' chi H chi A) two ways: matrix form and eigen-sum
        for (const auto& tblk : sd.blocks) {
          Eigen::VectorXcd wloc(static_cast<Eigen::Index>(tblk.states.size()));
          for (std::size_t i = 0; i < tblk.states.size(); ++i)
            wloc[static_cast<Eigen::Index>(i)] = w[tblk.states[i]];
          const Eigen::VectorXcd coeff = tblk.evecs.adjoint() * wloc;
          for (Eigen::Index i = 0; i < coeff.size(); ++i)
            energy_form += std::norm(coeff[i]) * (tblk.evals[i] - sd.e0);
        }
        const Eigen::VectorXcd wa = ar.mat * phi0;
        for (const auto& tblk : sd.blocks) {
          Eigen::VectorXcd wloc(static_cast<Eigen::Index>(tblk.states.size()));
          for (std::size_t i = 0; i < tblk.states.size(); ++i)
            wloc[static_cast<Eigen::Index>(i)] = wa[tblk.states[i]];
          const Eigen::VectorXcd coeff = tblk.evecs.adjoint() * wloc;
          for (Eigen::Index i = 0; i < coeff.size(); ++i) {
            const double e = tblk.evals[i] - sd.e0;
            const double cw = chi(e);
            oracle_form += std::norm(coeff[i]) * cw * cw * e;
          }
        }
      }
    }
    out.push_back(Check::identity("ngmode/filter_support",
                                  "chi(H) P0 = 0 for supp chi in (0, dE1)",
                                  worst, c.tol(1e-12)));
    out.push_back(Check::identity(
        "ngmode/filter_energy_form",
        "w(A' chi(H) H chi(H) A) matches the eigen-sum",
        std::abs(energy_form - oracle_form) / std::max(1.0, std::abs(oracle_form)),
        c.tol(1e-10)));
  }

  // ground sector vs beta = 50 thermal values
  {
    const OperatorMatrix probe = mul(ar, ar);
    const Complex g = ground_expectation(sd, probe);
    const Complex t = thermal_expectation(sd, probe, 50.0);
    out.push_back(Check::identity("ngmode/ground_thermal_consistency",
                                  "omega(A) = <A>_{beta=50} within 1e-6",
                                  std::abs(g - t), c.tol(1e-6)));
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"ALGEBRA", "GAUGE",       "DOMINATION", "CORRELATION",
          "INFRARED", "VARIATIONAL", "NGMODE"};
}

Json suite_params_to_json(const SuiteParams& p) {
  Json j;
  j["d"] = p.d;
  j["L"] = p.L;
  j["kappa"] = p.kappa;
  j["g"] = p.g;
  j["gprime"] = p.gprime;
  j["B"] = p.B;
  j["betas"] = p.betas;
  j["R"] = p.R;
  j["epsilon"] = p.epsilon;
  j["delta_e1"] = p.delta_e1;
  j["tolerance_scale"] = p.tolerance_scale;
  j["domination_draws"] = p.domination_draws;
  j["zeta_draws"] = p.zeta_draws;
  j["seed"] = p.seed;
  j["dense_cap"] = p.dense_cap;
  j["op_cap"] = p.op_cap;
  j["nn_pair_convention"] =
      "one edge per (site, direction); two edges per unordered pair at side 2";
  return j;
}

VerificationReport run_suite(const std::string& suite, const SuiteParams& p) {
  if (p.tolerance_scale <= 0.0)
    throw ConfigError("tolerance scale must be positive");
  if (p.betas.empty()) throw ConfigError("at least one beta is required");
  for (double beta : p.betas)
    if (!(beta >= 0.0)) throw ConfigError("beta must be >= 0");

  VerificationReport rep;
  rep.suite = suite;
  rep.seed = p.seed;
  rep.params = suite_params_to_json(p);

  Ctx ctx(p);
  std::mt19937_64 rng(p.seed);

  const auto names = suite_names();
  const bool all = (suite == "ALL");
  if (!all && std::find(names.begin(), names.end(), suite) == names.end())
    throw ConfigError("unknown suite: " + suite);

  auto want = [&](const char* s) { return all || suite == s; };
  if (want("ALGEBRA")) algebra_suite(ctx, rep.checks);
  if (want("GAUGE")) gauge_suite(ctx, rep.checks, rng);
  if (want("DOMINATION")) domination_suite(ctx, rep.checks, rng);
  if (want("CORRELATION")) correlation_suite(ctx, rep.checks, rng);
  if (want("INFRARED")) infrared_suite(ctx, rep.checks);
  if (want("VARIATIONAL")) variational_suite(ctx, rep.checks);
  if (want("NGMODE")) ngmode_suite(ctx, rep.checks);

  rep.sort_by_name();
  return rep;
}

}  // namespace rpbcs
