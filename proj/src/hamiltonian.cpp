#include "rpbcs/hamiltonian.hpp"

#include <cmath>
#include <cstdlib>

#include "rpbcs/errors.hpp"

namespace rpbcs {

FieldConfig FieldConfig::zero(const LatticeSpec& lat) {
  FieldConfig f;
  f.values.assign(lat.d, std::vector<double>(lat.n_sites, 0.0));
  return f;
}

bool FieldConfig::is_zero() const {
  for (const auto& comp : values)
    for (double v : comp)
      if (v != 0.0) return false;
  return true;
}

namespace {

void check_fields(const LatticeSpec& lat, const FieldConfig& f) {
  if (static_cast<int>(f.values.size()) != lat.d)
    throw ConfigError("field must have one component per direction");
  for (const auto& comp : f.values) {
    if (static_cast<int>(comp.size()) != lat.n_sites)
      throw ConfigError("field component must be defined on every site");
    for (double v : comp)
      if (!std::isfinite(v)) throw ConfigError("field values must be finite");
  }
}

std::vector<Bond> bonds_for(const LatticeSpec& lat, Boundary bc) {
  std::vector<Bond> bonds = enumerate_bonds(lat);
  if (bc == Boundary::Periodic) {
    for (Bond& b : bonds)
      if (b.is_boundary) b.hop_phase = -b.hop_phase;  // drop the wrap minus
  }
  return bonds;
}

}  // namespace

OperatorMatrix build_hop_from_bonds(const FockBasis& b, const LatticeSpec& lat,
                                    std::span<const Bond> bonds, double kappa,
                                    std::optional<Spin> only_spin) {
  OperatorMatrix h = zero_op(b.dim);
  if (kappa == 0.0) {
    h.hermitian = true;
    return h;
  }
  (void)lat;
  for (const Bond& bond : bonds) {
    for (Spin s : {Spin::Up, Spin::Down}) {
      if (only_spin && s != *only_spin) continue;
      const OperatorMatrix cf = creation_op(b, bond.from, s);
      const OperatorMatrix ct = creation_op(b, bond.to, s);
      // i*kappa*phase*(a†_from a_to - a†_to a_from)
      OperatorMatrix term = sub(mul(cf, adjoint(ct)), mul(ct, adjoint(cf)));
      h = add(h, scale(Complex(0.0, kappa) * bond.hop_phase, term));
    }
  }
  h.hermitian = true;
  h.parity = FermionParity::Even;
  return h;
}

OperatorMatrix build_hop(const FockBasis& b, const LatticeSpec& lat, double kappa,
                         Boundary bc) {
  const auto bonds = bonds_for(lat, bc);
  return build_hop_from_bonds(b, lat, bonds, kappa);
}

OperatorMatrix build_hop_spin(const FockBasis& b, const LatticeSpec& lat,
                              double kappa, Spin s, Boundary bc) {
  const auto bonds = bonds_for(lat, bc);
  return build_hop_from_bonds(b, lat, bonds, kappa, s);
}

OperatorMatrix build_int(const FockBasis& b, const LatticeSpec& lat, double g,
                         double gprime) {
  OperatorMatrix h = zero_op(b.dim);
  for (int s = 0; s < lat.n_sites; ++s) {
    for (int dir = 1; dir <= lat.d; ++dir) {
      const int t = lat.neighbor(s, dir, +1);
      if (g != 0.0) {
        const OperatorMatrix gp = gamma_op(b, s, GammaKind::Plus);
        const OperatorMatrix gm = gamma_op(b, s, GammaKind::Minus);
        const OperatorMatrix gpt = gamma_op(b, t, GammaKind::Plus);
        const OperatorMatrix gmt = gamma_op(b, t, GammaKind::Minus);
        h = add(h, scale(Complex(g, 0.0),
                         add(mul(gp, gmt), mul(gm, gpt))));
      }
      if (gprime != 0.0) {
        h = add(h, scale(Complex(gprime, 0.0),
                         mul(gamma_op(b, s, GammaKind::Three),
                             gamma_op(b, t, GammaKind::Three))));
      }
    }
  }
  h.hermitian = true;
  h.parity = FermionParity::Even;
  return h;
}

OperatorMatrix build_order_param(const FockBasis& b, const LatticeSpec& lat) {
  OperatorMatrix o = zero_op(b.dim);
  for (int s = 0; s < lat.n_sites; ++s)
    o = add(o, scale(Complex(sublattice_sign(lat.coords[s]), 0.0),
                     gamma_op(b, s, GammaKind::Two)));
  o.hermitian = true;
  o.parity = FermionParity::Even;
  return o;
}

OperatorMatrix build_full(const FockBasis& b, const LatticeSpec& lat,
                          const ModelParams& p, Boundary bc) {
  OperatorMatrix h = build_hop(b, lat, p.kappa, bc);
  h = add(h, build_int(b, lat, p.g, p.gprime));
  if (p.B != 0.0)
    h = add(h, scale(Complex(-p.B, 0.0), build_order_param(b, lat)));
  h.hermitian = true;
  h.parity = FermionParity::Even;
  return h;
}

OperatorMatrix build_int_fields_dir(const FockBasis& b, const LatticeSpec& lat,
                                    double g, const FieldConfig& h, int dir) {
  check_fields(lat, h);
  if (dir < 1 || dir > lat.d) throw ConfigError("bad direction");
  OperatorMatrix total = zero_op(b.dim);
  for (int s = 0; s < lat.n_sites; ++s) {
    const int t = lat.neighbor(s, dir, +1);
    const double hval = h.values[dir - 1][s];
    // (g/4) [Γ1_x + Γ1_y + sign(x) h]^2
    OperatorMatrix lin = add(gamma_op(b, s, GammaKind::One),
                             gamma_op(b, t, GammaKind::One));
    if (hval != 0.0) {
      const double c = sublattice_sign(lat.coords[s]) * hval;
      lin = add(lin, scale(Complex(c, 0.0), identity_op(b.dim)));
    }
    total = add(total, scale(Complex(g / 4.0, 0.0), mul(lin, lin)));
    // -(g/4) [Γ2_x - Γ2_y]^2
    OperatorMatrix diff = sub(gamma_op(b, s, GammaKind::Two),
                              gamma_op(b, t, GammaKind::Two));
    total = add(total, scale(Complex(-g / 4.0, 0.0), mul(diff, diff)));
  }
  total.hermitian = true;
  total.parity = FermionParity::Even;
  return total;
}

OperatorMatrix build_int_fields(const FockBasis& b, const LatticeSpec& lat,
                                double g, const FieldConfig& h) {
  check_fields(lat, h);
  OperatorMatrix total = zero_op(b.dim);
  for (int dir = 1; dir <= lat.d; ++dir)
    total = add(total, build_int_fields_dir(b, lat, g, h, dir));
  // -(dg/2) Σ_x ([Γ1]^2 - [Γ2]^2)
  for (int s = 0; s < lat.n_sites; ++s) {
    const OperatorMatrix g1 = gamma_op(b, s, GammaKind::One);
    const OperatorMatrix g2 = gamma_op(b, s, GammaKind::Two);
    total = add(total, scale(Complex(-lat.d * g / 2.0, 0.0),
                             sub(mul(g1, g1), mul(g2, g2))));
  }
  total.hermitian = true;
  total.parity = FermionParity::Even;
  return total;
}

OperatorMatrix build_repul_fields(const FockBasis& b, const LatticeSpec& lat,
                                  double gprime, const FieldConfig& hprime) {
  check_fields(lat, hprime);
  OperatorMatrix total = zero_op(b.dim);
  for (int dir = 1; dir <= lat.d; ++dir) {
    for (int s = 0; s < lat.n_sites; ++s) {
      const int t = lat.neighbor(s, dir, +1);
      OperatorMatrix lin = add(gamma_op(b, s, GammaKind::Three),
                               gamma_op(b, t, GammaKind::Three));
      const double hval = hprime.values[dir - 1][s];
      if (hval != 0.0)
        lin = add(lin, scale(Complex(hval, 0.0), identity_op(b.dim)));
      total = add(total, scale(Complex(gprime / 2.0, 0.0), mul(lin, lin)));
    }
  }
  for (int s = 0; s < lat.n_sites; ++s) {
    const OperatorMatrix g3 = gamma_op(b, s, GammaKind::Three);
    total = add(total, scale(Complex(-lat.d * gprime, 0.0), mul(g3, g3)));
  }
  total.hermitian = true;
  total.parity = FermionParity::Even;
  return total;
}

double ramp_value(std::span<const int> x, int R) {
  int linf = 0;
  for (int c : x) linf = std::max(linf, std::abs(c));
  if (linf <= R + 1) return 1.0;
  if (linf <= 2 * R) return 1.0 - static_cast<double>(linf - (R + 1)) / R;
  return 0.0;
}

FieldConfig build_ramp(const LatticeSpec& lat, int R) {
  if (R < 1) throw ConfigError("ramp radius must be >= 1");
  if (4 * R + 1 > 2 * lat.L)
    throw GeometryError("ramp support |x|inf <= 2R does not fit in the box");
  FieldConfig f = FieldConfig::zero(lat);
  for (int s = 0; s < lat.n_sites; ++s)
    f.values[0][s] = ramp_value(lat.coords[s], R);
  return f;
}

std::vector<double> combined_ramp_weight(const LatticeSpec& lat,
                                         const FieldConfig& hprime) {
  check_fields(lat, hprime);
  std::vector<double> w(lat.n_sites, 0.0);
  for (int s = 0; s < lat.n_sites; ++s)
    for (int dir = 1; dir <= lat.d; ++dir)
      w[s] += hprime.values[dir - 1][s] +
              hprime.values[dir - 1][lat.neighbor(s, dir, -1)];
  return w;
}

}  // namespace rpbcs
