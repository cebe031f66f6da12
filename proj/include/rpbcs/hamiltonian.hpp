#pragma once

#include <optional>
#include <span>

#include "rpbcs/fock.hpp"
#include "rpbcs/lattice.hpp"

namespace rpbcs {

/// Model couplings. Pairing g is the BCS coupling, gprime the
/// nearest-neighbour Coulomb repulsion, B the staggered symmetry-breaking
/// field conjugate to the order parameter.
struct ModelParams {
  double kappa = 0.0;
  double g = 1.0;
  double gprime = 0.0;
  double B = 0.0;
  double beta = 1.0;
};

/// d per-direction real fields, one value per site: values[m][site] for
/// m = 0..d-1.
struct FieldConfig {
  std::vector<std::vector<double>> values;

  static FieldConfig zero(const LatticeSpec& lat);
  bool is_zero() const;
};

enum class Boundary { Antiperiodic, Periodic };

/// Hopping Hamiltonian: sum over bonds of i*kappa*phase*(a†_x a_y - a†_y a_x)
/// per spin. Antiperiodic boundary carries the wrap-bond minus; Periodic
/// drops it (used by the variational bound).
OperatorMatrix build_hop(const FockBasis& b, const LatticeSpec& lat, double kappa,
                         Boundary bc = Boundary::Antiperiodic);

/// Same, from an explicit bond list (gauge-relocated boundaries, ...).
OperatorMatrix build_hop_from_bonds(const FockBasis& b, const LatticeSpec& lat,
                                    std::span<const Bond> bonds, double kappa,
                                    std::optional<Spin> only_spin = std::nullopt);

OperatorMatrix build_hop_spin(const FockBasis& b, const LatticeSpec& lat,
                              double kappa, Spin s,
                              Boundary bc = Boundary::Antiperiodic);

/// Interaction: g Σ_edges (Γ+_x Γ-_y + Γ-_x Γ+_y) + g' Σ_edges Γ3_x Γ3_y with
/// periodic identification. The edge set has one edge per (site, direction);
/// at side 2 every unordered pair is connected by two edges and both count.
OperatorMatrix build_int(const FockBasis& b, const LatticeSpec& lat, double g,
                         double gprime);

/// Order parameter O = Σ_x (-1)^{Σx} Γ_x^(2).
OperatorMatrix build_order_param(const FockBasis& b, const LatticeSpec& lat);

/// H(B) = H_hop + H_int - B O.
OperatorMatrix build_full(const FockBasis& b, const LatticeSpec& lat,
                          const ModelParams& p,
                          Boundary bc = Boundary::Antiperiodic);

/// Field-deformed pairing interaction
///   (g/4) Σ_{x,m} [Γ1_x + Γ1_{x+e_m} + (-1)^{Σx} h_m(x)]^2
/// - (g/4) Σ_{x,m} [Γ2_x - Γ2_{x+e_m}]^2 - (dg/2) Σ_x ([Γ1_x]^2 - [Γ2_x]^2),
/// implemented literally including the identity shifts.
OperatorMatrix build_int_fields(const FockBasis& b, const LatticeSpec& lat,
                                double g, const FieldConfig& h);

/// Single-direction piece (m = dir, 1-based) of the two square sums above,
/// without the (dg/2) tail.
OperatorMatrix build_int_fields_dir(const FockBasis& b, const LatticeSpec& lat,
                                    double g, const FieldConfig& h, int dir);

/// Field-deformed Coulomb interaction
///   (g'/2) Σ_{x,m} [Γ3_x + Γ3_{x+e_m} + h'_m(x)]^2 - d g' Σ_x [Γ3_x]^2
/// (no staggered sign inside this square).
OperatorMatrix build_repul_fields(const FockBasis& b, const LatticeSpec& lat,
                                  double gprime, const FieldConfig& hprime);

/// Plateau-and-ramp profile in the first direction: h'_1(x) = 1 on
/// |x|inf <= R+1, linear decay to the edge of |x|inf <= 2R, zero outside;
/// h'_m = 0 for m >= 2. Requires 4R+1 <= 2L.
FieldConfig build_ramp(const LatticeSpec& lat, int R);

double ramp_value(std::span<const int> x, int R);

/// Combined weight h~(x) = Σ_m [h'_m(x) + h'_m(x - e_m)] with periodic shift.
std::vector<double> combined_ramp_weight(const LatticeSpec& lat,
                                         const FieldConfig& hprime);

}  // namespace rpbcs
