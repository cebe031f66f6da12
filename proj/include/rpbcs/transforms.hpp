#pragma once

#include <string>

#include "rpbcs/fock.hpp"
#include "rpbcs/lattice.hpp"

namespace rpbcs {

struct UnitaryMatrix {
  SpMat mat;
  std::string label;
};

// Gauge and symmetry transformations, as explicit Fock-space matrices.

/// Sign flip a -> -a on the slab ell <= x^(dir) <= L; moves the
/// negative-sign hopping bonds from the wrap to the cut ell-1 | ell.
UnitaryMatrix u_bc(const FockBasis& b, const LatticeSpec& lat, int dir, int ell);

/// exp(iπ n) on sites with x^(i) and x^(j) both odd; interchanges the
/// direction-i and direction-j hopping sign patterns.
UnitaryMatrix u_ha(const FockBasis& b, const LatticeSpec& lat, int i, int j);

/// Composition realizing the cyclic coordinate permutation j -> 1.
UnitaryMatrix u_ha_to_first(const FockBasis& b, const LatticeSpec& lat, int j);

/// exp(iπ/2 n) on sites with x^(j) even (a -> i a there).
UnitaryMatrix u_phase_even(const FockBasis& b, const LatticeSpec& lat, int j);

/// Product of u_phase_even over j = 2..d.
UnitaryMatrix u_phase_even_all(const FockBasis& b, const LatticeSpec& lat);

/// Single-mode swap a <-> a† dressed with the parity string over every
/// other mode; leaves all other modes fixed.
UnitaryMatrix u_mode_swap(const FockBasis& b, int site, Spin s);

/// Product of mode swaps over the odd sublattice, both spins.
UnitaryMatrix u_odd(const FockBasis& b, const LatticeSpec& lat);

/// u_phase_even_all * u_odd; brings the first-direction hopping to the
/// reflection-factorized Majorana form.
UnitaryMatrix u_tilde_one(const FockBasis& b, const LatticeSpec& lat);

/// exp(iπ/2 n) on the odd sublattice (a -> i a there); flips the sign of the
/// pairing interaction.
UnitaryMatrix u_odd_quarter(const FockBasis& b, const LatticeSpec& lat);

/// Particle-hole swap on every mode.
UnitaryMatrix u_particle_hole(const FockBasis& b, const LatticeSpec& lat);

/// Global U(1) rotation Π_x exp(iθ Γ3_x / 2).
UnitaryMatrix u_rotation(const FockBasis& b, const LatticeSpec& lat, double theta);

struct UnitaryArgs {
  int dir = 1;
  int dir2 = 2;
  int ell = 1;
  int site = 0;
  Spin spin = Spin::Up;
  double theta = 0.0;
};

/// Label dispatcher; unknown labels raise ConfigError. Labels: bc_slab,
/// amplitude_swap, amplitude_to_first, phase_even_coord, phase_even_all,
/// mode_swap, odd_conjugation, tilde_one, odd_quarter, particle_hole,
/// rotation.
UnitaryMatrix build_unitary(const FockBasis& b, const LatticeSpec& lat,
                            const std::string& label,
                            const UnitaryArgs& args = {});

OperatorMatrix conjugate(const OperatorMatrix& a, const UnitaryMatrix& u);

double unitarity_defect(const UnitaryMatrix& u);

/// Anti-linear map: basis relabeling with signs followed by complex
/// conjugation of coefficients, so that products map to products exactly.
struct AntiLinearMap {
  std::vector<std::uint64_t> perm;  // state -> state
  std::vector<double> sign;
  std::string label;
};

/// Reflection through the plane between x^(1) = 0 and 1 (and, via
/// periodicity, the wrap plane between -L+1 and L): x^(1) -> 1 - x^(1).
AntiLinearMap reflection_x1(const FockBasis& b, const LatticeSpec& lat);

/// Spin reflection a_{x,up} <-> a_{x,down}.
AntiLinearMap reflection_spin(const FockBasis& b, const LatticeSpec& lat);

OperatorMatrix apply_antilinear(const AntiLinearMap& t, const OperatorMatrix& a);

}  // namespace rpbcs
