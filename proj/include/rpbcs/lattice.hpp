#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rpbcs {

/// Finite hypercubic box {-L+1, ..., L}^d with periodic identification.
/// Site ordering is lexicographic with the first coordinate slowest; the
/// ordering is stable across runs.
struct LatticeSpec {
  int d = 0;
  int L = 0;
  int n_sites = 0;
  std::vector<std::vector<int>> coords;  // site index -> coordinates

  int side() const { return 2 * L; }

  /// Inverse of `coords`; throws GeometryError for points outside the box.
  int site_index(std::span<const int> x) const;

  bool contains(std::span<const int> x) const;

  /// Periodic neighbor in direction `dir` (1-based), step +1 or -1.
  int neighbor(int site, int dir, int step) const;
};

/// Directed bond x -> y carrying the sign structure of the hopping term
/// i*kappa*phase*(a†_x a_y - a†_y a_x). Bulk bonds run from x to x+e_m and
/// carry the flux factor (-1)^{x^(1)+...+x^(m-1)}; wrap bonds run from the
/// x^(m)=L face to the x^(m)=-L+1 face and carry the opposite overall sign.
struct Bond {
  int from = 0;
  int to = 0;
  int direction = 1;  // 1..d
  std::complex<double> hop_phase{1.0, 0.0};
  bool is_boundary = false;
};

LatticeSpec build_lattice(int d, int L);

/// All bonds of the box: one bulk bond per (site, direction) with
/// x^(dir) != L plus one wrap bond per transverse tuple. For L = 1 the bulk
/// and wrap bond of a line connect the same pair of sites; both are kept.
std::vector<Bond> enumerate_bonds(const LatticeSpec& lat);

/// Flip hop_phase on every bond in direction `dir` with exactly one endpoint
/// in the slab ell <= x^(dir) <= L. This is how the boundary gauge
/// transformation moves the negative-sign bonds from the wrap to the cut at
/// ell-1 | ell.
std::vector<Bond> relocate_boundary_signs(const LatticeSpec& lat,
                                          std::span<const Bond> bonds, int dir,
                                          int ell);

/// (-1)^{x^(1)+...+x^(d)}.
int sublattice_sign(std::span<const int> x);

}  // namespace rpbcs
