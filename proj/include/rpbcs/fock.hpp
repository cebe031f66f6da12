#pragma once

#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rpbcs/lattice.hpp"

namespace rpbcs {

using Complex = std::complex<double>;
using SpMat = Eigen::SparseMatrix<Complex>;

enum class Spin : int { Up = 0, Down = 1 };

constexpr std::size_t kDefaultOpCap = 65536;     // 8 sites
constexpr std::size_t kDefaultDenseCap = 4096;   // 6 sites

/// Occupation-number basis over (site, spin) modes. Basis state `n` occupies
/// mode k iff bit k of n is set. Jordan-Wigner signs follow `jw_pos`, the
/// position of each mode in the string order (default: mode index, i.e.
/// site-lexicographic with up before down). Physics must not depend on this
/// order; tests permute it.
struct FockBasis {
  int n_sites = 0;
  int n_modes = 0;
  std::size_t dim = 0;
  std::vector<int> jw_pos;                  // mode -> string position
  std::vector<std::uint64_t> jw_mask_below;  // mode -> modes earlier in string

  int mode(int site, Spin s) const { return 2 * site + static_cast<int>(s); }

  /// (2*Sz, N mod 2) of a basis state.
  std::pair<int, int> sector_of(std::uint64_t state) const;
};

FockBasis build_basis(const LatticeSpec& lat, std::size_t dim_cap = kDefaultOpCap);

/// Same basis with a caller-chosen Jordan-Wigner string order.
FockBasis build_basis_with_order(const LatticeSpec& lat, std::vector<int> jw_pos,
                                 std::size_t dim_cap = kDefaultOpCap);

enum class FermionParity { Even, Odd, Mixed };

/// Sparse second-quantized operator on the Fock basis.
struct OperatorMatrix {
  SpMat mat;
  bool hermitian = false;
  FermionParity parity = FermionParity::Mixed;

  Eigen::Index dim() const { return mat.rows(); }
};

// --- elementary algebra on operators ---------------------------------------

OperatorMatrix identity_op(std::size_t dim);
OperatorMatrix zero_op(std::size_t dim);
OperatorMatrix add(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix sub(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix mul(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix scale(Complex c, const OperatorMatrix& a);
OperatorMatrix adjoint(const OperatorMatrix& a);
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b);

double max_abs(const OperatorMatrix& a);
double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);
bool is_hermitian(const OperatorMatrix& a, double tol);

/// Largest singular value by power iteration on A†A (relative tolerance on
/// the iterate, deterministic start vector).
double operator_norm(const OperatorMatrix& a, double tol = 1e-8);

// --- mode operators ---------------------------------------------------------

OperatorMatrix creation_op(const FockBasis& b, int site, Spin s);
OperatorMatrix annihilation_op(const FockBasis& b, int site, Spin s);
OperatorMatrix number_op(const FockBasis& b, int site, Spin s);

enum class GammaKind { Plus, Minus, One, Two, Three };

/// Local pair operators: Γ+ = a†↑a†↓, Γ- = a↓a↑, Γ1 = Γ+ + Γ-,
/// Γ2 = i(Γ+ - Γ-), Γ3 = 1 - n↑ - n↓. Kinds 1,2,3 are hermitian.
OperatorMatrix gamma_op(const FockBasis& b, int site, GammaKind kind);

enum class MajoranaKind { Xi, Eta };

/// ξ = a† + a, η = i(a† - a); hermitian, square to the identity.
OperatorMatrix majorana_op(const FockBasis& b, int site, Spin s, MajoranaKind kind);

/// Fourier mode |Λ|^{-1/2} Σ_x Γ_x^(1) e^{-i p·x} with p = π k / L on the
/// dual grid, k components in (-L, L].
OperatorMatrix momentum_gamma(const FockBasis& b, const LatticeSpec& lat,
                              std::span<const int> k);

/// Staggered window average |Ω_R|^{-1} Σ_{|x|∞<=R} (-1)^{Σx} Γ_x^(1);
/// requires the window to fit in the box.
OperatorMatrix local_order_op(const FockBasis& b, const LatticeSpec& lat, int R);

/// Σ_x f(x) Γ_x^(3) for a per-site weight f.
OperatorMatrix gamma3_weighted(const FockBasis& b, const LatticeSpec& lat,
                               std::span<const double> f);

// --- serialization ----------------------------------------------------------

/// Coordinate-list text dump: header "dim nnz", then one "row col re im" line
/// per entry, with 17 significant digits.
void dump_operator(std::ostream& os, const OperatorMatrix& a);
OperatorMatrix load_operator(std::istream& is);

}  // namespace rpbcs
