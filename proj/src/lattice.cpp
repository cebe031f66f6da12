#include "rpbcs/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "rpbcs/errors.hpp"

namespace rpbcs {

int LatticeSpec::site_index(std::span<const int> x) const {
  if (!contains(x)) throw GeometryError("site outside the lattice box");
  int idx = 0;
  for (int m = 0; m < d; ++m) idx = idx * side() + (x[m] + L - 1);
  return idx;
}

bool LatticeSpec::contains(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != d) return false;
  for (int m = 0; m < d; ++m)
    if (x[m] < -L + 1 || x[m] > L) return false;
  return true;
}

int LatticeSpec::neighbor(int site, int dir, int step) const {
  std::vector<int> x = coords[site];
  int& c = x[dir - 1];
  c += step;
  if (c > L) c -= side();
  if (c < -L + 1) c += side();
  return site_index(x);
}

LatticeSpec build_lattice(int d, int L) {
  if (d < 1) throw ConfigError("lattice dimension must be >= 1");
  if (L < 1) throw ConfigError("lattice half-side must be >= 1");
  LatticeSpec lat;
  lat.d = d;
  lat.L = L;
  double count = std::pow(2.0 * L, d);
  if (count > 1e9) throw CapError("lattice has too many sites");
  lat.n_sites = static_cast<int>(count + 0.5);
  lat.coords.reserve(lat.n_sites);
  std::vector<int> x(d, -L + 1);
  for (int i = 0; i < lat.n_sites; ++i) {
    lat.coords.push_back(x);
    for (int m = d - 1; m >= 0; --m) {
      if (++x[m] <= L) break;
      x[m] = -L + 1;
    }
  }
  return lat;
}

namespace {
// (-1)^{x^(1)+...+x^(dir-1)}; empty sum for dir = 1.
int flux_sign(std::span<const int> x, int dir) {
  int s = 0;
  for (int m = 0; m < dir - 1; ++m) s += x[m];
  return (s % 2) ? -1 : 1;
}
}  // namespace

std::vector<Bond> enumerate_bonds(const LatticeSpec& lat) {
  std::vector<Bond> bonds;
  bonds.reserve(static_cast<std::size_t>(lat.d) * lat.n_sites);
  for (int dir = 1; dir <= lat.d; ++dir) {
    for (int s = 0; s < lat.n_sites; ++s) {
      const auto& x = lat.coords[s];
      if (x[dir - 1] == lat.L) continue;
      Bond b;
      b.from = s;
      b.to = lat.neighbor(s, dir, +1);
      b.direction = dir;
      b.hop_phase = {static_cast<double>(flux_sign(x, dir)), 0.0};
      bonds.push_back(b);
    }
    // wrap bonds, one per transverse tuple, from the x^(dir)=L face to the
    // x^(dir)=-L+1 face, with the extra minus of the anti-periodic boundary
    for (int s = 0; s < lat.n_sites; ++s) {
      const auto& x = lat.coords[s];
      if (x[dir - 1] != lat.L) continue;
      Bond b;
      b.from = s;
      b.to = lat.neighbor(s, dir, +1);  // wraps to -L+1
      b.direction = dir;
      b.hop_phase = {-static_cast<double>(flux_sign(x, dir)), 0.0};
      b.is_boundary = true;
      bonds.push_back(b);
    }
  }
  return bonds;
}

std::vector<Bond> relocate_boundary_signs(const LatticeSpec& lat,
                                          std::span<const Bond> bonds, int dir,
                                          int ell) {
  if (dir < 1 || dir > lat.d) throw ConfigError("bad direction");
  if (ell <= -lat.L + 1 || ell > lat.L)
    throw ConfigError("cut must lie strictly inside the box");
  std::vector<Bond> out(bonds.begin(), bonds.end());
  auto in_slab = [&](int site) {
    const int c = lat.coords[site][dir - 1];
    return ell <= c && c <= lat.L;
  };
  for (Bond& b : out) {
    if (b.direction != dir) continue;
    if (in_slab(b.from) != in_slab(b.to)) b.hop_phase = -b.hop_phase;
  }
  return out;
}

int sublattice_sign(std::span<const int> x) {
  long long s = 0;
  for (int c : x) s += c;
  return (s % 2) ? -1 : 1;
}

}  // namespace rpbcs
