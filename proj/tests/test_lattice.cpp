#include <doctest.h>

#include <map>

#include "rpbcs/errors.hpp"
#include "rpbcs/lattice.hpp"

using namespace rpbcs;
using Complex = std::complex<double>;

TEST_CASE("box sizes and coordinate ranges") {
  CHECK(build_lattice(1, 1).n_sites == 2);
  CHECK(build_lattice(2, 1).n_sites == 4);
  CHECK(build_lattice(3, 2).n_sites == 64);
  CHECK_THROWS_AS(build_lattice(0, 1), ConfigError);
  CHECK_THROWS_AS(build_lattice(1, 0), ConfigError);

  const auto lat = build_lattice(2, 2);
  for (const auto& x : lat.coords)
    for (int c : x) {
      CHECK(c >= -1);
      CHECK(c <= 2);
    }
}

TEST_CASE("site indexing round-trips") {
  const auto lat = build_lattice(3, 1);
  for (int s = 0; s < lat.n_sites; ++s)
    CHECK(lat.site_index(lat.coords[s]) == s);
  std::vector<int> outside = {2, 0, 0};
  CHECK_THROWS_AS(lat.site_index(outside), GeometryError);
}

TEST_CASE("bond lists") {
  SUBCASE("d=1 L=1: doubled pair, bulk plus and wrap minus") {
    const auto lat = build_lattice(1, 1);
    const auto bonds = enumerate_bonds(lat);
    REQUIRE(bonds.size() == 2);
    CHECK(!bonds[0].is_boundary);
    CHECK(bonds[0].hop_phase == Complex(1.0, 0.0));
    CHECK(bonds[1].is_boundary);
    CHECK(bonds[1].hop_phase == Complex(-1.0, 0.0));
    for (const auto& b : bonds) {
      CHECK(((b.from == 0 && b.to == 1) || (b.from == 1 && b.to == 0)));
    }
  }
  SUBCASE("d=2 L=1: four bulk and four wrap") {
    const auto bonds = enumerate_bonds(build_lattice(2, 1));
    int bulk = 0, wrap = 0;
    for (const auto& b : bonds) (b.is_boundary ? wrap : bulk)++;
    CHECK(bulk == 4);
    CHECK(wrap == 4);
  }
  SUBCASE("flux factor on a transverse bond") {
    const auto lat = build_lattice(2, 2);
    const auto bonds = enumerate_bonds(lat);
    std::vector<int> x = {1, -1};
    const int s = lat.site_index(x);
    bool found = false;
    for (const auto& b : bonds)
      if (b.from == s && b.direction == 2 && !b.is_boundary) {
        found = true;
        CHECK(b.hop_phase == Complex(-1.0, 0.0));  // (-1)^{x1} with x1 = 1
      }
    CHECK(found);
  }
}

TEST_CASE("bond structure invariants") {
  const auto lat = build_lattice(2, 2);
  const auto bonds = enumerate_bonds(lat);

  std::map<int, int> incident;
  std::map<int, int> wrap_per_dir;
  for (const auto& b : bonds) {
    CHECK(std::abs(std::abs(b.hop_phase) - 1.0) == 0.0);
    incident[b.from]++;
    incident[b.to]++;
    if (b.is_boundary) wrap_per_dir[b.direction]++;
  }
  for (int s = 0; s < lat.n_sites; ++s) CHECK(incident[s] == 2 * lat.d);
  for (int dir = 1; dir <= lat.d; ++dir)
    CHECK(wrap_per_dir[dir] == 2 * lat.L);  // (2L)^{d-1}

  // every unit square of bulk bonds carries flux -1
  std::map<std::pair<int, int>, double> phase;  // (from, dir) -> sign
  for (const auto& b : bonds)
    if (!b.is_boundary) phase[{b.from, b.direction}] = b.hop_phase.real();
  int squares = 0;
  for (int s = 0; s < lat.n_sites; ++s) {
    const auto& x = lat.coords[s];
    if (x[0] == lat.L || x[1] == lat.L) continue;
    const int sx = lat.neighbor(s, 1, +1);
    const int sy = lat.neighbor(s, 2, +1);
    const double prod = phase.at({s, 1}) * phase.at({sx, 2}) *
                        phase.at({sy, 1}) * phase.at({s, 2});
    CHECK(prod == -1.0);
    ++squares;
  }
  CHECK(squares == (2 * lat.L - 1) * (2 * lat.L - 1));
}

TEST_CASE("construction is stable across calls") {
  const auto a = build_lattice(2, 2);
  const auto b = build_lattice(2, 2);
  CHECK(a.coords == b.coords);
  const auto ba = enumerate_bonds(a);
  const auto bb = enumerate_bonds(b);
  REQUIRE(ba.size() == bb.size());
  for (std::size_t i = 0; i < ba.size(); ++i) {
    CHECK(ba[i].from == bb[i].from);
    CHECK(ba[i].to == bb[i].to);
    CHECK(ba[i].hop_phase == bb[i].hop_phase);
  }
}

TEST_CASE("sublattice sign") {
  std::vector<int> a = {0, 0, 0}, b = {1, 0}, c = {-1, 2, 1};
  CHECK(sublattice_sign(a) == 1);
  CHECK(sublattice_sign(b) == -1);
  CHECK(sublattice_sign(c) == 1);
}

TEST_CASE("boundary sign relocation") {
  const auto lat = build_lattice(1, 2);
  const auto bonds = enumerate_bonds(lat);
  const auto moved = relocate_boundary_signs(lat, bonds, 1, 1);
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    const bool crosses_cut =
        (lat.coords[bonds[i].from][0] == 0 && lat.coords[bonds[i].to][0] == 1) ||
        (lat.coords[bonds[i].from][0] == 1 && lat.coords[bonds[i].to][0] == 0);
    if (bonds[i].is_boundary || crosses_cut)
      CHECK(moved[i].hop_phase == -bonds[i].hop_phase);
    else
      CHECK(moved[i].hop_phase == bonds[i].hop_phase);
  }
}
