#include <doctest.h>

#include <cstdlib>
#include <random>

#include "rpbcs/report.hpp"

using namespace rpbcs;

TEST_CASE("decimal formatting round-trips bits") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, int(rng() % 20) - 10);
    CHECK(std::strtod(fmt17(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("margin conventions") {
  const Check id = Check::identity("x", "lhs = rhs", 1e-13, 1e-12);
  CHECK(id.status == CheckStatus::Pass);
  CHECK(id.margin == -1e-13);

  const Check b = Check::bound("y", "lhs <= rhs", 3.0, 5.0, 1e-10);
  CHECK(b.status == CheckStatus::Pass);
  CHECK(b.margin == doctest::Approx((5.0 - 3.0) / 5.0));

  const Check f = Check::bound("z", "lhs <= rhs", 5.0, 3.0, 1e-10);
  CHECK(f.status == CheckStatus::Fail);

  const Check s = Check::skipped("w", "", "window does not fit");
  CHECK(s.status == CheckStatus::Skipped);
  CHECK(!s.note.empty());
}

TEST_CASE("csv flattening carries the same numbers") {
  Json j;
  j["a"] = 0.1 + 0.2;
  j["nested"]["b"] = -1.2345678901234567e-8;
  j["list"] = {1.5, 2.5};
  j["s"] = "text, with comma";
  const std::string csv = json_to_csv(j);
  CHECK(csv.find("a," + fmt17(0.1 + 0.2)) != std::string::npos);
  CHECK(csv.find("nested.b," + fmt17(-1.2345678901234567e-8)) !=
        std::string::npos);
  CHECK(csv.find("list[0],1.5") != std::string::npos);
  CHECK(csv.find("\"text, with comma\"") != std::string::npos);
}
