#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

using Json = nlohmann::ordered_json;

struct RunResult {
  int exit_code;
  std::string stdout_text;
  std::string stderr_text;
};

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string base = "cli_test_" + std::to_string(counter++);
  const std::string out = base + ".out", err = base + ".err";
  const std::string cmd =
      std::string(RPBCS_CLI_PATH) + " " + args + " > " + out + " 2> " + err;
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  r.stdout_text = slurp(out);
  r.stderr_text = slurp(err);
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

void collect_numbers(const Json& j, std::vector<double>& out) {
  if (j.is_object() || j.is_array()) {
    for (const auto& el : j) collect_numbers(el, out);
  } else if (j.is_number()) {
    out.push_back(j.get<double>());
  }
}

}  // namespace

TEST_CASE("spectrum of the free box is flat") {
  const auto r = run_cli("spectrum --d 1 --L 1 --kappa 0 --g 0 --gprime 0 --B 0");
  REQUIRE(r.exit_code == 0);
  const Json doc = Json::parse(r.stdout_text);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["results"]["ground_degeneracy"] == 16);
  CHECK(doc["results"]["e0"].get<double>() == 0.0);
  CHECK(doc["config"]["d"] == 1);
  CHECK(doc.contains("build_id"));
}

TEST_CASE("spectrum agrees with a direct enumeration of the pairing chain") {
  const auto r = run_cli("spectrum --d 1 --L 1 --kappa 0 --g 1 --gprime 0");
  REQUIRE(r.exit_code == 0);
  const Json doc = Json::parse(r.stdout_text);
  std::vector<double> evs;
  for (const auto& sector : doc["results"]["sectors"])
    for (const auto& e : sector["eigenvalues"]) evs.push_back(e.get<double>());
  std::sort(evs.begin(), evs.end());
  REQUIRE(evs.size() == 16);
  // pairing chain at kappa = 0: two pair modes coupled on two edges;
  // spectrum lies in {-2, 0, 2} with known weights
  CHECK(evs.front() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(evs.back() == doctest::Approx(2.0).epsilon(1e-12));
  double sum = 0.0;
  for (double e : evs) sum += e;
  CHECK(sum == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("missing required flags name the flag") {
  const auto r = run_cli("spectrum --L 1");
  CHECK(r.exit_code == 2);
  CHECK(r.stderr_text.find("--d") != std::string::npos);
}

TEST_CASE("negative tolerance scale is a config error") {
  const auto r =
      run_cli("verify --d 1 --L 1 --suite ALGEBRA --tolerance-scale -1");
  CHECK(r.exit_code == 2);
}

TEST_CASE("verify exits zero on a passing suite") {
  const auto r = run_cli("verify --d 1 --L 1 --suite ALGEBRA");
  CHECK(r.exit_code == 0);
  const Json doc = Json::parse(r.stdout_text);
  CHECK(doc["results"]["summary"]["fail"] == 0);
}

TEST_CASE("default full catalog on the reference chain") {
  const auto r = run_cli("verify --d 1 --L 2 --draws 20 --zeta-draws 10");
  CHECK(r.exit_code == 0);
  const Json doc = Json::parse(r.stdout_text);
  CHECK(doc["results"]["checks"].size() >= 40);
}

TEST_CASE("divergent momentum integral is reported, finite path works") {
  const auto bad = run_cli("bzconst --d 2 --L 4");
  CHECK(bad.exit_code == 1);
  CHECK(bad.stderr_text.find("diverges") != std::string::npos);

  const auto ok = run_cli("bzconst --d 2 --L 4 --finite-only");
  CHECK(ok.exit_code == 0);
}

TEST_CASE("dimension caps exit with the resource code") {
  const auto r = run_cli("spectrum --d 2 --L 2");  // 4^16 states
  CHECK(r.exit_code == 3);
}

TEST_CASE("json and csv emissions carry identical numbers") {
  const std::string args =
      "thermal --d 1 --L 1 --kappa 0.1 --g 1 --beta 0.5 1.0 --seed 7";
  const auto ja = run_cli(args + " --format json");
  const auto cb = run_cli(args + " --format csv");
  REQUIRE(ja.exit_code == 0);
  REQUIRE(cb.exit_code == 0);

  const Json doc = Json::parse(ja.stdout_text);
  std::vector<double> json_numbers;
  collect_numbers(doc, json_numbers);

  std::vector<double> csv_numbers;
  std::istringstream is(cb.stdout_text);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) continue;
    const std::string value = line.substr(comma + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end && *end == '\0' && end != value.c_str()) csv_numbers.push_back(v);
  }
  REQUIRE(json_numbers.size() <= csv_numbers.size());
  // every JSON numeric leaf appears bit-identically in the CSV rows, in order
  std::size_t ci = 0, matched = 0;
  for (double v : json_numbers) {
    while (ci < csv_numbers.size() && csv_numbers[ci] != v) ++ci;
    if (ci == csv_numbers.size()) break;
    ++matched;
    ++ci;
  }
  CHECK(matched == json_numbers.size());
}

TEST_CASE("config file values are overridden by flags") {
  const std::string cfg_path = "cli_test_config.json";
  {
    std::ofstream os(cfg_path);
    os << R"({"d": 1, "L": 1, "g": 1.0, "kappa": 0.0, "suite": "ALGEBRA"})";
  }
  const auto r = run_cli("verify --config " + cfg_path);
  CHECK(r.exit_code == 0);
  const auto r2 = run_cli("verify --config " + cfg_path + " --suite NOPE");
  CHECK(r2.exit_code == 2);
  std::remove(cfg_path.c_str());

  const auto bad = run_cli("verify --config does_not_exist.json");
  CHECK(bad.exit_code == 2);
}
