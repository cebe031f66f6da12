// Command-line driver: spectrum, thermal, verify, bzconst.
//
// Config precedence: JSON config file (flat keys), then command-line flags.
// Every report embeds the schema version, build id, full config and seed.
// Exit codes: 0 ok, 1 check failure or divergence, 2 config error,
// 3 resource cap.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>

#include "rpbcs/bzconst.hpp"
#include "rpbcs/errors.hpp"
#include "rpbcs/hamiltonian.hpp"
#include "rpbcs/report.hpp"
#include "rpbcs/thermal.hpp"
#include "rpbcs/verify.hpp"
#include "rpbcs/version.hpp"

namespace {

using rpbcs::Json;

struct RunConfig {
  int d = 0;
  int L = 0;
  double kappa = 0.0;
  double g = 1.0;
  double gprime = 0.0;
  double B = 0.0;
  std::vector<double> beta = {1.0};
  std::uint64_t seed = 12345;
  std::string suite = "ALL";
  int R = 1;
  double epsilon = 0.25;
  double delta_e1 = 1.0;
  double tolerance_scale = 1.0;
  int draws = 200;
  int zeta_draws = 50;
  std::size_t dense_cap = rpbcs::kDefaultDenseCap;
  std::size_t op_cap = rpbcs::kDefaultOpCap;
  bool finite_only = false;
  std::string out;
  std::string format = "json";
};

Json config_to_json(const RunConfig& c) {
  Json j;
  j["d"] = c.d;
  j["L"] = c.L;
  j["kappa"] = c.kappa;
  j["g"] = c.g;
  j["gprime"] = c.gprime;
  j["B"] = c.B;
  j["beta"] = c.beta;
  j["seed"] = c.seed;
  j["suite"] = c.suite;
  j["R"] = c.R;
  j["epsilon"] = c.epsilon;
  j["delta_e1"] = c.delta_e1;
  j["tolerance_scale"] = c.tolerance_scale;
  j["draws"] = c.draws;
  j["zeta_draws"] = c.zeta_draws;
  j["dense_cap"] = c.dense_cap;
  j["op_cap"] = c.op_cap;
  j["finite_only"] = c.finite_only;
  j["format"] = c.format;
  return j;
}

void load_config_file(const std::string& path, RunConfig& c) {
  std::ifstream is(path);
  if (!is) throw rpbcs::ConfigError("cannot open config file: " + path);
  Json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw rpbcs::ConfigError(std::string("malformed config JSON: ") + e.what());
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const Json& v = it.value();
    try {
      if (k == "d") c.d = v.get<int>();
      else if (k == "L") c.L = v.get<int>();
      else if (k == "kappa") c.kappa = v.get<double>();
      else if (k == "g") c.g = v.get<double>();
      else if (k == "gprime") c.gprime = v.get<double>();
      else if (k == "B") c.B = v.get<double>();
      else if (k == "beta") c.beta = v.get<std::vector<double>>();
      else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else if (k == "suite") c.suite = v.get<std::string>();
      else if (k == "R") c.R = v.get<int>();
      else if (k == "epsilon") c.epsilon = v.get<double>();
      else if (k == "delta_e1") c.delta_e1 = v.get<double>();
      else if (k == "tolerance_scale") c.tolerance_scale = v.get<double>();
      else if (k == "draws") c.draws = v.get<int>();
      else if (k == "zeta_draws") c.zeta_draws = v.get<int>();
      else if (k == "dense_cap") c.dense_cap = v.get<std::size_t>();
      else if (k == "op_cap") c.op_cap = v.get<std::size_t>();
      else if (k == "finite_only") c.finite_only = v.get<bool>();
      else if (k == "out") c.out = v.get<std::string>();
      else if (k == "format") c.format = v.get<std::string>();
      else throw rpbcs::ConfigError("unknown config key: " + k);
    } catch (const Json::exception& e) {
      throw rpbcs::ConfigError("bad value for config key '" + k + "': " + e.what());
    }
  }
}

void validate(const RunConfig& c, bool needs_lattice) {
  if (needs_lattice) {
    if (c.d < 1) throw rpbcs::ConfigError("missing or invalid required flag --d");
    if (c.L < 1) throw rpbcs::ConfigError("missing or invalid required flag --L");
  }
  for (double v : {c.kappa, c.g, c.gprime, c.B, c.epsilon, c.delta_e1,
                   c.tolerance_scale})
    if (!std::isfinite(v)) throw rpbcs::ConfigError("non-finite numeric flag");
  if (c.beta.empty())
    throw rpbcs::ConfigError("at least one --beta value is required");
  for (double bt : c.beta)
    if (!std::isfinite(bt) || bt < 0.0)
      throw rpbcs::ConfigError("beta values must be finite and >= 0");
  if (c.tolerance_scale <= 0.0)
    throw rpbcs::ConfigError("tolerance scale must be positive");
  if (c.format != "json" && c.format != "csv")
    throw rpbcs::ConfigError("format must be json or csv");
}

Json report_shell(const std::string& command, const RunConfig& c) {
  Json j;
  j["schema_version"] = rpbcs::kReportSchemaVersion;
  j["build_id"] = rpbcs::kBuildId;
  j["command"] = command;
  j["seed"] = c.seed;
  j["config"] = config_to_json(c);
  j["nn_pair_convention"] =
      "one edge per (site, direction); two edges per unordered pair at side 2";
  return j;
}

void emit(const Json& doc, const RunConfig& c) {
  const std::string text =
      (c.format == "csv") ? rpbcs::json_to_csv(doc) : doc.dump(2) + "\n";
  if (c.out.empty())
    std::cout << text;
  else
    rpbcs::write_text_file(c.out, text);
}

int cmd_spectrum(const RunConfig& c) {
  validate(c, true);
  const auto lat = rpbcs::build_lattice(c.d, c.L);
  const auto basis = rpbcs::build_basis(lat, c.op_cap);
  rpbcs::ModelParams mp{c.kappa, c.g, c.gprime, c.B, c.beta.front()};
  const auto h = rpbcs::build_full(basis, lat, mp);
  const auto sd = rpbcs::diagonalize(h, basis, c.dense_cap);

  Json doc = report_shell("spectrum", c);
  Json sectors = Json::array();
  for (const auto& blk : sd.blocks) {
    Json s;
    s["sz"] = blk.label.sz;
    s["parity"] = blk.label.parity;
    s["dim"] = blk.states.size();
    std::vector<double> ev(blk.evals.data(), blk.evals.data() + blk.evals.size());
    s["eigenvalues"] = ev;
    sectors.push_back(std::move(s));
  }
  doc["results"]["sectors"] = sectors;
  doc["results"]["e0"] = sd.e0;
  doc["results"]["ground_degeneracy"] = sd.ground_degeneracy;
  doc["results"]["degeneracy_tol"] = sd.degeneracy_tol;
  emit(doc, c);
  return 0;
}

int cmd_thermal(const RunConfig& c) {
  validate(c, true);
  const auto lat = rpbcs::build_lattice(c.d, c.L);
  const auto basis = rpbcs::build_basis(lat, c.op_cap);
  rpbcs::ModelParams mp{c.kappa, c.g, c.gprime, c.B, c.beta.front()};
  const auto h = rpbcs::build_full(basis, lat, mp);
  const auto sd = rpbcs::diagonalize(h, basis, c.dense_cap);
  const auto grid = rpbcs::BZGrid::lattice_grid(c.d, c.L);

  Json doc = report_shell("thermal", c);
  Json rows = Json::array();
  for (double beta : c.beta) {
    Json row;
    row["beta"] = beta;
    double occ = 0.0;
    for (int s = 0; s < lat.n_sites; ++s)
      for (rpbcs::Spin sp : {rpbcs::Spin::Up, rpbcs::Spin::Down})
        occ += rpbcs::thermal_expectation(sd, rpbcs::number_op(basis, s, sp),
                                          beta)
                   .real();
    row["mean_occupation"] = occ / (2.0 * lat.n_sites);
    const auto me = rpbcs::mean_energies(sd, basis, lat, h, beta);
    row["energy_per_site"] = me.e_mean;
    row["bond_energy_e1"] = me.e1;
    if (beta > 0.0) {
      row["free_energy_per_site"] = me.free_energy;
      row["entropy_per_site"] = me.entropy;
    } else {
      row["free_energy_per_site"] = nullptr;
      row["entropy_per_site"] = nullptr;
    }
    row["m_lro"] = rpbcs::lro(sd, basis, lat, beta);
    Json table = Json::array();
    for (const auto& k : grid.kpoints) {
      const auto v = rpbcs::gbc_at_p(sd, basis, lat, h, k, beta);
      Json entry;
      entry["k"] = k;
      entry["g_p"] = v.g_p;
      entry["b_p"] = v.b_p;
      entry["c_p"] = v.c_p;
      table.push_back(std::move(entry));
    }
    row["momentum_table"] = table;
    rows.push_back(std::move(row));
  }
  doc["results"]["rows"] = rows;
  emit(doc, c);
  return 0;
}

int cmd_verify(const RunConfig& c) {
  validate(c, true);
  rpbcs::SuiteParams sp;
  sp.d = c.d;
  sp.L = c.L;
  sp.kappa = c.kappa;
  sp.g = c.g;
  sp.gprime = c.gprime;
  sp.B = c.B;
  sp.betas = c.beta;
  sp.R = c.R;
  sp.epsilon = c.epsilon;
  sp.delta_e1 = c.delta_e1;
  sp.tolerance_scale = c.tolerance_scale;
  sp.domination_draws = c.draws;
  sp.zeta_draws = c.zeta_draws;
  sp.seed = c.seed;
  sp.dense_cap = c.dense_cap;
  sp.op_cap = c.op_cap;
  const auto rep = rpbcs::run_suite(c.suite, sp);

  Json doc = report_shell("verify", c);
  doc["results"] = rpbcs::report_to_json(rep);
  emit(doc, c);
  return rep.all_passed() ? 0 : 1;
}

int cmd_bzconst(const RunConfig& c) {
  validate(c, true);
  Json doc = report_shell("bzconst", c);
  Json& r = doc["results"];
  r["i_d_finite"] = rpbcs::i_d_finite(c.d, c.L);
  if (!c.finite_only) {
    const auto qr = rpbcs::i_d_infinite(c.d);  // throws for d <= 2
    r["i_d"] = qr.value;
    r["i_d_error"] = qr.error;
    r["i_d_resolutions"] = qr.resolutions;
    r["i_d_raw_integral"] = qr.raw;
    r["i_d_stages"] = qr.stages;
    r["i_d_extrapolation_order"] = qr.extrapolation_order;
  }
  Json gtab = Json::array();
  std::vector<int> ls = {c.L};
  if (c.d <= 3) ls = {c.L, 2 * c.L, 4 * c.L};
  else if (c.d == 4) ls = {c.L, 2 * c.L};
  for (int lv : ls) {
    Json e;
    e["L"] = lv;
    e["g_d"] = rpbcs::g_d(c.d, lv);
    gtab.push_back(std::move(e));
  }
  r["g_d_table"] = gtab;
  Json dtab = Json::array();
  for (double beta : c.beta) {
    if (beta <= 0.0) continue;
    Json e;
    e["beta"] = beta;
    e["delta"] = rpbcs::delta_beta(c.d, c.L, beta, c.g);
    e["delta_prime"] = rpbcs::delta_prime_beta(c.d, c.L, beta, c.g);
    dtab.push_back(std::move(e));
  }
  r["delta_table"] = dtab;
  emit(doc, c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  rpbcs::apply_thread_env();

  RunConfig cfg;
  // config file first, flags override
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string a = argv[i];
      if (a == "--config" && i + 1 < argc) load_config_file(argv[i + 1], cfg);
      else if (a.rfind("--config=", 0) == 0) load_config_file(a.substr(9), cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Exact-diagonalization laboratory for a pi-flux BCS lattice model"};
  app.require_subcommand(1);
  std::string config_path;  // consumed above; registered so CLI11 accepts it

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (flat keys)");
    sub->add_option("--d", cfg.d, "lattice dimension");
    sub->add_option("--L", cfg.L, "lattice half-side (side is 2L)");
    sub->add_option("--kappa", cfg.kappa, "hopping amplitude");
    sub->add_option("--g", cfg.g, "pairing coupling (> 0)");
    sub->add_option("--gprime", cfg.gprime, "Coulomb coupling (>= 0)");
    sub->add_option("--B", cfg.B, "symmetry-breaking field");
    sub->add_option("--beta", cfg.beta, "inverse temperature(s)")
        ->expected(-1);
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--suite", cfg.suite,
                    "ALGEBRA|GAUGE|DOMINATION|CORRELATION|INFRARED|"
                    "VARIATIONAL|NGMODE|ALL");
    sub->add_option("--R", cfg.R, "window radius");
    sub->add_option("--epsilon", cfg.epsilon, "trial-state filter exponent");
    sub->add_option("--delta-e1", cfg.delta_e1, "spectral window upper edge");
    sub->add_option("--tolerance-scale", cfg.tolerance_scale,
                    "scale factor on every tolerance (> 0)");
    sub->add_option("--draws", cfg.draws, "random field draws");
    sub->add_option("--zeta-draws", cfg.zeta_draws, "random zeta draws");
    sub->add_option("--dense-cap", cfg.dense_cap,
                    "dense diagonalization dimension cap");
    sub->add_option("--op-cap", cfg.op_cap, "operator construction cap");
    sub->add_flag("--finite-only", cfg.finite_only,
                  "skip the infinite-volume quadrature");
    sub->add_option("--out", cfg.out, "output path (default: stdout)");
    sub->add_option("--format", cfg.format, "json|csv");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "sector-resolved spectrum");
  CLI::App* thermal = app.add_subcommand("thermal", "thermal observables per beta");
  CLI::App* verify = app.add_subcommand("verify", "inequality/identity suites");
  CLI::App* bzconst = app.add_subcommand("bzconst", "momentum-sum constants");
  for (CLI::App* sub : {spectrum, thermal, verify, bzconst}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (thermal->parsed()) return cmd_thermal(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (bzconst->parsed()) return cmd_bzconst(cfg);
  } catch (const rpbcs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rpbcs::GeometryError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rpbcs::CapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const rpbcs::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
