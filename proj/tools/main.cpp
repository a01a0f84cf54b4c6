// Command-line driver.  Subcommands compute the datasets behind the
// transport, relaxation, entropy, geodesic and fitting analyses and write
// plot-ready CSV/JSON into the output directory.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isingbtz/commands.hpp"
#include "isingbtz/numerics.hpp"

using namespace isingbtz;

int main(int argc, char** argv) {
  CLI::App app{
      "isingbtz - finite-temperature dynamics and thermodynamics of the "
      "critical transverse-field Ising chain, confronted with its thermal "
      "AdS3 / BTZ description"};
  app.require_subcommand(1);

  std::string config_path;
  RunConfig cfg;

  // global flags (available on every subcommand, overriding the config file)
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--format", cfg.format, "output format: csv or json");
    sub->add_option("--threads", cfg.threads,
                    "worker threads (0 = hardware concurrency)");
    sub->add_flag("--seedless", cfg.seedless,
                  "assert that no random numbers are used (always true: the "
                  "library is deterministic by construction)");
  };

  std::vector<int> L_list, M_list;
  double T_min = -1, T_max = -1;
  int T_count = -1;
  std::string T_spacing;
  double sigma_t = -1, sigma_phi = -1, omega = -1;

  CLI::App* transport = app.add_subcommand(
      "transport", "antipodal transport ratio sweep over (L, M, T) plus the "
                   "two-parameter universal-curve fit");
  add_common(transport);
  transport->add_option("--L", L_list, "chain sizes")->delimiter(',');
  transport->add_option("--M", M_list, "source angular momenta")->delimiter(',');
  transport->add_option("--T-min", T_min, "lowest temperature");
  transport->add_option("--T-max", T_max, "highest temperature");
  transport->add_option("--T-count", T_count, "number of temperatures");
  transport->add_option("--T-spacing", T_spacing, "linear or geometric");
  transport->add_option("--sigma-t", sigma_t, "source time width");
  transport->add_option("--sigma-phi", sigma_phi, "source angular width");
  transport->add_option("--omega", omega, "source energy");

  int qnm_L = -1;
  std::vector<double> qnm_T;
  double qnm_t_max = -1;
  int qnm_t_count = -1;
  CLI::App* qnm = app.add_subcommand(
      "qnm", "spatially summed response |R(t)| and its exponential-plus-"
             "offset relaxation fit");
  add_common(qnm);
  qnm->add_option("--L", qnm_L, "chain size");
  qnm->add_option("--T", qnm_T, "temperatures")->delimiter(',');
  qnm->add_option("--t-max", qnm_t_max, "largest time");
  qnm->add_option("--t-count", qnm_t_count, "number of time samples");

  int ent_L = -1;
  CLI::App* entropy = app.add_subcommand(
      "entropy", "thermal entropy curve of chain and gravity dual, with the "
                 "dS/dT minimum locations");
  add_common(entropy);
  entropy->add_option("--L", ent_L, "chain size");

  CLI::App* geodesic = app.add_subcommand(
      "geodesic", "BTZ/AdS null-geodesic trajectories and the AdS "
                  "arrival-time table");
  add_common(geodesic);

  std::string input_path;
  CLI::App* landscape = app.add_subcommand(
      "landscape", "SSE landscape over (ell, G) for transport-ratio points, "
                   "plus the higher-curvature curve");
  add_common(landscape);
  landscape->add_option("--input", input_path,
                        "CSV with T and ratio columns (e.g. transport.csv)");

  std::string fit_model;
  CLI::App* fit = app.add_subcommand("fit",
                                     "fit a points file: universal transport "
                                     "curve or exponential-plus-offset");
  add_common(fit);
  fit->add_option("--input", input_path, "CSV input file");
  fit->add_option("--model", fit_model, "universal or exp-offset");

  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "cross-check the fermionic solution against dense "
                      "exact diagonalization at small L");
  add_common(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    // config file first, then flag overrides on top
    if (!config_path.empty()) {
      const std::string out_flag = cfg.out;
      const std::string fmt_flag = cfg.format;
      const int threads_flag = cfg.threads;
      const bool seedless_flag = cfg.seedless;
      cfg = load_config(config_path);
      if (sub->count("--out")) cfg.out = out_flag;
      if (sub->count("--format")) cfg.format = fmt_flag;
      if (sub->count("--threads")) cfg.threads = threads_flag;
      if (sub->count("--seedless")) cfg.seedless = seedless_flag;
    }
    if (!L_list.empty()) cfg.L = L_list;
    if (!M_list.empty()) cfg.M = M_list;
    if (T_min > 0) cfg.T_grid.min = T_min;
    if (T_max > 0) cfg.T_grid.max = T_max;
    if (T_count > 0) cfg.T_grid.count = T_count;
    if (!T_spacing.empty()) cfg.T_grid.spacing = T_spacing;
    if (sigma_t > 0) cfg.source.sigma_t = sigma_t;
    if (sigma_phi > 0) cfg.source.sigma_phi = sigma_phi;
    if (omega > 0) cfg.source.omega = omega;
    if (qnm_L > 0) cfg.qnm_L = qnm_L;
    if (!qnm_T.empty()) cfg.qnm_T = qnm_T;
    if (qnm_t_max > 0) cfg.qnm_t_max = qnm_t_max;
    if (qnm_t_count > 0) cfg.qnm_t_count = qnm_t_count;
    if (ent_L > 0) cfg.entropy_L = ent_L;
    if (!input_path.empty()) cfg.input = input_path;
    if (!fit_model.empty()) cfg.fit_model = fit_model;
    validate_config(cfg);

    CmdResult res;
    if (*transport)
      res = cmd_transport(cfg);
    else if (*qnm)
      res = cmd_qnm(cfg);
    else if (*entropy)
      res = cmd_entropy(cfg);
    else if (*geodesic)
      res = cmd_geodesic(cfg);
    else if (*landscape)
      res = cmd_landscape(cfg);
    else if (*fit)
      res = cmd_fit(cfg);
    else if (*oracle)
      res = cmd_oracle_check(cfg);

    for (const std::string& f : res.files)
      std::cout << "wrote " << cfg.out << "/" << f << "\n";
    return 0;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
