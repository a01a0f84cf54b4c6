// commands.hpp - run configuration and the drivers behind the CLI
// subcommands.  Each driver computes one dataset and writes plot-ready
// CSV/JSON files; identical configurations produce byte-identical data
// files (run metadata with the timestamp goes to manifest.json only).
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "isingbtz/gravity.hpp"
#include "isingbtz/response.hpp"

namespace isingbtz {

struct GridSpec {
  double min = 0.02;
  double max = 0.6;
  int count = 15;
  std::string spacing = "linear";  // linear | geometric

  std::vector<double> values() const;
};

struct GeodesicRay {
  double Omega = 5.0;
  double M = 0.0;
  double rho_h = 0.3;  // 0 = pure AdS closed-form trajectory
  double ell = 1.0;
};

struct RunConfig {
  // transport sweep
  std::vector<int> L{128, 256, 512};
  std::vector<int> M{0, 2, 5};
  GridSpec T_grid;
  SourceProfile source;

  // gravity parameters used for comparison curves
  GravParams grav = GravParams::classical();

  // qnm
  int qnm_L = 1000;
  std::vector<double> qnm_T{1.0, 2.0};
  double qnm_t_max = 2.0;
  int qnm_t_count = 400;

  // entropy
  int entropy_L = 1000;
  double entropy_T_min = 0.01;
  double entropy_T_max = 1.0;
  int entropy_count = 400;
  std::string entropy_spacing = "hybrid";  // hybrid | linear | geometric
  double minimum_T_lo = 0.05;
  double minimum_T_hi = 0.4;

  // geodesics
  std::vector<GeodesicRay> rays{{5.0, 0.0, 0.3, 1.0}, {5.0, 0.0, 0.1, 1.0}};
  double rho_start = 2.0;
  double eps_stop = 1e-6;
  double rho_max = 1e6;

  // landscape / fit inputs
  double ell_min = 0.5, ell_max = 3.0;
  int ell_count = 50;
  double G_min = 0.5, G_max = 3.0;
  int G_count = 50;
  std::string input;                  // CSV of points for landscape/fit
  std::string fit_model = "universal";  // universal | exp-offset

  // global
  std::string out = "out";
  std::string format = "csv";  // csv | json
  int threads = 0;             // 0 = hardware concurrency
  bool seedless = false;       // assert-no-RNG flag (the library has none)
};

// Parse a JSON config file; unknown or malformed keys raise config_error
// naming the offending key.
RunConfig load_config(const std::filesystem::path& path);

// Validate ranges (positive widths, nonempty grids, ...); raises config_error.
void validate_config(const RunConfig& c);

struct CmdResult {
  std::vector<std::string> files;  // paths written, relative to out dir
  nlohmann::json summary;
};

CmdResult cmd_transport(const RunConfig& c);
CmdResult cmd_qnm(const RunConfig& c);
CmdResult cmd_entropy(const RunConfig& c);
CmdResult cmd_geodesic(const RunConfig& c);
CmdResult cmd_landscape(const RunConfig& c);
CmdResult cmd_fit(const RunConfig& c);
CmdResult cmd_oracle_check(const RunConfig& c);

}  // namespace isingbtz
