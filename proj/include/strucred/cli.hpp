#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "strucred/calibration.hpp"

namespace strucred::cli {

// Flat key=value run configuration. Unknown keys are rejected; values must
// parse; referenced files must exist.
struct RunConfig {
  std::filesystem::path curve_file;
  std::filesystem::path quotes_file;
  double beta = 0.5;
  HMethod h_method = HMethod::Fixed;
  double h_value = 0.5;  // used by Fixed
  std::optional<double> equity_vol_1y;
  std::size_t mc_paths = 250000;
  double mc_step_days = 5.0;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";

  static RunConfig load(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value);
  void validate() const;
};

HMethod parse_h_method(const std::string& text);

// Exit codes: 0 = success, 1 = numerical failure (an `ERROR <kind>
// <maturity>` line is printed first), 2 = usage/config error (thrown as
// ConfigError/IngestionError and mapped by the binary).
int cmd_calibrate(const RunConfig& cfg, std::ostream& out);
int cmd_strip_intensity(const RunConfig& cfg, std::ostream& out);
int cmd_barrier_plot(const RunConfig& cfg, std::ostream& out);
int cmd_mc_check(const RunConfig& cfg, std::ostream& out);

struct EqSwapArgs {
  double rho = 0.0;
  std::optional<double> spread_x_bps;  // fixed X; absent with solve_fair
  bool solve_fair = false;
  double s0 = 20.0;
  double equity_vol = 0.20;
  double dividend_yield = 0.0080;
  double recovery = 0.40;
  double maturity_years = 5.0;
  int libor_frequency = 2;
};
int cmd_price_eqswap(const RunConfig& cfg, const EqSwapArgs& args, std::ostream& out);

}  // namespace strucred::cli
