#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "strucred/cli.hpp"
#include "strucred/errors.hpp"

namespace {

using strucred::cli::EqSwapArgs;
using strucred::cli::RunConfig;

struct Overrides {
  std::string config;
  std::optional<std::string> curve, quotes, h_method, output_dir;
  std::optional<double> beta, h_value, equity_vol, mc_step_days;
  std::optional<std::uint64_t> mc_paths, seed;
};

void add_common(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config, "run configuration file (key=value)")->required();
  cmd->add_option("--curve", ov.curve, "override curve_file");
  cmd->add_option("--quotes", ov.quotes, "override quotes_file");
  cmd->add_option("--beta", ov.beta, "override beta");
  cmd->add_option("--h-method", ov.h_method,
                  "override h_method (CreditSpread|ExcursionProtection|Iterative|Fixed)");
  cmd->add_option("--h-value", ov.h_value, "override h_value");
  cmd->add_option("--equity-vol", ov.equity_vol, "override equity_vol_1y");
  cmd->add_option("--mc-paths", ov.mc_paths, "override mc_paths");
  cmd->add_option("--mc-step-days", ov.mc_step_days, "override mc_step_days");
  cmd->add_option("--seed", ov.seed, "override seed");
  cmd->add_option("--output-dir", ov.output_dir, "override output_dir");
}

RunConfig resolve(const Overrides& ov) {
  RunConfig cfg = RunConfig::load(ov.config);
  if (ov.curve) cfg.curve_file = *ov.curve;
  if (ov.quotes) cfg.quotes_file = *ov.quotes;
  if (ov.beta) cfg.beta = *ov.beta;
  if (ov.h_method) cfg.h_method = strucred::cli::parse_h_method(*ov.h_method);
  if (ov.h_value) cfg.h_value = *ov.h_value;
  if (ov.equity_vol) cfg.equity_vol_1y = *ov.equity_vol;
  if (ov.mc_paths) cfg.mc_paths = *ov.mc_paths;
  if (ov.mc_step_days) cfg.mc_step_days = *ov.mc_step_days;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.output_dir) cfg.output_dir = *ov.output_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AT1P structural credit toolkit: CDS calibration, barrier diagnostics,\n"
               "first-passage Monte Carlo and counterparty-risk equity swap pricing"};
  app.require_subcommand(1);

  Overrides ov;
  EqSwapArgs eq;

  CLI::App* calibrate = app.add_subcommand("calibrate", "bootstrap firm-value volatilities");
  add_common(calibrate, ov);
  CLI::App* strip = app.add_subcommand("strip-intensity", "piecewise-linear hazard bootstrap");
  add_common(strip, ov);
  CLI::App* barrier = app.add_subcommand("barrier-plot", "barrier and confidence-band series");
  add_common(barrier, ov);
  CLI::App* mc_check = app.add_subcommand("mc-check", "reprice quoted CDS by simulation");
  add_common(mc_check, ov);
  CLI::App* eqswap = app.add_subcommand("price-eqswap", "counterparty-risk equity swap");
  add_common(eqswap, ov);
  eqswap->add_option("--rho", eq.rho, "firm/equity correlation in [-1,1]")->required();
  auto* x_opt = eqswap->add_option("--spread-x", eq.spread_x_bps, "spread X in bps");
  eqswap->add_flag("--solve-fair", eq.solve_fair, "solve for the fair X")->excludes(x_opt);
  eqswap->add_option("--s0", eq.s0, "initial equity price");
  eqswap->add_option("--eq-vol", eq.equity_vol, "equity volatility");
  eqswap->add_option("--div-yield", eq.dividend_yield, "continuous dividend yield");
  eqswap->add_option("--eq-recovery", eq.recovery, "counterparty recovery on the swap");
  eqswap->add_option("--eq-maturity", eq.maturity_years, "swap maturity in years");
  eqswap->add_option("--libor-freq", eq.libor_frequency, "LIBOR settlements per year");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    const RunConfig cfg = resolve(ov);
    if (calibrate->parsed()) return strucred::cli::cmd_calibrate(cfg, std::cout);
    if (strip->parsed()) return strucred::cli::cmd_strip_intensity(cfg, std::cout);
    if (barrier->parsed()) return strucred::cli::cmd_barrier_plot(cfg, std::cout);
    if (mc_check->parsed()) return strucred::cli::cmd_mc_check(cfg, std::cout);
    if (eqswap->parsed()) return strucred::cli::cmd_price_eqswap(cfg, eq, std::cout);
    return 2;
  } catch (const strucred::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const strucred::IngestionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
