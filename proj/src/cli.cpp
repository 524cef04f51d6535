#include "strucred/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "strucred/cds.hpp"
#include "strucred/equity_swap.hpp"
#include "strucred/errors.hpp"
#include "strucred/intensity.hpp"
#include "strucred/monte_carlo.hpp"
#include "strucred/survival_curve.hpp"

namespace strucred::cli {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

struct LoadedMarket {
  DiscountCurve curve;
  CdsQuoteSet quotes;
};

LoadedMarket load_market(const RunConfig& cfg) {
  cfg.validate();
  DiscountCurve curve = DiscountCurve::load_csv(cfg.curve_file);
  CdsQuoteSet quotes = CdsQuoteSet::load_csv(cfg.quotes_file, curve.anchor());
  return {std::move(curve), std::move(quotes)};
}

CalibrationResult run_calibration(const RunConfig& cfg, const LoadedMarket& mkt) {
  switch (cfg.h_method) {
    case HMethod::Fixed: {
      CalibrationResult res =
          bootstrap_volatility(mkt.quotes, mkt.curve, cfg.h_value, cfg.beta);
      res.h_origin = {HMethod::Fixed, cfg.h_value, 0};
      return res;
    }
    case HMethod::ExcursionProtection: {
      const double h = excursion_protection_h(mkt.quotes.quotes.front().recovery);
      CalibrationResult res = bootstrap_volatility(mkt.quotes, mkt.curve, h, cfg.beta);
      res.h_origin = {HMethod::ExcursionProtection, h, 0};
      return res;
    }
    case HMethod::CreditSpread: {
      if (!cfg.equity_vol_1y)
        throw ConfigError("h_method=CreditSpread requires equity_vol_1y");
      const double h =
          credit_spread_h(mkt.quotes, mkt.curve, cfg.beta, *cfg.equity_vol_1y);
      CalibrationResult res =
          bootstrap_volatility(mkt.quotes, mkt.curve, h, cfg.beta, cfg.equity_vol_1y);
      res.h_origin = {HMethod::CreditSpread, h, 0};
      return res;
    }
    case HMethod::Iterative: {
      if (!cfg.equity_vol_1y) throw ConfigError("h_method=Iterative requires equity_vol_1y");
      return iterative_h(mkt.quotes, mkt.curve, cfg.beta, *cfg.equity_vol_1y).second;
    }
  }
  throw ConfigError("unhandled h_method");
}

const char* h_method_name(HMethod m) {
  switch (m) {
    case HMethod::CreditSpread: return "CreditSpread";
    case HMethod::ExcursionProtection: return "ExcursionProtection";
    case HMethod::Iterative: return "Iterative";
    case HMethod::Fixed: return "Fixed";
  }
  return "?";
}

// Numerical failures become one machine-readable line and exit code 1.
int report_numerical_error(std::ostream& out, const std::exception& e, const char* kind,
                           const std::string& maturity) {
  out << "ERROR " << kind << " " << maturity << "\n";
  out << "# " << e.what() << "\n";
  return 1;
}

template <class Fn>
int guard_numerical(std::ostream& out, Fn&& fn) {
  try {
    return fn();
  } catch (const NegativeIntensityError& e) {
    return report_numerical_error(out, e, "NegativeIntensity", format_iso_date(e.maturity()));
  } catch (const NoRootInBracketError& e) {
    return report_numerical_error(out, e, "NoRootInBracket", format_iso_date(e.maturity()));
  } catch (const ConvergenceError& e) {
    return report_numerical_error(out, e, "NonConvergence", "-");
  }
}

void write_survival_csv(std::ofstream& out, const SurvivalCurve& s, double horizon) {
  out << "t,survival\n";
  const int days = int(std::ceil(horizon * 365.0));
  for (int d = 0; d <= days; ++d) {
    const double t = d / 365.0;
    out << fmt("%.6f", t) << ',' << fmt("%.8f", s.survival(t)) << '\n';
  }
}

}  // namespace

HMethod parse_h_method(const std::string& text) {
  if (text == "CreditSpread") return HMethod::CreditSpread;
  if (text == "ExcursionProtection") return HMethod::ExcursionProtection;
  if (text == "Iterative") return HMethod::Iterative;
  if (text == "Fixed") return HMethod::Fixed;
  throw ConfigError("unknown h_method '" + text +
                    "' (CreditSpread|ExcursionProtection|Iterative|Fixed)");
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  RunConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    try {
      cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const auto as_double = [&] {
    try {
      std::size_t pos = 0;
      const double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("bad numeric value '" + value + "' for key " + key);
    }
  };
  if (key == "curve_file")
    curve_file = value;
  else if (key == "quotes_file")
    quotes_file = value;
  else if (key == "beta")
    beta = as_double();
  else if (key == "h_method")
    h_method = parse_h_method(value);
  else if (key == "h_value")
    h_value = as_double();
  else if (key == "equity_vol_1y")
    equity_vol_1y = as_double();
  else if (key == "mc_paths") {
    const double v = as_double();
    if (v < 1 || v != std::floor(v)) throw ConfigError("mc_paths must be a positive integer");
    mc_paths = std::size_t(v);
  } else if (key == "mc_step_days") {
    mc_step_days = as_double();
    if (!(mc_step_days > 0)) throw ConfigError("mc_step_days must be positive");
  } else if (key == "seed") {
    const double v = as_double();
    if (v < 0 || v != std::floor(v)) throw ConfigError("seed must be a nonnegative integer");
    seed = std::uint64_t(v);
  } else if (key == "output_dir")
    output_dir = value;
  else
    throw ConfigError("unknown config key '" + key + "'");
}

void RunConfig::validate() const {
  if (curve_file.empty()) throw ConfigError("curve_file not set");
  if (quotes_file.empty()) throw ConfigError("quotes_file not set");
  if (!std::filesystem::exists(curve_file))
    throw ConfigError("curve_file does not exist: " + curve_file.string());
  if (!std::filesystem::exists(quotes_file))
    throw ConfigError("quotes_file does not exist: " + quotes_file.string());
  if (!(h_value > 0.0 && h_value < 1.0) && h_method == HMethod::Fixed)
    throw ConfigError("h_value must be in (0,1)");
}

int cmd_calibrate(const RunConfig& cfg, std::ostream& out) {
  const LoadedMarket mkt = load_market(cfg);
  return guard_numerical(out, [&] {
    const CalibrationResult res = run_calibration(cfg, mkt);

    auto table = open_out(cfg.output_dir, "calibration.csv");
    table << "maturity,spread_bps,vol_pct,survival_pct\n";
    for (const MaturityDiagnostic& d : res.by_maturity)
      table << format_iso_date(d.maturity) << ',' << fmt("%.2f", d.spread_bps) << ','
            << fmt("%.3f", 100.0 * d.sigma) << ',' << fmt("%.3f", 100.0 * d.survival)
            << '\n';

    At1pSurvival surv{res.params};
    auto curve_csv = open_out(cfg.output_dir, "survival.csv");
    write_survival_csv(curve_csv, surv, res.by_maturity.back().maturity_time);

    out << "h_method " << h_method_name(res.h_origin.method) << " h "
        << fmt("%.6f", res.h_origin.h) << " beta " << fmt("%.4f", cfg.beta) << "\n";
    for (const MaturityDiagnostic& d : res.by_maturity)
      out << format_iso_date(d.maturity) << "  R=" << fmt("%8.2f", d.spread_bps)
          << "bp  vol=" << fmt("%8.3f", 100.0 * d.sigma)
          << "%  Q=" << fmt("%7.3f", 100.0 * d.survival) << "%\n";
    return 0;
  });
}

int cmd_strip_intensity(const RunConfig& cfg, std::ostream& out) {
  const LoadedMarket mkt = load_market(cfg);
  return guard_numerical(out, [&] {
    const IntensityCurve intensity = calibrate_intensity(mkt.quotes, mkt.curve);
    IntensitySurvival surv{intensity};

    auto table = open_out(cfg.output_dir, "intensity.csv");
    table << "maturity,spread_bps,intensity_pct,survival_pct\n";
    for (std::size_t k = 0; k < mkt.quotes.quotes.size(); ++k) {
      const CdsQuote& q = mkt.quotes.quotes[k];
      const double t = year_fraction(mkt.quotes.valuation, q.maturity);
      table << format_iso_date(q.maturity) << ',' << fmt("%.2f", q.spread_bps) << ','
            << fmt("%.3f", 100.0 * intensity.nodes()[k + 1].second) << ','
            << fmt("%.3f", 100.0 * surv.survival(t)) << '\n';
      out << format_iso_date(q.maturity)
          << "  lambda=" << fmt("%.3f", 100.0 * intensity.nodes()[k + 1].second)
          << "%  Q=" << fmt("%7.3f", 100.0 * surv.survival(t)) << "%\n";
    }

    // Same-quote comparison of the two models' survival curves.
    const CalibrationResult res = run_calibration(cfg, mkt);
    At1pSurvival at1p{res.params};
    auto cmp = open_out(cfg.output_dir, "survival_compare.csv");
    cmp << "t,survival_structural,survival_intensity,diff\n";
    const double horizon = year_fraction(mkt.quotes.valuation, mkt.quotes.quotes.back().maturity);
    const int days = int(std::ceil(horizon * 365.0));
    for (int d = 0; d <= days; ++d) {
      const double t = d / 365.0;
      const double qa = at1p.survival(t), qi = surv.survival(t);
      cmp << fmt("%.6f", t) << ',' << fmt("%.8f", qa) << ',' << fmt("%.8f", qi) << ','
          << fmt("%.8f", qa - qi) << '\n';
    }
    return 0;
  });
}

int cmd_barrier_plot(const RunConfig& cfg, std::ostream& out) {
  const LoadedMarket mkt = load_market(cfg);
  return guard_numerical(out, [&] {
    const CalibrationResult res = run_calibration(cfg, mkt);
    FirmValueDynamics dyn;
    dyn.rate = mkt.curve.instantaneous_forward_curve();
    dyn.payout = PiecewiseConstant(0.0);  // case-study payout ratio
    dyn.sigma = res.params.sigma();
    dyn.beta = res.params.beta();
    dyn.v0 = 1.0;
    const double h_level = res.params.h();

    auto table = open_out(cfg.output_dir, "barrier.csv");
    table << "t,barrier,expected_v,band_lo,band_hi\n";
    double hit_time = -1.0;
    for (int d = 0; d <= 3650; ++d) {
      const double t = d / 365.0;
      const double barrier = true_barrier(dyn, h_level, t);
      const ConfidenceBand band = confidence_band(dyn, t);
      if (hit_time < 0.0 && t > 0.0 && band.lower <= barrier) hit_time = t;
      table << fmt("%.6f", t) << ',' << fmt("%.8f", barrier) << ','
            << fmt("%.8f", band.expected) << ',' << fmt("%.8f", band.lower) << ','
            << fmt("%.8f", band.upper) << '\n';
    }
    if (hit_time >= 0.0)
      out << "band_hit_years " << fmt("%.4f", hit_time) << "\n";
    else
      out << "band_hit_years none\n";
    return 0;
  });
}

int cmd_mc_check(const RunConfig& cfg, std::ostream& out) {
  const LoadedMarket mkt = load_market(cfg);
  return guard_numerical(out, [&] {
    const CalibrationResult res = run_calibration(cfg, mkt);
    McConfig mc;
    mc.n_paths = cfg.mc_paths;
    mc.step = cfg.mc_step_days / 365.0;
    mc.seed = cfg.seed;

    auto table = open_out(cfg.output_dir, "mc_check.csv");
    table << "maturity,mc_value_bps,std_err_bps\n";
    for (const CdsQuote& q : mkt.quotes.quotes) {
      CdsContract contract{PaymentSchedule::backward_from(mkt.quotes.valuation, q.maturity,
                                                          mkt.quotes.premium_frequency),
                           q.spread(), q.lgd(), CdsConvention::Running};
      const McEstimate est = mc_cds_value(res.params, contract, mkt.curve, mc);
      const std::string se_txt =
          std::isnan(est.std_error) ? "NA" : fmt("%.4f", 1e4 * est.std_error);
      table << format_iso_date(q.maturity) << ',' << fmt("%.4f", 1e4 * est.mean) << ','
            << se_txt << '\n';
      out << format_iso_date(q.maturity) << "  mc=" << fmt("%8.4f", 1e4 * est.mean)
          << "bp  se=" << se_txt << "bp\n";
    }
    return 0;
  });
}

int cmd_price_eqswap(const RunConfig& cfg, const EqSwapArgs& args, std::ostream& out) {
  if (!args.solve_fair && !args.spread_x_bps)
    throw ConfigError("price-eqswap: give --spread-x or --solve-fair");
  if (std::abs(args.rho) > 1.0) throw ConfigError("price-eqswap: |rho| must be <= 1");
  const LoadedMarket mkt = load_market(cfg);
  return guard_numerical(out, [&] {
    const CalibrationResult res = run_calibration(cfg, mkt);

    const int periods = int(std::lround(args.maturity_years * args.libor_frequency));
    EquitySwapContract contract{
        PaymentSchedule::forward_from(mkt.curve.anchor(), periods, args.libor_frequency),
        1.0,
        args.s0,
        0.0,
        args.recovery,
        args.dividend_yield};
    JointDynamics dyn{res.params, args.equity_vol, args.rho};

    McConfig mc;
    mc.n_paths = cfg.mc_paths;
    mc.step = cfg.mc_step_days / 365.0;
    mc.seed = cfg.seed;

    double x_bps;
    EqSwapPrice price;
    if (args.solve_fair) {
      const FairSpreadResult fair = fair_equity_swap_spread(contract, dyn, mkt.curve, mc);
      x_bps = 1e4 * fair.spread;
      price = fair.at_solution;
    } else {
      contract.spread = *args.spread_x_bps * 1e-4;
      x_bps = *args.spread_x_bps;
      price = price_equity_swap(contract, dyn, mkt.curve, mc);
    }

    const double notional = contract.k_shares * contract.s0;
    auto table = open_out(cfg.output_dir, "eqswap.csv");
    table << "rho,spread_x_bps,price,std_error,price_bps_notional,se_bps_notional,"
             "option_leg,cv_correlation,n_paths\n";
    table << fmt("%.4f", args.rho) << ',' << fmt("%.4f", x_bps) << ','
          << fmt("%.8f", price.price) << ',' << fmt("%.8f", price.std_error) << ','
          << fmt("%.4f", 1e4 * price.price / notional) << ','
          << fmt("%.4f", 1e4 * price.std_error / notional) << ','
          << fmt("%.8f", price.option_leg) << ',' << fmt("%.4f", price.cv_correlation) << ','
          << std::to_string(price.n_paths) << '\n';

    out << "rho " << fmt("%.4f", args.rho) << "  X " << fmt("%.4f", x_bps) << "bp  price "
        << fmt("%.6f", price.price) << " (" << fmt("%.4f", 1e4 * price.price / notional)
        << "bp of notional)  se " << fmt("%.4f", 1e4 * price.std_error / notional) << "bp\n";
    return 0;
  });
}

}  // namespace strucred::cli
