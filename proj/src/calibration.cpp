#include "strucred/calibration.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "strucred/cds.hpp"
#include "strucred/errors.hpp"
#include "strucred/intensity.hpp"
#include "strucred/root_finding.hpp"
#include "strucred/survival_curve.hpp"

namespace strucred {

namespace {

// Volatility curve from the pieces solved so far; the piece ending at the
// last solved maturity extends flat, which is all the CDS being solved sees.
At1pParams make_params(double h, double beta, const std::vector<double>& ends,
                       const std::vector<double>& sigmas) {
  std::vector<double> bp(ends.begin(), ends.begin() + (sigmas.size() - 1));
  return At1pParams(h, beta, PiecewiseConstant(std::move(bp), sigmas));
}

// psi(h; beta, T, sigma) must be strictly decreasing in h before we invert
// it; a violation would mean the survival formula itself is broken.
void assert_psi_decreasing(double beta, double sigma, double T) {
  double prev = flat_survival(1e-4, beta, sigma, T);
  for (int i = 1; i <= 32; ++i) {
    const double h = 1e-4 + (1.0 - 2e-4) * i / 32.0;
    const double cur = flat_survival(h, beta, sigma, T);
    if (!(cur < prev))
      throw std::logic_error("credit_spread_h: psi(h) not strictly decreasing");
    prev = cur;
  }
}

double solve_h_for_survival(double target, double beta, double sigma, double T) {
  assert_psi_decreasing(beta, sigma, T);
  const auto f = [&](double h) { return flat_survival(h, beta, sigma, T) - target; };
  constexpr double kLo = 1e-6, kHi = 1.0 - 1e-9;
  if (!brackets_root(f(kLo), f(kHi)))
    throw std::domain_error("barrier search: target survival outside psi range");
  return find_root(f, kLo, kHi, 1e-14, 1e-13).x;
}

}  // namespace

double flat_survival(double h, double beta, double sigma, double T) {
  return survival_probability(At1pParams(h, beta, PiecewiseConstant(sigma)), T);
}

CalibrationResult bootstrap_volatility(const CdsQuoteSet& quotes, const DiscountCurve& curve,
                                       double h, double beta,
                                       std::optional<double> pinned_first_vol,
                                       const CalibrationConfig& config) {
  if (quotes.quotes.empty()) throw std::invalid_argument("bootstrap: no quotes");
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("bootstrap: need 0 < h < 1");

  std::vector<double> ends;
  for (const CdsQuote& q : quotes.quotes)
    ends.push_back(year_fraction(quotes.valuation, q.maturity));

  std::vector<double> sigmas;
  std::vector<MaturityDiagnostic> diags;

  for (std::size_t k = 0; k < quotes.quotes.size(); ++k) {
    const CdsQuote& q = quotes.quotes[k];
    CdsContract contract{
        PaymentSchedule::backward_from(quotes.valuation, q.maturity, quotes.premium_frequency),
        q.spread(), q.lgd(), CdsConvention::Running};

    sigmas.push_back(0.0);
    const auto price_at = [&](double sig) {
      sigmas.back() = sig;
      At1pSurvival s{make_params(h, beta, ends, sigmas)};
      return cds_price(contract, s, curve, config.grid_step_days);
    };

    MaturityDiagnostic diag;
    diag.maturity = q.maturity;
    diag.maturity_time = ends[k];
    diag.spread_bps = q.spread_bps;

    if (!(q.spread_bps > 0.0)) {
      // zero implied default probability: pin the piece at the floor
      sigmas.back() = config.vol_lo;
      diag.sigma = config.vol_lo;
      diag.residual = price_at(config.vol_lo);
      diag.zero_default_floor = true;
      diags.push_back(diag);
      continue;
    }

    double lo = config.vol_lo, hi = config.vol_hi;
    if (pinned_first_vol && k == 0 && *pinned_first_vol > 2.0 * config.vol_lo) {
      // Center the initial search on the externally suggested level; the
      // piece is still solved, so the result may differ from the pin.
      lo = std::max(config.vol_lo, 0.5 * *pinned_first_vol);
      hi = std::min(config.vol_hi, 2.0 * *pinned_first_vol);
    }
    double f_lo = price_at(lo), f_hi = price_at(hi);
    if (!brackets_root(f_lo, f_hi)) {
      lo = config.vol_lo;
      hi = config.vol_hi;
      f_lo = price_at(lo);
      f_hi = price_at(hi);
    }
    if (!brackets_root(f_lo, f_hi)) {
      // expand once before failing
      hi = 2.0 * config.vol_hi;
      f_hi = price_at(hi);
    }
    if (!brackets_root(f_lo, f_hi))
      throw NoRootInBracketError(q.maturity,
                                 "volatility bootstrap: no root in bracket at maturity " +
                                     format_iso_date(q.maturity));
    const RootResult root = find_root(price_at, lo, hi, config.price_tol);
    if (!root.converged || std::abs(root.f) > config.price_tol)
      throw NoRootInBracketError(q.maturity,
                                 "volatility bootstrap: solver stalled at maturity " +
                                     format_iso_date(q.maturity));
    sigmas.back() = root.x;
    diag.sigma = root.x;
    diag.residual = root.f;
    diag.iterations = root.iterations;
    diags.push_back(diag);
  }

  At1pParams params = make_params(h, beta, ends, sigmas);
  for (std::size_t k = 0; k < diags.size(); ++k)
    diags[k].survival = survival_probability(params, diags[k].maturity_time);
  return CalibrationResult{std::move(params), std::move(diags),
                           HOrigin{HMethod::Fixed, h, 0}};
}

double credit_spread_h(const CdsQuoteSet& quotes, const DiscountCurve& curve, double beta,
                       double equity_vol_1y) {
  if (quotes.quotes.empty()) throw std::invalid_argument("credit_spread_h: no quotes");
  const IntensityCurve intensity = calibrate_intensity(quotes, curve);
  const double t1 = year_fraction(quotes.valuation, quotes.quotes.front().maturity);
  const double target = survival_from_intensity(intensity, t1);
  return solve_h_for_survival(target, beta, equity_vol_1y, t1);
}

double excursion_protection_h(double recovery) {
  if (!(recovery > 0.0 && recovery < 1.0))
    throw std::invalid_argument("excursion_protection_h: recovery must be in (0,1)");
  return recovery;
}

std::pair<double, CalibrationResult> iterative_h(const CdsQuoteSet& quotes,
                                                 const DiscountCurve& curve, double beta,
                                                 double equity_vol_1y, int max_iter,
                                                 double h_tol,
                                                 const CalibrationConfig& config) {
  if (quotes.quotes.empty()) throw std::invalid_argument("iterative_h: no quotes");
  CdsQuoteSet first_only = quotes;
  first_only.quotes.resize(1);
  const double t1 = year_fraction(quotes.valuation, quotes.quotes.front().maturity);

  double h = 0.5;
  std::ostringstream trace;
  int it = 0;
  for (; it < max_iter; ++it) {
    const CalibrationResult step =
        bootstrap_volatility(first_only, curve, h, beta, {}, config);
    const double sigma_i = step.by_maturity.front().sigma;
    const double survival_i = flat_survival(h, beta, sigma_i, t1);
    const double h_next = solve_h_for_survival(survival_i, beta, equity_vol_1y, t1);
    trace << "  i=" << it + 1 << " h=" << h << " sigma=" << sigma_i << " -> h=" << h_next
          << "\n";
    const bool done = std::abs(sigma_i - equity_vol_1y) < 1e-6 || std::abs(h_next - h) < h_tol;
    h = h_next;
    if (done) break;
  }
  if (it == max_iter)
    throw ConvergenceError("iterative_h: no convergence in " + std::to_string(max_iter) +
                           " iterations\n" + trace.str());

  CalibrationResult full = bootstrap_volatility(quotes, curve, h, beta, equity_vol_1y, config);
  full.h_origin = HOrigin{HMethod::Iterative, h, it + 1};
  return {h, std::move(full)};
}

CovenantCheck check_debt_covenant(double h, double beta, const PiecewiseConstant& sigma,
                                  const PiecewiseConstant& payout, double debt_face,
                                  const DiscountCurve& curve, double t_bar) {
  if (!(debt_face > 0.0) || !(t_bar > 0.0))
    throw std::invalid_argument("covenant: need positive debt and horizon");
  CovenantCheck out;
  const double bound = debt_face * curve.discount(t_bar);
  out.margin = bound - h;
  out.satisfied = h <= bound;
  const PiecewiseConstant var = sigma.squared();
  const PiecewiseConstant* curves[] = {&payout, &var};
  double t_prev = 0.0;
  out.bracket_positive = true;
  for (double t : merged_breakpoints(curves, t_bar)) {
    const double mid = 0.5 * (t_prev + t);
    if (payout(mid) + (1.0 + 2.0 * beta) * 0.5 * var(mid) < 0.0) out.bracket_positive = false;
    t_prev = t;
  }
  return out;
}

std::vector<BetaFeasibility> beta_feasibility_scan(const CdsQuoteSet& quotes,
                                                   const DiscountCurve& curve, double h,
                                                   std::span<const double> betas,
                                                   const CalibrationConfig& config) {
  std::vector<BetaFeasibility> out;
  for (double b : betas) {
    BetaFeasibility bf{b, true};
    try {
      bootstrap_volatility(quotes, curve, h, b, {}, config);
    } catch (const NoRootInBracketError&) {
      bf.ok = false;
    }
    out.push_back(bf);
  }
  return out;
}

}  // namespace strucred
