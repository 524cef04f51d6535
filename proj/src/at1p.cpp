#include "strucred/at1p.hpp"

#include <cmath>
#include <stdexcept>

#include "strucred/normal.hpp"

namespace strucred {

At1pParams::At1pParams(double h, double beta, PiecewiseConstant sigma)
    : h_(h), beta_(beta), sigma_(std::move(sigma)), variance_(sigma_.squared()) {
  if (!(h_ > 0.0 && h_ < 1.0)) throw std::invalid_argument("at1p: need 0 < h < 1");
  for (double s : sigma_.values())
    if (s < 0.0) throw std::invalid_argument("at1p: negative volatility piece");
}

At1pParams At1pParams::from_levels(double v0, double barrier, double beta,
                                   PiecewiseConstant sigma) {
  if (!(v0 > 0.0)) throw std::invalid_argument("at1p: v0 must be positive");
  return At1pParams(barrier / v0, beta, std::move(sigma));
}

double survival_probability(const At1pParams& p, double T) {
  if (T <= 0.0) return 1.0;
  const double var = p.cumulative_variance(T);
  if (var <= 0.0) return 1.0;  // no diffusion, barrier below v0 is never reached
  const double sd = std::sqrt(var);
  const double drift = p.beta() * var;
  const double log_h = std::log(p.h());
  const double d1 = (-log_h + drift) / sd;
  const double d2 = (log_h + drift) / sd;
  return norm_cdf(d1) - std::pow(p.h(), 2.0 * p.beta()) * norm_cdf(d2);
}

std::vector<double> default_leg_density_grid(const At1pParams& p,
                                             std::span<const double> grid) {
  if (grid.empty() || grid.front() != 0.0)
    throw std::invalid_argument("density grid must start at 0");
  std::vector<double> out;
  out.reserve(grid.size() - 1);
  double prev = 1.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("density grid not sorted");
    const double cur = survival_probability(p, grid[k]);
    out.push_back(prev - cur);
    prev = cur;
  }
  return out;
}

double true_barrier(const FirmValueDynamics& d, double h_level, double t) {
  if (t < 0.0) throw std::invalid_argument("true_barrier: t < 0");
  const double iq = d.payout.integral(t);
  const double ir = d.rate.integral(t);
  const double iv = d.sigma.squared().integral(t);
  return h_level * std::exp(-(iq - ir + (1.0 + 2.0 * d.beta) * 0.5 * iv));
}

ConfidenceBand confidence_band(const FirmValueDynamics& d, double t) {
  if (t < 0.0) throw std::invalid_argument("confidence_band: t < 0");
  const double growth = d.rate.integral(t) - d.payout.integral(t);
  const double var = d.sigma.squared().integral(t);
  const double mean_log = std::log(d.v0) + growth - 0.5 * var;
  const double sd = std::sqrt(var);
  return {d.v0 * std::exp(growth), std::exp(mean_log - sd), std::exp(mean_log + sd)};
}

double dob_price_time_dependent(const FirmValueDynamics& d, double h_level, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("dob: T must be positive");
  const double var = d.sigma.squared().integral(T);
  const double ir = d.rate.integral(T);
  const double price_t = std::exp(-ir);
  // drift integral of ln V*: v_t = r - q* - sigma^2/2
  const double iv = ir - d.payout.integral(T) - 0.5 * var;
  // initial level of the curved barrier, H*(0) = H exp(-(iv - beta*var))
  const double h_star0 = h_level * std::exp(-(iv - d.beta * var));
  if (!(d.v0 > h_star0))
    throw std::domain_error("dob: initial value not above the initial barrier");
  if (var <= 0.0) return price_t;
  const double sd = std::sqrt(var);
  const double d1 = (std::log(d.v0 / h_level) + iv) / sd;
  const double d2 = (std::log(h_star0 * h_star0 / (d.v0 * h_level)) + iv) / sd;
  return price_t * (norm_cdf(d1) - std::pow(h_star0 / d.v0, 2.0 * d.beta) * norm_cdf(d2));
}

double optimal_beta(const PiecewiseConstant& rate, const PiecewiseConstant& q_star,
                    const PiecewiseConstant& sigma, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("optimal_beta: T must be positive");
  const PiecewiseConstant var = sigma.squared();
  const double total_var = var.integral(T);
  if (!(total_var > 0.0))
    throw std::invalid_argument("optimal_beta: sigma vanishes on [0,T]");

  // A(t) = int_t^T (r - q* - s^2/2), B(t) = int_t^T s^2; both piecewise
  // linear between merged breakpoints, so Simpson per segment is exact for
  // the quadratic integrands A*B and B^2.
  const PiecewiseConstant* curves[] = {&rate, &q_star, &var};
  const std::vector<double> knots = merged_breakpoints(curves, T);
  const auto tail_f = [&](double t) {
    return rate.integral(t, T) - q_star.integral(t, T) - 0.5 * var.integral(t, T);
  };
  const auto tail_var = [&](double t) { return var.integral(t, T); };

  double num = 0.0, den = 0.0;
  double a = 0.0;
  for (double b : knots) {
    const double m = 0.5 * (a + b);
    const double w = (b - a) / 6.0;
    num += w * (tail_f(a) * tail_var(a) + 4.0 * tail_f(m) * tail_var(m) +
                tail_f(b) * tail_var(b));
    const double ba = tail_var(a), bm = tail_var(m), bb = tail_var(b);
    den += w * (ba * ba + 4.0 * bm * bm + bb * bb);
    a = b;
  }
  return num / den;
}

}  // namespace strucred
