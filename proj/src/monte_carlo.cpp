#include "strucred/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "strucred/parallel.hpp"
#include "strucred/rng.hpp"

namespace strucred {

namespace {

constexpr std::size_t kChunk = 8192;  // fixed: chunking must not depend on workers

struct StepPlan {
  std::vector<double> times;     // grid, times[0] = 0
  std::vector<double> drift;     // beta sigma^2 dt per step
  std::vector<double> sd;        // sigma sqrt(dt) per step
  std::vector<double> variance;  // sigma^2 dt per step
};

StepPlan build_plan(const At1pParams& p, double horizon, double step,
                    std::span<const double> extra_times) {
  StepPlan plan;
  plan.times = simulation_grid(p, horizon, step, extra_times);
  const std::size_t n = plan.times.size() - 1;
  plan.drift.resize(n);
  plan.sd.resize(n);
  plan.variance.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double dt = plan.times[k + 1] - plan.times[k];
    const double sig = p.sigma_at(plan.times[k + 1]);  // constant over the step
    plan.variance[k] = sig * sig * dt;
    plan.sd[k] = sig * std::sqrt(dt);
    plan.drift[k] = p.beta() * sig * sig * dt;
  }
  return plan;
}

// One path of log V* against the flat log barrier. Draws one normal per
// step, plus one uniform when the bridge test is live; a crossing
// probability below the smallest representable uniform is skipped outright.
std::optional<double> simulate_path(PathRng& rng, const StepPlan& plan, double log_h,
                                    CrossingDetector detector) {
  double lv = 0.0;  // ln(V*/V0)
  const std::size_t n = plan.drift.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double z = rng.next_normal();
    const double lv_next = lv + plan.drift[k] + plan.sd[k] * z;
    if (lv_next <= log_h) return plan.times[k + 1];
    if (detector == CrossingDetector::BrownianBridge && plan.variance[k] > 0.0) {
      const double expo = -2.0 * (lv - log_h) * (lv_next - log_h) / plan.variance[k];
      if (expo > -38.0) {  // else the crossing probability is below any uniform
        if (rng.next_uniform() < std::exp(expo))
          return 0.5 * (plan.times[k] + plan.times[k + 1]);
      }
    }
    lv = lv_next;
  }
  return std::nullopt;
}

struct MomentSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

McEstimate finalize(const std::vector<MomentSums>& parts, std::size_t n) {
  double sum = 0.0, sum_sq = 0.0;
  for (const MomentSums& m : parts) {  // chunk order: deterministic reduction
    sum += m.sum;
    sum_sq += m.sum_sq;
  }
  McEstimate est;
  est.n = n;
  est.mean = sum / double(n);
  if (n >= 2) {
    const double var = std::max(0.0, (sum_sq - double(n) * est.mean * est.mean) / double(n - 1));
    est.std_error = std::sqrt(var / double(n));
  } else {
    est.std_error = std::numeric_limits<double>::quiet_NaN();
  }
  return est;
}

}  // namespace

double bridge_crossing_probability(double log_v_start, double log_v_end, double log_barrier,
                                   double variance_step) {
  if (!(variance_step > 0.0))
    throw std::invalid_argument("bridge_crossing_probability: variance must be positive");
  const double a = log_v_start - log_barrier;
  const double b = log_v_end - log_barrier;
  if (a <= 0.0 || b <= 0.0) return 1.0;
  return std::exp(-2.0 * a * b / variance_step);
}

std::vector<double> simulation_grid(const At1pParams& p, double horizon, double step,
                                    std::span<const double> extra_times) {
  if (!(horizon > 0.0) || !(step > 0.0))
    throw std::invalid_argument("simulation_grid: need positive horizon and step");
  std::vector<double> grid{0.0};
  for (double t = step; t < horizon; t += step) grid.push_back(t);
  grid.push_back(horizon);
  for (double t : p.sigma().breakpoints())
    if (t > 0.0 && t < horizon) grid.push_back(t);
  for (double t : extra_times)
    if (t > 0.0 && t < horizon) grid.push_back(t);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return b - a < 1e-12; }),
             grid.end());
  return grid;
}

std::vector<PathOutcome> simulate_default_times(const At1pParams& p, const McConfig& cfg,
                                                std::span<const double> extra_times) {
  if (cfg.n_paths < 1) throw std::invalid_argument("mc: need at least one path");
  const StepPlan plan = build_plan(p, cfg.horizon, cfg.step, extra_times);
  const double log_h = std::log(p.h());

  std::vector<PathOutcome> out(cfg.n_paths);
  run_chunked<int>(cfg.n_paths, kChunk, cfg.workers,
                   [&](std::size_t, std::size_t begin, std::size_t end) {
                     for (std::size_t i = begin; i < end; ++i) {
                       PathRng rng(cfg.seed, i);
                       out[i].default_time = simulate_path(rng, plan, log_h, cfg.detector);
                     }
                     return 0;
                   });
  return out;
}

McEstimate mc_cds_value(const At1pParams& p, const CdsContract& contract,
                        const DiscountCurve& curve, const McConfig& cfg) {
  const PaymentSchedule& sched = contract.schedule;
  const double maturity = sched.maturity();
  McConfig local = cfg;
  local.horizon = maturity;
  const StepPlan plan = build_plan(p, local.horizon, local.step, sched.times());
  const double log_h = std::log(p.h());

  // Premium leg prefix sums: prefix[i] = R sum_{j<=i} alpha_j P(0,T_j).
  std::vector<double> prefix(sched.payments() + 1, 0.0);
  for (std::size_t i = 1; i <= sched.payments(); ++i)
    prefix[i] = prefix[i - 1] +
                contract.spread * sched.accrual(i) * curve.discount(sched.time(i));

  const auto payoff = [&](std::optional<double> tau) {
    if (!tau) return -prefix.back();
    const double t = *tau;
    const auto& times = sched.times();
    const std::size_t paid =
        std::size_t(std::upper_bound(times.begin(), times.end(), t) - times.begin()) - 1;
    const double df_tau = curve.discount(t);
    const double accrued = contract.spread * (t - times[paid]) * df_tau;
    return contract.lgd * df_tau - prefix[paid] - accrued;
  };

  const auto parts = run_chunked<MomentSums>(
      local.n_paths, kChunk, local.workers,
      [&](std::size_t, std::size_t begin, std::size_t end) {
        MomentSums m;
        for (std::size_t i = begin; i < end; ++i) {
          PathRng rng(local.seed, i);
          const double v = payoff(simulate_path(rng, plan, log_h, local.detector));
          m.sum += v;
          m.sum_sq += v * v;
        }
        return m;
      });
  return finalize(parts, local.n_paths);
}

std::vector<McEstimate> mc_survival(std::span<const PathOutcome> outcomes,
                                    std::span<const double> times) {
  std::vector<McEstimate> out;
  out.reserve(times.size());
  const double n = double(outcomes.size());
  for (double T : times) {
    std::size_t alive = 0;
    for (const PathOutcome& o : outcomes)
      if (!o.default_time || *o.default_time > T) ++alive;
    McEstimate est;
    est.n = outcomes.size();
    est.mean = double(alive) / n;
    est.std_error = std::sqrt(std::max(0.0, est.mean * (1.0 - est.mean)) / n);
    out.push_back(est);
  }
  return out;
}

}  // namespace strucred
