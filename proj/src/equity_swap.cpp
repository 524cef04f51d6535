#include "strucred/equity_swap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "strucred/errors.hpp"
#include "strucred/parallel.hpp"
#include "strucred/rng.hpp"

namespace strucred {

namespace {

constexpr std::size_t kChunk = 8192;

// Joint step coefficients for (ln V*, ln S) on the shared grid. The rate
// integral per step comes from the discount curve exactly, so the equity
// step is a GBM transition, not an Euler approximation.
struct JointPlan {
  std::vector<double> times;
  std::vector<double> drift_v, sd_v, var_v;
  std::vector<double> drift_s, sd_s;
  std::vector<double> df;      // P(0, t_k) at grid points
  std::vector<double> df_mid;  // P(0, (t_k + t_{k+1})/2) per step
};

JointPlan build_plan(const EquitySwapContract& c, const JointDynamics& dyn,
                     const DiscountCurve& curve, double step) {
  JointPlan plan;
  plan.times = simulation_grid(dyn.counterparty, c.schedule.maturity(), step,
                               c.schedule.times());
  const std::size_t n = plan.times.size() - 1;
  plan.drift_v.resize(n);
  plan.sd_v.resize(n);
  plan.var_v.resize(n);
  plan.drift_s.resize(n);
  plan.sd_s.resize(n);
  plan.df.resize(n + 1);
  plan.df_mid.resize(n);
  plan.df[0] = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t0 = plan.times[k], t1 = plan.times[k + 1];
    const double dt = t1 - t0;
    plan.df[k + 1] = curve.discount(t1);
    plan.df_mid[k] = curve.discount(0.5 * (t0 + t1));
    const double sig_b = dyn.counterparty.sigma_at(t1);
    plan.var_v[k] = sig_b * sig_b * dt;
    plan.sd_v[k] = sig_b * std::sqrt(dt);
    plan.drift_v[k] = dyn.counterparty.beta() * sig_b * sig_b * dt;
    const double int_r = std::log(plan.df[k] / plan.df[k + 1]);
    plan.drift_s[k] =
        int_r - c.dividend_yield * dt - 0.5 * dyn.equity_vol * dyn.equity_vol * dt;
    plan.sd_s[k] = dyn.equity_vol * std::sqrt(dt);
  }
  return plan;
}

// Discounted NPV at default is affine in the spread: a + b X.
struct DefaultRecord {
  double a = 0.0;
  double b = 0.0;
};

struct PathHit {
  bool defaulted = false;
  double tau = 0.0;
  double s_tau = 0.0;     // S_tau / S0 at default
  double s_end = 0.0;     // S_Tb / S0 when the path survives
  double df_tau = 1.0;    // P(0, tau)
  double div_value = 0.0; // realized discounted dividends per unit S0, up to exit
};

// One joint path. Consumes, per step: the firm-value normal, the equity
// normal (skipped at |rho| = 1 where the shock is shared), then the bridge
// uniform when the crossing test is live. The realized dividend stream
// (trapezoidal in P(0,t) S_t) is only accumulated when asked for; the
// decomposed estimator never needs it.
PathHit simulate_joint_path(PathRng& rng, const JointPlan& plan, double log_h, double rho,
                            bool track_dividends = false, double div_yield = 0.0) {
  const bool degenerate = std::abs(rho) == 1.0;
  const double ortho = degenerate ? 0.0 : std::sqrt(1.0 - rho * rho);
  double lv = 0.0;
  double ls = 0.0;  // ln(S_t / S_0)
  double divs = 0.0;
  const std::size_t n = plan.drift_v.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double z_b = rng.next_normal();
    const double z_c = degenerate ? rho * z_b : rho * z_b + ortho * rng.next_normal();
    const double lv_next = lv + plan.drift_v[k] + plan.sd_v[k] * z_b;
    const double ls_next = ls + plan.drift_s[k] + plan.sd_s[k] * z_c;
    const double dt = plan.times[k + 1] - plan.times[k];
    if (lv_next <= log_h) {
      const double s_next = std::exp(ls_next);
      if (track_dividends)
        divs += 0.5 * (plan.df[k] * std::exp(ls) + plan.df[k + 1] * s_next) * div_yield * dt;
      return {true, plan.times[k + 1], s_next, 0.0, plan.df[k + 1], divs};
    }
    if (plan.var_v[k] > 0.0) {
      const double expo = -2.0 * (lv - log_h) * (lv_next - log_h) / plan.var_v[k];
      if (expo > -38.0 && rng.next_uniform() < std::exp(expo)) {
        // default at the step midpoint; ln S estimated by its bridge mean
        const double s_mid = std::exp(0.5 * (ls + ls_next));
        if (track_dividends)
          divs += 0.5 * (plan.df[k] * std::exp(ls) + plan.df_mid[k] * s_mid) * div_yield *
                  0.5 * dt;
        return {true, 0.5 * (plan.times[k] + plan.times[k + 1]), s_mid, 0.0,
                plan.df_mid[k], divs};
      }
    }
    if (track_dividends)
      divs += 0.5 * (plan.df[k] * std::exp(ls) + plan.df[k + 1] * std::exp(ls_next)) *
              div_yield * dt;
    lv = lv_next;
    ls = ls_next;
  }
  return {false, 0.0, 0.0, std::exp(ls), 0.0, divs};
}

struct SimChunk {
  std::vector<DefaultRecord> records;
};

struct Simulated {
  std::vector<DefaultRecord> records;  // concatenated in chunk order
  std::size_t n_paths = 0;
  double annuity = 0.0;        // sum alpha_i P(0,T_i)
  double default_prob = 0.0;   // analytic, for the control variate
};

Simulated simulate_records(const EquitySwapContract& c, const JointDynamics& dyn,
                           const DiscountCurve& curve, const McConfig& cfg) {
  if (cfg.n_paths < 1) throw std::invalid_argument("equity swap: need at least one path");
  const JointPlan plan = build_plan(c, dyn, curve, cfg.step);
  const double log_h = std::log(dyn.counterparty.h());
  const PaymentSchedule& sched = c.schedule;

  // tail_annuity[i] = sum_{j >= i} alpha_j P(0,T_j); df at schedule dates
  const std::size_t b = sched.payments();
  std::vector<double> df_pay(b + 1), tail_annuity(b + 2, 0.0);
  for (std::size_t i = 0; i <= b; ++i) df_pay[i] = curve.discount(sched.time(i));
  for (std::size_t i = b; i >= 1; --i)
    tail_annuity[i] = tail_annuity[i + 1] + sched.accrual(i) * df_pay[i];

  const double ks0 = c.k_shares * c.s0;
  auto chunks = run_chunked<SimChunk>(
      cfg.n_paths, kChunk, cfg.workers, [&](std::size_t, std::size_t begin, std::size_t end) {
        SimChunk out;
        for (std::size_t i = begin; i < end; ++i) {
          PathRng rng(cfg.seed, i);
          const PathHit hit = simulate_joint_path(rng, plan, log_h, dyn.rho);
          if (!hit.defaulted) continue;
          const std::size_t idx = sched.beta_index(hit.tau);
          DefaultRecord rec;
          rec.b = ks0 * tail_annuity[idx];
          rec.a = ks0 * df_pay[idx - 1] - c.k_shares * hit.df_tau * c.s0 * hit.s_tau;
          out.records.push_back(rec);
        }
        return out;
      });

  Simulated sim;
  sim.n_paths = cfg.n_paths;
  sim.annuity = tail_annuity[1];
  sim.default_prob = 1.0 - survival_probability(dyn.counterparty, sched.maturity());
  for (auto& ch : chunks)
    sim.records.insert(sim.records.end(), ch.records.begin(), ch.records.end());
  return sim;
}

EqSwapPrice evaluate(const Simulated& sim, const EquitySwapContract& c, double spread) {
  const double n = double(sim.n_paths);
  double sy = 0.0, syy = 0.0;
  for (const DefaultRecord& r : sim.records) {
    const double y = std::max(0.0, r.a + r.b * spread);
    sy += y;
    syy += y * y;
  }
  const double m = double(sim.records.size());
  const double mean_y = sy / n;
  const double mean_c = m / n;
  double var_y = 0.0, var_c = 0.0, cov = 0.0;
  if (sim.n_paths >= 2) {
    var_y = std::max(0.0, (syy - n * mean_y * mean_y) / (n - 1.0));
    var_c = std::max(0.0, (m - n * mean_c * mean_c) / (n - 1.0));
    cov = (sy - n * mean_y * mean_c) / (n - 1.0);
  }
  const double coeff = var_c > 0.0 ? cov / var_c : 0.0;
  const double mean_adj = mean_y - coeff * (mean_c - sim.default_prob);
  const double var_adj =
      var_c > 0.0 ? std::max(0.0, var_y - cov * cov / var_c) : var_y;

  EqSwapPrice out;
  out.n_paths = sim.n_paths;
  out.default_prob_analytic = sim.default_prob;
  out.default_free_leg = c.k_shares * c.s0 * spread * sim.annuity;
  out.option_leg = c.lgd() * mean_adj;
  out.price = out.default_free_leg - out.option_leg;
  out.std_error = c.lgd() * std::sqrt(var_adj / n);
  out.std_error_no_cv = c.lgd() * std::sqrt(var_y / n);
  out.cv_correlation =
      var_y > 0.0 && var_c > 0.0 ? cov / std::sqrt(var_y * var_c) : 0.0;
  return out;
}

}  // namespace

double npv_at_default_discounted(double tau, double s_tau, const EquitySwapContract& c,
                                 const DiscountCurve& curve) {
  if (!(tau > 0.0) || tau > c.schedule.maturity())
    throw std::invalid_argument("npv_at_default: tau outside (0, T_b]");
  const PaymentSchedule& sched = c.schedule;
  const std::size_t idx = sched.beta_index(tau);
  double tail = 0.0;
  for (std::size_t i = idx; i <= sched.payments(); ++i)
    tail += sched.accrual(i) * curve.discount(sched.time(i));
  const double ks0 = c.k_shares * c.s0;
  return ks0 * c.spread * tail + ks0 * curve.discount(sched.time(idx - 1)) -
         c.k_shares * curve.discount(tau) * s_tau;
}

EqSwapPrice price_equity_swap(const EquitySwapContract& c, const JointDynamics& dyn,
                              const DiscountCurve& curve, const McConfig& cfg) {
  const Simulated sim = simulate_records(c, dyn, curve, cfg);
  return evaluate(sim, c, c.spread);
}

FairSpreadResult fair_equity_swap_spread(const EquitySwapContract& c, const JointDynamics& dyn,
                                         const DiscountCurve& curve, const McConfig& cfg) {
  const Simulated sim = simulate_records(c, dyn, curve, cfg);
  const double tol = 0.05e-4 * c.k_shares * c.s0;  // 0.05 bp of K*S0
  const double slope0 = c.k_shares * c.s0 * sim.annuity;

  double x0 = 0.0;
  EqSwapPrice p0 = evaluate(sim, c, x0);
  FairSpreadResult res;
  if (std::abs(p0.price) <= tol) {
    res.spread = x0;
    res.iterations = 1;
    res.at_solution = p0;
    return res;
  }
  double x1 = x0 - p0.price / slope0;
  EqSwapPrice p1 = evaluate(sim, c, x1);
  for (int it = 2; it <= 50; ++it) {
    if (std::abs(p1.price) <= tol) {
      res.spread = x1;
      res.iterations = it;
      res.at_solution = p1;
      return res;
    }
    const double denom = p1.price - p0.price;
    const double x2 = denom != 0.0 ? x1 - p1.price * (x1 - x0) / denom
                                   : x1 - p1.price / slope0;
    x0 = x1;
    p0 = p1;
    x1 = x2;
    p1 = evaluate(sim, c, x1);
  }
  throw ConvergenceError("fair_equity_swap_spread: no convergence in 50 iterations");
}

McEstimate price_equity_swap_raw(const EquitySwapContract& c, const JointDynamics& dyn,
                                 const DiscountCurve& curve, const McConfig& cfg) {
  if (cfg.n_paths < 1) throw std::invalid_argument("equity swap: need at least one path");
  const JointPlan plan = build_plan(c, dyn, curve, cfg.step);
  const double log_h = std::log(dyn.counterparty.h());
  const PaymentSchedule& sched = c.schedule;
  const std::size_t b = sched.payments();
  const double ks0 = c.k_shares * c.s0;
  const double t_b = sched.maturity();

  // prefix_flow[m] = K S0 sum_{i<=m} P(0,T_i) alpha_i (L(T_{i-1},T_i) + X)
  std::vector<double> prefix_flow(b + 1, 0.0);
  for (std::size_t i = 1; i <= b; ++i) {
    const double libor = curve.forward_libor(sched.time(i - 1), sched.time(i));
    prefix_flow[i] = prefix_flow[i - 1] + ks0 * curve.discount(sched.time(i)) *
                                              sched.accrual(i) * (libor + c.spread);
  }
  const double df_tb = curve.discount(t_b);

  struct Moments {
    double sum = 0.0, sum_sq = 0.0;
  };
  auto chunks = run_chunked<Moments>(
      cfg.n_paths, kChunk, cfg.workers, [&](std::size_t, std::size_t begin, std::size_t end) {
        Moments mm;
        for (std::size_t i = begin; i < end; ++i) {
          PathRng rng(cfg.seed, i);
          const PathHit hit =
              simulate_joint_path(rng, plan, log_h, dyn.rho, true, c.dividend_yield);
          double pay;
          if (!hit.defaulted) {
            pay = -ks0 * hit.div_value + prefix_flow[b] +
                  df_tb * (ks0 - c.k_shares * c.s0 * hit.s_end);
          } else {
            const std::size_t idx = sched.beta_index(hit.tau);
            const double npv_disc =
                npv_at_default_discounted(hit.tau, c.s0 * hit.s_tau, c, curve);
            pay = -ks0 * hit.div_value + prefix_flow[idx - 1] + npv_disc -
                  c.lgd() * std::max(0.0, npv_disc);
          }
          mm.sum += pay;
          mm.sum_sq += pay * pay;
        }
        return mm;
      });

  double sum = 0.0, sum_sq = 0.0;
  for (const auto& mm : chunks) {
    sum += mm.sum;
    sum_sq += mm.sum_sq;
  }
  McEstimate est;
  est.n = cfg.n_paths;
  est.mean = sum / double(cfg.n_paths);
  const double var =
      std::max(0.0, (sum_sq - double(cfg.n_paths) * est.mean * est.mean) /
                        double(cfg.n_paths - 1));
  est.std_error = std::sqrt(var / double(cfg.n_paths));
  return est;
}

}  // namespace strucred
