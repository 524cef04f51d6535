#pragma once

#include <cstdint>
#include <vector>

#include "strucred/at1p.hpp"
#include "strucred/discount_curve.hpp"
#include "strucred/monte_carlo.hpp"
#include "strucred/schedule.hpp"

namespace strucred {

// Equity return swap: equity total return against LIBOR + spread X on
// notional K*S0, priced under default risk of the counterparty paying the
// floating leg. Dividends are a continuous yield.
struct EquitySwapContract {
  PaymentSchedule schedule;  // LIBOR settlement dates
  double k_shares = 1.0;
  double s0 = 20.0;
  double spread = 0.0;  // X, absolute
  double recovery = 0.40;
  double dividend_yield = 0.0080;

  double lgd() const { return 1.0 - recovery; }
};

struct JointDynamics {
  At1pParams counterparty;  // calibrated firm-value dynamics of the payer
  double equity_vol = 0.20;
  double rho = 0.0;  // corr of the firm-value and equity Brownian drivers
};

// P(0,tau) * NPV(tau): discounted residual value of the swap to the equity
// receiver at counterparty default, under deterministic rates and the
// forward identity for the post-default equity expectation.
double npv_at_default_discounted(double tau, double s_tau, const EquitySwapContract& c,
                                 const DiscountCurve& curve);

struct EqSwapPrice {
  double price = 0.0;
  double std_error = 0.0;
  double default_free_leg = 0.0;  // K S0 X sum alpha_i P(0,T_i)
  double option_leg = 0.0;        // LGD E[ 1{tau<=T_b} P(0,tau) NPV(tau)^+ ]
  double std_error_no_cv = 0.0;   // before the default-indicator control variate
  double cv_correlation = 0.0;    // corr(option payoff, default indicator)
  double default_prob_analytic = 0.0;
  std::size_t n_paths = 0;
};

// Decomposed pricing: annuity leg analytic, option leg by joint simulation
// of (V*, S) with Brownian-bridge default detection and the default
// indicator (known mean) as control variate. cfg.horizon is ignored; the
// contract maturity is used.
EqSwapPrice price_equity_swap(const EquitySwapContract& c, const JointDynamics& dyn,
                              const DiscountCurve& curve, const McConfig& cfg);

struct FairSpreadResult {
  double spread = 0.0;  // X, absolute
  int iterations = 0;
  EqSwapPrice at_solution;
};

// Secant search for the X that zeroes the price, on common random numbers:
// paths are simulated once (they do not depend on X) and revalued per
// iterate. Tolerance 0.05bp of K*S0.
FairSpreadResult fair_equity_swap_spread(const EquitySwapContract& c, const JointDynamics& dyn,
                                         const DiscountCurve& curve, const McConfig& cfg);

// Debug route: simulate the raw undecomposed payoff (no control variate,
// every term sampled). Much noisier; exists to cross-check the decomposed
// estimator.
McEstimate price_equity_swap_raw(const EquitySwapContract& c, const JointDynamics& dyn,
                                 const DiscountCurve& curve, const McConfig& cfg);

}  // namespace strucred
