#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "strucred/calibration.hpp"
#include "strucred/equity_swap.hpp"

using namespace strucred;

namespace {

struct Setup {
  DiscountCurve curve;
  EquitySwapContract contract;
  At1pParams counterparty;
};

Setup make_setup(double spread = 0.0) {
  DiscountCurve curve = fixtures::load_curve("2004-03-10");
  const CdsQuoteSet quotes = fixtures::load_quotes("vodafone_2004-03-10", curve);
  At1pParams params = bootstrap_volatility(quotes, curve, 0.5, 0.5).params;
  EquitySwapContract contract{PaymentSchedule::forward_from(curve.anchor(), 10, 2),
                              1.0,
                              20.0,
                              spread,
                              0.40,
                              0.0080};
  return {std::move(curve), std::move(contract), std::move(params)};
}

}  // namespace

TEST_CASE("discounted NPV at default: closed-form identities") {
  const Setup s = make_setup(0.0);

  // tau -> 0+ with S_tau = S0 and X = 0 collapses to ~0
  CHECK_ABS(npv_at_default_discounted(1e-9, 20.0, s.contract, s.curve), 0.0, 1e-6);

  // exact algebraic zero: X = 0 and S_tau = S0 P(0,T_{beta-1}) / P(0,tau)
  const double tau = 1.3;
  const std::size_t idx = s.contract.schedule.beta_index(tau);
  const double s_tau =
      20.0 * s.curve.discount(s.contract.schedule.time(idx - 1)) / s.curve.discount(tau);
  CHECK_ABS(npv_at_default_discounted(tau, s_tau, s.contract, s.curve), 0.0, 1e-12);

  CHECK_THROWS_AS(npv_at_default_discounted(99.0, 20.0, s.contract, s.curve),
                  std::invalid_argument);
}

TEST_CASE("discounted NPV matches the un-simplified valuation") {
  // independent oracle: value the remaining legs term by term with forward
  // LIBORs and the dividend-yield forward identity, then discount to 0
  const Setup s = make_setup(0.0010);
  const EquitySwapContract& c = s.contract;
  for (double tau : {0.2, 1.01, 2.5, 4.9}) {
    for (double s_tau : {12.0, 20.0, 31.0}) {
      const std::size_t idx = c.schedule.beta_index(tau);
      const double t_b = c.schedule.maturity();
      const double p_tau = s.curve.discount(tau);

      double legs = 0.0;  // floating + spread flows seen from tau
      for (std::size_t i = idx; i <= c.schedule.payments(); ++i) {
        const double libor =
            s.curve.forward_libor(c.schedule.time(i - 1), c.schedule.time(i));
        legs += c.k_shares * c.s0 * (s.curve.discount(c.schedule.time(i)) / p_tau) *
                c.schedule.accrual(i) * (libor + c.spread);
      }
      const double p_tau_tb = s.curve.discount(t_b) / p_tau;
      const double expect_s_tb = s_tau * std::exp(-c.dividend_yield * (t_b - tau)) / p_tau_tb;
      const double npv_div = s_tau * (1.0 - std::exp(-c.dividend_yield * (t_b - tau)));
      const double npv_tau = -c.k_shares * npv_div + legs +
                             (c.k_shares * c.s0 - c.k_shares * expect_s_tb) * p_tau_tb;
      CHECK_ABS(npv_at_default_discounted(tau, s_tau, c, s.curve), p_tau * npv_tau, 1e-10);
    }
  }
}

TEST_CASE("LGD = 0 removes the option leg entirely") {
  Setup s = make_setup(0.0005);
  s.contract.recovery = 1.0;  // LGD = 0
  JointDynamics dyn{s.counterparty, 0.20, 0.5};
  McConfig cfg;
  cfg.n_paths = 20000;
  cfg.seed = 9;
  const EqSwapPrice p = price_equity_swap(s.contract, dyn, s.curve, cfg);
  CHECK(p.price == doctest::Approx(p.default_free_leg).epsilon(1e-14));
  CHECK(p.std_error == 0.0);
  CHECK(p.option_leg == 0.0);
}

TEST_CASE("perfect negative correlation: zero fair spread with zero error") {
  const Setup s = make_setup(0.0);
  JointDynamics dyn{s.counterparty, 0.20, -1.0};
  McConfig cfg;
  cfg.n_paths = 100000;
  cfg.seed = 17;

  const EqSwapPrice p = price_equity_swap(s.contract, dyn, s.curve, cfg);
  CHECK(p.price == 0.0);
  CHECK(p.std_error == 0.0);  // the simulated term vanished in every scenario

  const FairSpreadResult fair = fair_equity_swap_spread(s.contract, dyn, s.curve, cfg);
  CHECK(fair.spread == 0.0);
  CHECK(fair.at_solution.std_error == 0.0);
}

TEST_CASE("fair spread increases with correlation") {
  const Setup s = make_setup(0.0);
  McConfig cfg;
  cfg.n_paths = 200000;
  cfg.seed = 31;
  double prev = -1.0;
  for (double rho : {-0.2, 0.0, 0.5, 1.0}) {
    JointDynamics dyn{s.counterparty, 0.20, rho};
    const FairSpreadResult fair = fair_equity_swap_spread(s.contract, dyn, s.curve, cfg);
    CHECK(fair.spread > prev);
    prev = fair.spread;
  }
}

TEST_CASE("price is strictly increasing in the spread") {
  const Setup s = make_setup(0.0);
  McConfig cfg;
  cfg.n_paths = 50000;
  cfg.seed = 23;
  for (double rho : {-0.2, 0.0, 0.5, 1.0}) {
    JointDynamics dyn{s.counterparty, 0.20, rho};
    double prev = -1e9;
    for (double x_bps : {0.0, 5.0, 15.0, 30.0}) {
      EquitySwapContract c = s.contract;
      c.spread = x_bps * 1e-4;
      const EqSwapPrice p = price_equity_swap(c, dyn, s.curve, cfg);
      CHECK(p.price > prev);
      prev = p.price;
    }
  }
}

TEST_CASE("control variate never hurts and its correlation strengthens with rho") {
  const Setup s = make_setup(5.0e-4);
  McConfig cfg;
  cfg.n_paths = 200000;
  cfg.seed = 41;

  JointDynamics low{s.counterparty, 0.20, -0.2};
  JointDynamics high{s.counterparty, 0.20, 1.0};
  const EqSwapPrice p_low = price_equity_swap(s.contract, low, s.curve, cfg);
  const EqSwapPrice p_high = price_equity_swap(s.contract, high, s.curve, cfg);

  CHECK(p_low.std_error <= p_low.std_error_no_cv);
  CHECK(p_high.std_error <= p_high.std_error_no_cv);
  CHECK(std::abs(p_high.cv_correlation) > std::abs(p_low.cv_correlation));
  // payoff and default indicator move together, strongly so at rho = 1
  CHECK(p_high.cv_correlation > 0.8);

  CHECK(p_low.option_leg >= 0.0);
  CHECK(p_high.option_leg >= 0.0);
}

TEST_CASE("decomposed estimator agrees with the raw payoff simulation") {
  const Setup s = make_setup(4.87e-4);
  McConfig cfg;
  cfg.n_paths = 400000;
  cfg.seed = 55;
  for (double rho : {0.0, 0.7}) {
    JointDynamics dyn{s.counterparty, 0.20, rho};
    const EqSwapPrice decomposed = price_equity_swap(s.contract, dyn, s.curve, cfg);
    const McEstimate raw = price_equity_swap_raw(s.contract, dyn, s.curve, cfg);
    CHECK(std::abs(raw.mean - decomposed.price) <=
          3.0 * std::hypot(raw.std_error, decomposed.std_error));
    // the decomposition is the variance-reduced route
    CHECK(decomposed.std_error < raw.std_error);
  }
}

TEST_CASE("equity swap results are bit-identical across worker counts") {
  const Setup s = make_setup(10.0e-4);
  JointDynamics dyn{s.counterparty, 0.20, 0.5};
  McConfig cfg;
  cfg.n_paths = 30000;
  cfg.seed = 77;
  cfg.workers = 1;
  const EqSwapPrice one = price_equity_swap(s.contract, dyn, s.curve, cfg);
  cfg.workers = 7;
  const EqSwapPrice many = price_equity_swap(s.contract, dyn, s.curve, cfg);
  CHECK(one.price == many.price);
  CHECK(one.std_error == many.std_error);
}
