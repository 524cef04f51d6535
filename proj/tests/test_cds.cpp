#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "strucred/calibration.hpp"
#include "strucred/cds.hpp"
#include "strucred/intensity.hpp"

using namespace strucred;

namespace {

PaymentSchedule vod_schedule(std::size_t quote_idx) {
  const DiscountCurve curve = fixtures::load_curve("2004-03-10");
  const CdsQuoteSet quotes = fixtures::load_quotes("vodafone_2004-03-10", curve);
  return PaymentSchedule::backward_from(quotes.valuation, quotes.quotes[quote_idx].maturity,
                                        4);
}

}  // namespace

TEST_CASE("degenerate contracts") {
  const DiscountCurve curve = fixtures::load_curve("2004-03-10");
  const FunctionSurvival some_risk{[](double t) { return std::exp(-0.02 * t); }};

  CdsContract c{vod_schedule(2), 0.0, 0.0, CdsConvention::Running};
  CHECK(cds_price(c, some_risk, curve) == 0.0);

  // no default risk: zero protection, so the fair spread is zero
  const FunctionSurvival certain{[](double) { return 1.0; }};
  CHECK(fair_spread(certain, curve, vod_schedule(2), 0.6) == 0.0);
}

TEST_CASE("price is affine in R and linear in LGD") {
  const DiscountCurve curve = fixtures::load_curve("2004-03-10");
  const FunctionSurvival s{[](double t) { return std::exp(-0.015 * t); }};
  const PaymentSchedule sched = vod_schedule(2);

  const auto price = [&](double r, double lgd) {
    return cds_price({sched, r, lgd, CdsConvention::Running}, s, curve);
  };
  // three-point check of affinity in R
  const double p0 = price(0.0, 0.6), p1 = price(0.004, 0.6), p2 = price(0.008, 0.6);
  CHECK(p2 - p1 == doctest::Approx(p1 - p0).epsilon(1e-12));
  // linearity in LGD
  CHECK(price(0.004, 0.8) - price(0.004, 0.0) ==
        doctest::Approx(2.0 * (price(0.004, 0.4) - price(0.004, 0.0))).epsilon(1e-12));
  CHECK(price(0.0, 0.8) == doctest::Approx(2.0 * price(0.0, 0.4)).epsilon(1e-12));
}

TEST_CASE("fair spread round trip and doubling LGD") {
  const DiscountCurve curve = fixtures::load_curve("2004-03-10");
  const FunctionSurvival s{[](double t) { return std::exp(-0.012 * t); }};
  for (auto conv : {CdsConvention::Running, CdsConvention::PostponedRunning}) {
    const PaymentSchedule sched = vod_schedule(3);
    const double r_fair = fair_spread(s, curve, sched, 0.6, conv);
    CHECK(std::abs(cds_price({sched, r_fair, 0.6, conv}, s, curve)) < 1e-12);
    CHECK(fair_spread(s, curve, sched, 1.0, conv) ==
          doctest::Approx(r_fair / 0.6).epsilon(1e-12));
  }
}

TEST_CASE("postponed protection is worth less under positive rates") {
  const DiscountCurve curve = fixtures::load_curve("2004-03-10");
  const FunctionSurvival s{[](double t) { return std::exp(-0.03 * t); }};
  const PaymentSchedule sched = vod_schedule(2);
  const CdsLegs running = cds_legs(sched, s, curve, CdsConvention::Running);
  const CdsLegs postponed = cds_legs(sched, s, curve, CdsConvention::PostponedRunning);
  CHECK(postponed.protection <= running.protection);
  CHECK(postponed.accrual_annuity == 0.0);
  CHECK(postponed.premium_annuity == doctest::Approx(running.premium_annuity));
  // the gap is bounded by discounting over at most one quarter
  const double bound = running.protection * (1.0 - curve.discount(0.25));
  CHECK(running.protection - postponed.protection <= bound * 1.5);
}

TEST_CASE("integration grid halving moves prices by less than 0.05bp") {
  const DiscountCurve curve = fixtures::load_curve("2004-03-10");
  const CdsQuoteSet quotes = fixtures::load_quotes("vodafone_2004-03-10", curve);
  const IntensitySurvival s{calibrate_intensity(quotes, curve)};
  for (const CdsQuote& q : quotes.quotes) {
    CdsContract c{PaymentSchedule::backward_from(quotes.valuation, q.maturity, 4), q.spread(),
                  q.lgd(), CdsConvention::Running};
    const double coarse = cds_price(c, s, curve, 7.0);
    const double fine = cds_price(c, s, curve, 3.5);
    CHECK(std::abs(coarse - fine) < 0.05e-4);
  }
}

TEST_CASE("fair spread at the AT1P Vodafone calibration recovers the 5y quote") {
  const DiscountCurve curve = fixtures::load_curve("2004-03-10");
  const CdsQuoteSet quotes = fixtures::load_quotes("vodafone_2004-03-10", curve);
  const At1pSurvival s{bootstrap_volatility(quotes, curve, 0.5, 0.5).params};
  // 5y quote is the third maturity, R = 43bp
  const double r = fair_spread(s, curve, vod_schedule(2), 0.6);
  CHECK_ABS(1e4 * r, 43.0, 0.5);

  // fair market R inserted back gives |price| within half a bp
  CdsContract c{vod_schedule(2), 43.0e-4, 0.6, CdsConvention::Running};
  CHECK(std::abs(cds_price(c, s, curve)) < 0.5e-4);
}

TEST_CASE("empty schedule is rejected") {
  CHECK_THROWS_AS(PaymentSchedule({0.0}), std::invalid_argument);
}
