#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "strucred/cds.hpp"
#include "strucred/errors.hpp"
#include "strucred/intensity.hpp"

using namespace strucred;

TEST_CASE("intensity survival closed forms") {
  const IntensityCurve zero = IntensityCurve::from_nodes({{0.0, 0.0}, {5.0, 0.0}});
  for (double t : {0.0, 1.0, 4.0, 12.0}) CHECK(zero.survival(t) == 1.0);

  const IntensityCurve flat = IntensityCurve::from_nodes({{0.0, 0.01}});
  CHECK(flat.survival(2.0) == doctest::Approx(std::exp(-0.02)).epsilon(1e-15));

  // trapezoid is exact on a linear segment: lambda from 1% to 3% over [0,2]
  const IntensityCurve ramp = IntensityCurve::from_nodes({{0.0, 0.01}, {2.0, 0.03}});
  CHECK(ramp.integrated(2.0) == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(ramp.integrated(1.0) == doctest::Approx(0.015).epsilon(1e-15));
  CHECK(ramp.integrated(3.0) == doctest::Approx(0.07).epsilon(1e-15));  // flat after
  CHECK(ramp.lambda(2.0) == 0.03);
  CHECK(ramp.lambda(0.5) == doctest::Approx(0.015));

  CHECK_THROWS_AS(IntensityCurve::from_nodes({{0.0, -0.01}}), std::invalid_argument);
  CHECK_THROWS_AS(IntensityCurve::from_nodes({{1.0, 0.01}}), std::invalid_argument);
}

TEST_CASE("Vodafone intensity strip matches the published nodes") {
  const DiscountCurve curve = fixtures::load_curve("2004-03-10");
  const CdsQuoteSet quotes = fixtures::load_quotes("vodafone_2004-03-10", curve);
  const IntensityCurve strip = calibrate_intensity(quotes, curve);

  REQUIRE(strip.nodes().size() == 6);
  CHECK(strip.nodes()[0].second == strip.nodes()[1].second);  // repeated first node
  for (std::size_t i = 0; i < 5; ++i)
    CHECK_ABS(100.0 * strip.nodes()[i + 1].second, fixtures::kVodafoneIntensityPct[i], 0.15);

  for (std::size_t i = 0; i < 5; ++i) {
    const double t = year_fraction(quotes.valuation, quotes.quotes[i].maturity);
    CHECK_ABS(100.0 * strip.survival(t), fixtures::kVodafoneIntensitySurvivalPct[i], 0.5);
  }
  const double t1 = year_fraction(quotes.valuation, quotes.quotes[0].maturity);
  CHECK_ABS(strip.survival(t1), 0.99627, 5e-4);
}

TEST_CASE("intensity strip reprices every quote to numerical zero") {
  const DiscountCurve curve = fixtures::load_curve("2004-03-10");
  const CdsQuoteSet quotes = fixtures::load_quotes("vodafone_2004-03-10", curve);
  const IntensitySurvival surv{calibrate_intensity(quotes, curve)};
  for (const CdsQuote& q : quotes.quotes) {
    CdsContract c{PaymentSchedule::backward_from(quotes.valuation, q.maturity, 4), q.spread(),
                  q.lgd(), CdsConvention::Running};
    CHECK(std::abs(cds_price(c, surv, curve)) < 1e-8);
  }
}

TEST_CASE("zero spreads imply zero intensity") {
  const DiscountCurve curve = fixtures::load_curve("2004-03-10");
  CdsQuoteSet quotes;
  quotes.valuation = curve.anchor();
  quotes.quotes = {{make_date(2005, 3, 21), 0.0, 0.4}, {make_date(2007, 3, 21), 0.0, 0.4}};
  const IntensityCurve strip = calibrate_intensity(quotes, curve);
  for (const auto& [t, lam] : strip.nodes()) CHECK(std::abs(lam) < 1e-10);
}

TEST_CASE("the December 10th Parmalat strip needs a negative intensity") {
  const DiscountCurve curve = fixtures::load_curve("2003-12-10");
  const CdsQuoteSet quotes = fixtures::load_quotes("parmalat_2003-12-10", curve);
  CHECK_THROWS_AS(calibrate_intensity(quotes, curve), NegativeIntensityError);
  try {
    calibrate_intensity(quotes, curve);
  } catch (const NegativeIntensityError& e) {
    // the 1y point fits; the collapse from 5050bp to 2100bp breaks the 3y node
    CHECK(e.maturity() == make_date(2006, 12, 10));
  }
}

TEST_CASE("intensity survival is a proper survival curve on fixtures") {
  const DiscountCurve curve = fixtures::load_curve("2003-09-10");
  const CdsQuoteSet quotes = fixtures::load_quotes("parmalat_2003-09-10", curve);
  const IntensityCurve strip = calibrate_intensity(quotes, curve);
  CHECK(strip.survival(0.0) == 1.0);
  double prev = 1.0;
  for (int d = 1; d <= 4015; d += 3) {
    const double s = strip.survival(d / 365.0);
    CHECK(s <= prev);
    CHECK(s > 0.0);
    prev = s;
  }
}
