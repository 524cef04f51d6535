#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fixtures.hpp"
#include "strucred/dates.hpp"
#include "strucred/errors.hpp"
#include "strucred/schedule.hpp"

using namespace strucred;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("year fractions are ACT/365F") {
  const Date d1 = make_date(2004, 3, 10);
  CHECK(year_fraction(d1, d1) == 0.0);
  CHECK(year_fraction(make_date(2003, 1, 1), make_date(2004, 1, 1)) == doctest::Approx(1.0));
  // Mar 10 2004 -> Mar 21 2005 spans 376 calendar days
  CHECK(year_fraction(d1, make_date(2005, 3, 21)) == doctest::Approx(376.0 / 365.0));
  CHECK_THROWS_AS(year_fraction(d1, make_date(2004, 3, 9)), std::invalid_argument);
}

TEST_CASE("month arithmetic clamps to month end") {
  CHECK(add_months(make_date(2005, 5, 31), -3) == make_date(2005, 2, 28));
  CHECK(add_months(make_date(2004, 5, 31), -3) == make_date(2004, 2, 29));
  CHECK(add_months(make_date(2005, 3, 21), -3) == make_date(2004, 12, 21));
  CHECK(add_years(make_date(2003, 9, 10), 1) == make_date(2004, 9, 10));
}

TEST_CASE("iso date parsing round trips and rejects junk") {
  CHECK(parse_iso_date("2003-12-08") == make_date(2003, 12, 8));
  CHECK(format_iso_date(make_date(2003, 12, 8)) == "2003-12-08");
  CHECK_THROWS_AS(parse_iso_date("2003-13-01"), IngestionError);
  CHECK_THROWS_AS(parse_iso_date("08-12-2003"), IngestionError);
  CHECK_THROWS_AS(parse_iso_date("2003-02-30"), IngestionError);
}

TEST_CASE("discount curve loads the published nodes exactly") {
  const DiscountCurve sep = fixtures::load_curve("2003-09-10");
  CHECK(sep.anchor() == make_date(2003, 9, 10));
  CHECK(sep.discount(0.0) == 1.0);
  CHECK(sep.discount(make_date(2005, 9, 12)) == doctest::Approx(0.94740).epsilon(1e-12));

  const DiscountCurve dec = fixtures::load_curve("2003-12-08");
  CHECK(dec.discount(make_date(2011, 12, 12)) == doctest::Approx(0.71134).epsilon(1e-12));
}

TEST_CASE("single-node curve is the unit curve") {
  auto path = write_temp("single_node.csv", "date,discount\n2004-01-01,1.00000\n");
  const DiscountCurve c = DiscountCurve::load_csv(path);
  CHECK(c.discount(0.0) == 1.0);
  CHECK(c.discount(3.7) == 1.0);  // flat zero forward beyond the only node
}

TEST_CASE("curve ingestion rejects bad rows") {
  CHECK_THROWS_AS(DiscountCurve::load_csv(write_temp(
                      "out_of_order.csv",
                      "date,discount\n2004-01-01,1.00000\n2004-03-01,0.99\n2004-02-01,0.98\n")),
                  IngestionError);
  CHECK_THROWS_AS(DiscountCurve::load_csv(write_temp(
                      "bad_df.csv", "date,discount\n2004-01-01,1.00000\n2004-03-01,1.20\n")),
                  IngestionError);
  CHECK_THROWS_AS(DiscountCurve::load_csv(write_temp(
                      "increasing.csv",
                      "date,discount\n2004-01-01,1.00000\n2004-02-01,0.9\n2004-03-01,0.95\n")),
                  IngestionError);
  CHECK_THROWS_AS(DiscountCurve::load_csv(
                      write_temp("no_anchor.csv", "date,discount\n2004-01-01,0.99\n")),
                  IngestionError);
  CHECK_THROWS_AS(DiscountCurve::load_csv(write_temp("empty.csv", "date,discount\n")),
                  IngestionError);
  CHECK_THROWS_AS(DiscountCurve::load_csv(write_temp(
                      "bad_field.csv", "date,discount\n2004-01-01,1.00000\n2004-02-01,x\n")),
                  IngestionError);
}

TEST_CASE("interpolation is log-linear in time") {
  auto path = write_temp("two_nodes.csv",
                         "date,discount\n2004-01-01,1.00000\n2006-01-01,0.90000\n");
  const DiscountCurve c = DiscountCurve::load_csv(path);
  const double t1 = c.year_fraction_to(make_date(2006, 1, 1));
  // independent oracle: time-weighted geometric mean of the bracketing nodes
  const double t = 0.25 * t1;
  const double expect = std::exp(0.75 * std::log(1.0) + 0.25 * std::log(0.90));
  CHECK(c.discount(t) == doctest::Approx(expect).epsilon(1e-14));

  // continuity at a node
  const double eps = 1e-9;
  CHECK(c.discount(t1 - eps) == doctest::Approx(c.discount(t1)).epsilon(1e-7));
  CHECK(c.discount(t1 + eps) == doctest::Approx(c.discount(t1)).epsilon(1e-7));
}

TEST_CASE("extrapolation continues the last forward") {
  const DiscountCurve c = fixtures::load_curve("2004-03-10");
  const auto nodes = c.nodes();
  const double t_last = c.year_fraction_to(nodes.back().date);
  const double t_prev = c.year_fraction_to(nodes[nodes.size() - 2].date);
  const double fwd = std::log(nodes[nodes.size() - 2].discount / nodes.back().discount) /
                     (t_last - t_prev);
  CHECK(c.discount(t_last + 0.5) ==
        doctest::Approx(nodes.back().discount * std::exp(-fwd * 0.5)).epsilon(1e-13));
}

TEST_CASE("discount is non-increasing on the published curves") {
  for (const char* date : {"2003-09-10", "2003-11-28", "2003-12-08", "2003-12-10",
                           "2004-03-10"}) {
    const DiscountCurve c = fixtures::load_curve(date);
    double prev = 1.0 + 1e-15;
    for (int d = 0; d <= 16 * 365; d += 3) {
      const double p = c.discount(d / 365.0);
      CHECK(p <= prev + 1e-15);
      CHECK(p > 0.0);
      prev = p;
    }
  }
}

TEST_CASE("curve round trip preserves the source decimals") {
  const auto src = fixtures::data_dir() / "curve_2004-03-10.csv";
  const DiscountCurve c = DiscountCurve::load_csv(src);
  const auto copy = std::filesystem::temp_directory_path() / "curve_roundtrip.csv";
  c.write_csv(copy);
  std::ifstream a(src), b(copy);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("forward libor") {
  const DiscountCurve flat = DiscountCurve::load_csv(
      write_temp("flat.csv", "date,discount\n2004-01-01,1.00000\n"));
  CHECK(flat.forward_libor(0.25, 0.75) == 0.0);

  // direct arithmetic example
  auto path = write_temp("fwd.csv",
                         "date,discount\n2004-01-01,1.00000\n2004-07-01,0.99000\n"
                         "2005-01-01,0.97000\n");
  const DiscountCurve c = DiscountCurve::load_csv(path);
  const double t1 = c.year_fraction_to(make_date(2004, 7, 1));
  const double t2 = c.year_fraction_to(make_date(2005, 1, 1));
  CHECK(c.forward_libor(t1, t2) ==
        doctest::Approx((0.99 / 0.97 - 1.0) / (t2 - t1)).epsilon(1e-14));
  CHECK_THROWS_AS(c.forward_libor(0.5, 0.5), std::invalid_argument);
}

TEST_CASE("forward libor telescopes to a discount difference") {
  const DiscountCurve c = fixtures::load_curve("2004-03-10");
  const PaymentSchedule sched = PaymentSchedule::backward_from(
      c.anchor(), make_date(2014, 3, 20), 4);
  double sum = 0.0;
  for (std::size_t i = 1; i <= sched.payments(); ++i)
    sum += c.discount(sched.time(i)) * sched.accrual(i) *
           c.forward_libor(sched.time(i - 1), sched.time(i));
  CHECK(sum == doctest::Approx(c.discount(0.0) - c.discount(sched.maturity())).epsilon(1e-12));
}

TEST_CASE("quote ingestion validates the strip") {
  const DiscountCurve c = fixtures::load_curve("2004-03-10");
  const CdsQuoteSet quotes = fixtures::load_quotes("vodafone_2004-03-10", c);
  CHECK(quotes.quotes.size() == 5);
  CHECK(quotes.quotes[0].spread_bps == 21.5);
  CHECK(quotes.quotes[4].maturity == make_date(2014, 3, 20));
  CHECK(quotes.quotes[0].lgd() == doctest::Approx(0.60));

  CHECK_THROWS_AS(CdsQuoteSet::load_csv(
                      write_temp("empty_quotes.csv", "maturity_date,spread_bps,recovery\n"),
                      c.anchor()),
                  IngestionError);
  CHECK_THROWS_AS(
      CdsQuoteSet::load_csv(write_temp("bad_order.csv",
                                       "maturity_date,spread_bps,recovery\n"
                                       "2006-01-01,30,0.4\n2005-01-01,20,0.4\n"),
                            c.anchor()),
      IngestionError);
  CHECK_THROWS_AS(
      CdsQuoteSet::load_csv(write_temp("bad_rec.csv",
                                       "maturity_date,spread_bps,recovery\n"
                                       "2006-01-01,30,1.4\n"),
                            c.anchor()),
      IngestionError);
}

TEST_CASE("schedule generation and the date index") {
  const Date val = make_date(2004, 3, 10);
  const PaymentSchedule s = PaymentSchedule::backward_from(val, make_date(2005, 3, 21), 4);
  // quarterly from Mar 21 2005 back: Mar 21 2004 is the first payment (stub)
  CHECK(s.payments() == 5);
  CHECK(s.time(0) == 0.0);
  CHECK(s.time(1) == doctest::Approx(11.0 / 365.0));
  CHECK(s.maturity() == doctest::Approx(376.0 / 365.0));

  CHECK(s.beta_index(s.time(2)) == 2);              // exact hit
  CHECK(s.beta_index(0.5 * (s.time(1) + s.time(2))) == 2);
  CHECK(s.last_payment_on_or_before(s.time(2)) == s.time(2));
  const double mid = 0.5 * (s.time(1) + s.time(2));
  CHECK(s.last_payment_on_or_before(mid) == s.time(1));

  const PaymentSchedule semi = PaymentSchedule::forward_from(val, 10, 2);
  CHECK(semi.payments() == 10);
  CHECK(semi.maturity() == doctest::Approx(year_fraction(val, make_date(2009, 3, 10))));
}
