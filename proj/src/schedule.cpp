#include "strucred/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace strucred {

PaymentSchedule::PaymentSchedule(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2 || times_.front() != 0.0)
    throw std::invalid_argument("schedule: need T_0 = 0 and at least one payment");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1]))
      throw std::invalid_argument("schedule: times not strictly increasing");
}

PaymentSchedule PaymentSchedule::backward_from(Date valuation, Date maturity,
                                               int payments_per_year) {
  if (maturity <= valuation) throw std::invalid_argument("schedule: maturity before valuation");
  if (payments_per_year <= 0 || 12 % payments_per_year != 0)
    throw std::invalid_argument("schedule: frequency must divide 12 months");
  const int step = 12 / payments_per_year;
  std::vector<Date> dates;
  for (Date d = maturity; d > valuation; d = add_months(d, -step)) dates.push_back(d);
  std::reverse(dates.begin(), dates.end());
  std::vector<double> times{0.0};
  for (Date d : dates) times.push_back(year_fraction(valuation, d));
  return PaymentSchedule(std::move(times));
}

PaymentSchedule PaymentSchedule::forward_from(Date valuation, int n_periods,
                                              int payments_per_year) {
  if (n_periods <= 0) throw std::invalid_argument("schedule: need at least one period");
  if (payments_per_year <= 0 || 12 % payments_per_year != 0)
    throw std::invalid_argument("schedule: frequency must divide 12 months");
  const int step = 12 / payments_per_year;
  std::vector<double> times{0.0};
  for (int k = 1; k <= n_periods; ++k)
    times.push_back(year_fraction(valuation, add_months(valuation, k * step)));
  return PaymentSchedule(std::move(times));
}

std::size_t PaymentSchedule::beta_index(double t) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it == times_.end()) throw std::out_of_range("beta_index: t beyond schedule");
  return std::size_t(it - times_.begin());
}

double PaymentSchedule::last_payment_on_or_before(double t) const {
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) throw std::out_of_range("schedule: t before start");
  return *(it - 1);
}

}  // namespace strucred
