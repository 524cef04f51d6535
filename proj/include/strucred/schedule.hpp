#pragma once

#include <cstddef>
#include <vector>

#include "strucred/dates.hpp"

namespace strucred {

// Premium / settlement dates as year fractions T_0 = 0 < T_1 < ... < T_b
// from the valuation date, with accruals alpha_i = T_i - T_{i-1}.
class PaymentSchedule {
 public:
  explicit PaymentSchedule(std::vector<double> times);

  // Dates rolled back from `maturity` in steps of 12/frequency months until
  // the valuation date is reached; the first period may be a short stub.
  static PaymentSchedule backward_from(Date valuation, Date maturity, int payments_per_year);

  // Dates rolled forward from `valuation` in steps of 12/frequency months.
  static PaymentSchedule forward_from(Date valuation, int n_periods, int payments_per_year);

  std::size_t payments() const { return times_.size() - 1; }  // b
  double time(std::size_t i) const { return times_[i]; }      // T_i, 0 <= i <= b
  double maturity() const { return times_.back(); }
  double accrual(std::size_t i) const { return times_[i] - times_[i - 1]; }  // 1 <= i <= b
  const std::vector<double>& times() const { return times_; }

  // Smallest i with T_i >= t (the date index beta(t)); t <= T_b required.
  std::size_t beta_index(double t) const;

  // Largest T_j <= t; the start of the accrual period containing t.
  double last_payment_on_or_before(double t) const;

 private:
  std::vector<double> times_;
};

}  // namespace strucred
