#include "strucred/cds.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace strucred {

namespace {

// Weekly grid over [0, T_b] with every premium date inserted, so no cell
// straddles a payment date and the accrual index is constant per cell.
std::vector<double> integration_grid(const PaymentSchedule& schedule, double step_days) {
  const double step = step_days / 365.0;
  const double horizon = schedule.maturity();
  std::vector<double> grid{0.0};
  std::size_t next_pay = 1;
  double t = 0.0;
  while (t < horizon) {
    double candidate = t + step;
    const double pay = schedule.time(next_pay);
    if (candidate >= pay - 1e-12) {
      candidate = pay;
      ++next_pay;
    }
    if (candidate > horizon) candidate = horizon;
    grid.push_back(candidate);
    t = candidate;
  }
  return grid;
}

}  // namespace

CdsLegs cds_legs(const PaymentSchedule& schedule, const SurvivalCurve& s,
                 const DiscountCurve& d, CdsConvention convention,
                 double grid_step_days) {
  if (!(grid_step_days > 0.0)) throw std::invalid_argument("cds: bad grid step");
  CdsLegs legs;

  for (std::size_t i = 1; i <= schedule.payments(); ++i)
    legs.premium_annuity +=
        d.discount(schedule.time(i)) * schedule.accrual(i) * s.survival(schedule.time(i));

  if (convention == CdsConvention::PostponedRunning) {
    double prev_q = 1.0;
    for (std::size_t i = 1; i <= schedule.payments(); ++i) {
      const double q = s.survival(schedule.time(i));
      legs.protection += d.discount(schedule.time(i)) * (prev_q - q);
      prev_q = q;
    }
    return legs;
  }

  const std::vector<double> grid = integration_grid(schedule, grid_step_days);
  double prev_q = 1.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double q = s.survival(grid[k]);
    const double dq = prev_q - q;  // Q(tau in (t_{k-1}, t_k])
    prev_q = q;
    if (dq == 0.0) continue;
    const double mid = 0.5 * (grid[k - 1] + grid[k]);
    const double df_mid = d.discount(mid);
    legs.protection += df_mid * dq;
    legs.accrual_annuity += df_mid * (mid - schedule.last_payment_on_or_before(mid)) * dq;
  }
  return legs;
}

double cds_price(const CdsContract& c, const SurvivalCurve& s, const DiscountCurve& d,
                 double grid_step_days) {
  if (c.schedule.payments() == 0) throw std::invalid_argument("cds: empty schedule");
  const CdsLegs legs = cds_legs(c.schedule, s, d, c.convention, grid_step_days);
  return c.lgd * legs.protection - c.spread * (legs.premium_annuity + legs.accrual_annuity);
}

double fair_spread(const SurvivalCurve& s, const DiscountCurve& d,
                   const PaymentSchedule& schedule, double lgd, CdsConvention convention) {
  const CdsLegs legs = cds_legs(schedule, s, d, convention);
  const double annuity = legs.premium_annuity + legs.accrual_annuity;
  if (!(annuity > 0.0)) throw std::invalid_argument("fair_spread: zero premium annuity");
  return lgd * legs.protection / annuity;
}

}  // namespace strucred
