#pragma once

#include "strucred/discount_curve.hpp"
#include "strucred/schedule.hpp"
#include "strucred/survival_curve.hpp"

namespace strucred {

enum class CdsConvention {
  Running,           // protection paid at default, accrued premium at default
  PostponedRunning,  // protection postponed to the next premium date, no accrual
};

struct CdsContract {
  PaymentSchedule schedule;
  double spread = 0.0;  // absolute running rate R
  double lgd = 1.0;     // 1 - REC
  CdsConvention convention = CdsConvention::Running;
};

// The three building blocks of a CDS value, all per unit notional and per
// unit of their own scale factor (premium legs multiply R, protection
// multiplies LGD):
//   premium_annuity  = sum_i P(0,T_i) alpha_i Q(tau > T_i)
//   accrual_annuity  = E[P(0,tau) (tau - T_{beta(tau)-1}); tau <= T_b]
//   protection       = E[P(0,tau); tau <= T_b]  (at T_{beta(tau)} if postponed)
// Integrals run on a weekly grid unioned with the premium dates; survival
// increments are exact, discount and accrual time are taken at cell
// midpoints.
struct CdsLegs {
  double premium_annuity = 0.0;
  double accrual_annuity = 0.0;
  double protection = 0.0;
};

CdsLegs cds_legs(const PaymentSchedule& schedule, const SurvivalCurve& s,
                 const DiscountCurve& d, CdsConvention convention,
                 double grid_step_days = 7.0);

// Value to the protection buyer at time 0 per unit notional:
//   LGD * protection - R * (premium_annuity + accrual_annuity).
// Zero at the quoted fair R.
double cds_price(const CdsContract& c, const SurvivalCurve& s, const DiscountCurve& d,
                 double grid_step_days = 7.0);

// The R that zeroes the buyer value; closed form, the price is affine in R.
double fair_spread(const SurvivalCurve& s, const DiscountCurve& d,
                   const PaymentSchedule& schedule, double lgd,
                   CdsConvention convention = CdsConvention::Running);

}  // namespace strucred
