#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "strucred/at1p.hpp"
#include "strucred/cds_quotes.hpp"
#include "strucred/discount_curve.hpp"

namespace strucred {

enum class HMethod { CreditSpread, ExcursionProtection, Iterative, Fixed };

struct CalibrationConfig {
  double vol_lo = 1e-4;
  double vol_hi = 10.0;  // 1000% accommodates distressed strips
  double price_tol = 1e-10;
  double grid_step_days = 7.0;
};

struct MaturityDiagnostic {
  Date maturity;
  double maturity_time = 0.0;
  double spread_bps = 0.0;
  double sigma = 0.0;
  double survival = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool zero_default_floor = false;  // sigma pinned at the lower bound
};

struct HOrigin {
  HMethod method = HMethod::Fixed;
  double h = 0.0;
  int iterations = 0;
};

struct CalibrationResult {
  At1pParams params;
  std::vector<MaturityDiagnostic> by_maturity;
  HOrigin h_origin;
};

// Sequential volatility bootstrap: for each maturity in order, solve the
// piece of sigma ending there so the quoted CDS has zero value, earlier
// pieces held fixed. `pinned_first_vol` seeds the first piece's search (the
// piece is still solved). Throws NoRootInBracketError when no volatility in
// the bracket reprices a quote, even after one bracket expansion.
CalibrationResult bootstrap_volatility(const CdsQuoteSet& quotes, const DiscountCurve& curve,
                                       double h, double beta,
                                       std::optional<double> pinned_first_vol = {},
                                       const CalibrationConfig& config = {});

// One-year survival under constant sigma: psi(h) of the barrier search.
double flat_survival(double h, double beta, double sigma, double T);

// Barrier level matched to the intensity-implied first-maturity survival,
// with sigma set to the one-year equity volatility. Strips the full
// intensity curve first and so propagates NegativeIntensityError on quote
// sets the intensity model cannot fit.
double credit_spread_h(const CdsQuoteSet& quotes, const DiscountCurve& curve, double beta,
                       double equity_vol_1y);

// h = REC: protection LGD*V0 equated to the default excursion V0 - H.
double excursion_protection_h(double recovery);

// Fixed-point barrier search for when the intensity strip fails: calibrate
// the first-maturity sigma at the current h, then move h so the same
// first-maturity default probability is produced by the equity volatility.
std::pair<double, CalibrationResult> iterative_h(const CdsQuoteSet& quotes,
                                                 const DiscountCurve& curve, double beta,
                                                 double equity_vol_1y, int max_iter = 50,
                                                 double h_tol = 1e-9,
                                                 const CalibrationConfig& config = {});

struct CovenantCheck {
  bool satisfied = false;        // H <= L * P(0, T_bar)
  double margin = 0.0;           // L * P(0, T_bar) - H
  bool bracket_positive = true;  // q + (1+2b) s^2/2 >= 0 on [0, T_bar]
};

// Sufficient condition for the barrier to sit below the discounted final
// debt; only valid as stated when the reported bracket term is nonnegative.
CovenantCheck check_debt_covenant(double h, double beta, const PiecewiseConstant& sigma,
                                  const PiecewiseConstant& payout, double debt_face,
                                  const DiscountCurve& curve, double t_bar);

// Which betas admit a full bootstrap at the given h. Diagnostic utility; the
// feasible set is typically an interval but is not assumed to be.
struct BetaFeasibility {
  double beta = 0.0;
  bool ok = false;
};
std::vector<BetaFeasibility> beta_feasibility_scan(const CdsQuoteSet& quotes,
                                                   const DiscountCurve& curve, double h,
                                                   std::span<const double> betas,
                                                   const CalibrationConfig& config = {});

}  // namespace strucred
