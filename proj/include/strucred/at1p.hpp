#pragma once

#include <span>
#include <vector>

#include "strucred/piecewise.hpp"

namespace strucred {

// First-passage model parameters in normalized form: the survival law depends
// on the barrier only through h = H/V0, so V0 never appears explicitly.
// sigma is the piecewise-constant firm-value volatility; the last piece
// extends flat, and a time exactly at a node belongs to the earlier piece.
class At1pParams {
 public:
  At1pParams(double h, double beta, PiecewiseConstant sigma);

  static At1pParams from_levels(double v0, double barrier, double beta,
                                PiecewiseConstant sigma);

  double h() const { return h_; }
  double beta() const { return beta_; }
  const PiecewiseConstant& sigma() const { return sigma_; }

  // Sigma(T) = integral of sigma^2 over [0,T]; exact, piecewise linear in T.
  double cumulative_variance(double T) const { return variance_.integral(T); }
  double sigma_at(double t) const { return sigma_(t); }

 private:
  double h_;
  double beta_;
  PiecewiseConstant sigma_;
  PiecewiseConstant variance_;  // sigma^2
};

// Q(tau > T): probability the firm value never reaches the flattened barrier
// before T. Returns 1 when T <= 0 or no variance has accrued.
double survival_probability(const At1pParams& p, double T);

// Survival increments Q(tau in (t_{k-1}, t_k]) over a sorted grid starting
// at 0; each increment >= 0 and they telescope to 1 - Q(tau > t_N).
std::vector<double> default_leg_density_grid(const At1pParams& p,
                                             std::span<const double> grid);

// Deterministic market environment for the barrier/diagnostic formulas:
// short rate r_t, payout ratio q_t (zero by default) and the dynamics
// (sigma, beta, v0). All step functions, integrals evaluated in closed form.
struct FirmValueDynamics {
  PiecewiseConstant rate;
  PiecewiseConstant payout;
  PiecewiseConstant sigma;
  double beta = 0.0;
  double v0 = 1.0;
};

// Safety-covenant barrier H_hat(t) = H exp(-int_0^t (q - r + (1+2b)s^2/2)).
// h_level is the absolute barrier H (same units as v0).
double true_barrier(const FirmValueDynamics& d, double h_level, double t);

struct ConfidenceBand {
  double expected;  // E[V_t]
  double lower;     // exp(E[ln V_t] - Std[ln V_t])
  double upper;     // exp(E[ln V_t] + Std[ln V_t])
};
ConfidenceBand confidence_band(const FirmValueDynamics& d, double t);

// Down-and-out bond price with time-dependent coefficients and the curved
// barrier shaped by d.beta around reference level h_level; d.payout is read
// as the free payout q* (not tied to the flattening condition). Requires
// v0 above the initial barrier.
double dob_price_time_dependent(const FirmValueDynamics& d, double h_level, double T);

// The beta that keeps the curved barrier flattest over [0,T]; closed-form
// segment integration, no generic quadrature. sigma must not vanish a.e.
double optimal_beta(const PiecewiseConstant& rate, const PiecewiseConstant& q_star,
                    const PiecewiseConstant& sigma, double T);

}  // namespace strucred
