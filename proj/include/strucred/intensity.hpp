#pragma once

#include <utility>
#include <vector>

#include "strucred/cds_quotes.hpp"
#include "strucred/discount_curve.hpp"
#include "strucred/survival_curve.hpp"

namespace strucred {

// Deterministic default intensity lambda(t), piecewise linear between nodes,
// flat after the last node. Node lambdas must be non-negative; a calibration
// that needs a negative node fails loudly instead of clamping.
class IntensityCurve {
 public:
  // nodes (t, lambda) with t strictly increasing and t0 = 0.
  static IntensityCurve from_nodes(std::vector<std::pair<double, double>> nodes);

  double lambda(double t) const;
  double integrated(double T) const;  // exact trapezoidal integral of lambda
  double survival(double T) const;
  const std::vector<std::pair<double, double>>& nodes() const { return nodes_; }

 private:
  struct Unchecked {};
  IntensityCurve(std::vector<std::pair<double, double>> nodes, Unchecked);
  explicit IntensityCurve(std::vector<std::pair<double, double>> nodes);

  std::vector<std::pair<double, double>> nodes_;
  std::vector<double> cumulative_;

  friend IntensityCurve calibrate_intensity(const CdsQuoteSet&, const DiscountCurve&);
};

double survival_from_intensity(const IntensityCurve& c, double T);

class IntensitySurvival final : public SurvivalCurve {
 public:
  explicit IntensitySurvival(IntensityCurve curve) : curve_(std::move(curve)) {}
  double survival(double t) const override { return curve_.survival(t); }
  const IntensityCurve& curve() const { return curve_; }

 private:
  IntensityCurve curve_;
};

// Bootstrap the piecewise-linear intensity so every quoted CDS has zero
// value under the intensity survival curve. Nodes sit at quote maturities,
// with the first solved value repeated at t = 0. Throws
// NegativeIntensityError when a maturity requires a negative node (or has
// no root at all); that failure is the expected behavior on severely
// inverted spread curves.
IntensityCurve calibrate_intensity(const CdsQuoteSet& quotes, const DiscountCurve& curve);

}  // namespace strucred
