#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "strucred/dates.hpp"
#include "strucred/piecewise.hpp"

namespace strucred {

struct CurveNode {
  Date date;
  double discount = 1.0;
  std::string raw;  // source text of the discount, kept for lossless round trips
};

// Dated discount factors P(0,T). Log-linear interpolation in the discount
// factor between nodes (piecewise-constant instantaneous forwards), flat
// last forward beyond the final node. Immutable after construction.
class DiscountCurve {
 public:
  // First node must be (anchor, 1.0); dates strictly increasing; discounts
  // in (0,1] and non-increasing.
  DiscountCurve(Date anchor, std::vector<CurveNode> nodes);

  // CSV `date,discount` with header, ISO dates; anchor = first row.
  static DiscountCurve load_csv(const std::filesystem::path& path);
  void write_csv(const std::filesystem::path& path) const;

  Date anchor() const { return anchor_; }
  std::span<const CurveNode> nodes() const { return nodes_; }

  double year_fraction_to(Date d) const { return year_fraction(anchor_, d); }

  // t in ACT/365 years from the anchor, t >= 0.
  double discount(double t) const;
  double discount(Date d) const { return discount(year_fraction_to(d)); }

  // Simply compounded forward over (t_prev, t_next].
  double forward_libor(double t_prev, double t_next) const;

  // Instantaneous forward r(t) = -d ln P / dt as a step function; exact
  // counterpart of the interpolation rule, so exp(-integral(r)) == discount.
  const PiecewiseConstant& instantaneous_forward_curve() const { return forwards_; }

 private:
  Date anchor_;
  std::vector<CurveNode> nodes_;
  std::vector<double> times_;    // year fractions of nodes
  std::vector<double> log_dfs_;  // ln discount at nodes
  PiecewiseConstant forwards_;
};

}  // namespace strucred
