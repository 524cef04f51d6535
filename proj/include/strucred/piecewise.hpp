#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace strucred {

// Right-continuous step function on [0, inf). Piece i covers (end[i-1], end[i]]
// with end[-1] = 0; the last value extends flat beyond the last breakpoint.
// A value exactly at a breakpoint belongs to the earlier piece.
class PiecewiseConstant {
 public:
  PiecewiseConstant() : values_{0.0} { rebuild(); }
  explicit PiecewiseConstant(double constant) : values_{constant} { rebuild(); }

  PiecewiseConstant(std::vector<double> ends, std::vector<double> values)
      : ends_(std::move(ends)), values_(std::move(values)) {
    if (values_.size() != ends_.size() + 1)
      throw std::invalid_argument("piecewise: need one more value than breakpoint");
    double prev = 0.0;
    for (double e : ends_) {
      if (!(e > prev)) throw std::invalid_argument("piecewise: breakpoints not increasing");
      prev = e;
    }
    rebuild();
  }

  double operator()(double t) const { return values_[piece_index(t)]; }

  // Exact integral over [0, t]; piecewise-linear in t by construction.
  double integral(double t) const {
    if (t <= 0.0) return 0.0;
    std::size_t i = piece_index(t);
    double start = i == 0 ? 0.0 : ends_[i - 1];
    return cumulative_[i] + values_[i] * (t - start);
  }

  double integral(double a, double b) const { return integral(b) - integral(a); }

  const std::vector<double>& breakpoints() const { return ends_; }
  const std::vector<double>& values() const { return values_; }

  PiecewiseConstant squared() const {
    std::vector<double> v = values_;
    for (double& x : v) x *= x;
    return PiecewiseConstant(ends_, std::move(v));
  }

 private:
  std::size_t piece_index(double t) const {
    return std::size_t(std::lower_bound(ends_.begin(), ends_.end(), t) - ends_.begin());
  }

  void rebuild() {
    cumulative_.assign(values_.size(), 0.0);
    double acc = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < ends_.size(); ++i) {
      acc += values_[i] * (ends_[i] - prev);
      prev = ends_[i];
      cumulative_[i + 1] = acc;
    }
  }

  std::vector<double> ends_;
  std::vector<double> values_;
  std::vector<double> cumulative_;  // integral up to each piece start
};

// Sorted union of breakpoints of several curves, truncated to (0, horizon].
std::vector<double> merged_breakpoints(std::span<const PiecewiseConstant* const> curves,
                                       double horizon);

}  // namespace strucred
