#include "strucred/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "strucred/cds.hpp"
#include "strucred/errors.hpp"
#include "strucred/root_finding.hpp"

namespace strucred {

IntensityCurve::IntensityCurve(std::vector<std::pair<double, double>> nodes, Unchecked)
    : nodes_(std::move(nodes)) {
  if (nodes_.empty() || nodes_.front().first != 0.0)
    throw std::invalid_argument("intensity: need a node at t = 0");
  cumulative_.assign(nodes_.size(), 0.0);
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const auto [t0, l0] = nodes_[i - 1];
    const auto [t1, l1] = nodes_[i];
    if (!(t1 > t0)) throw std::invalid_argument("intensity: nodes not increasing");
    cumulative_[i] = cumulative_[i - 1] + 0.5 * (l0 + l1) * (t1 - t0);
  }
}

IntensityCurve::IntensityCurve(std::vector<std::pair<double, double>> nodes)
    : IntensityCurve(std::move(nodes), Unchecked{}) {
  for (const auto& [t, l] : nodes_)
    if (l < 0.0) throw std::invalid_argument("intensity: negative node");
}

IntensityCurve IntensityCurve::from_nodes(std::vector<std::pair<double, double>> nodes) {
  return IntensityCurve(std::move(nodes));
}

double IntensityCurve::lambda(double t) const {
  if (t <= 0.0) return nodes_.front().second;
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t,
                             [](const auto& n, double x) { return n.first < x; });
  if (it == nodes_.end()) return nodes_.back().second;  // flat extrapolation
  if (it == nodes_.begin()) return it->second;
  const auto [t1, l1] = *it;
  const auto [t0, l0] = *(it - 1);
  const double w = (t - t0) / (t1 - t0);
  return l0 + w * (l1 - l0);
}

double IntensityCurve::integrated(double T) const {
  if (T <= 0.0) return 0.0;
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), T,
                             [](const auto& n, double x) { return n.first < x; });
  if (it == nodes_.end())
    return cumulative_.back() + nodes_.back().second * (T - nodes_.back().first);
  const std::size_t i = std::size_t(it - nodes_.begin());
  if (nodes_[i].first == T) return cumulative_[i];
  const auto [t0, l0] = nodes_[i - 1];
  return cumulative_[i - 1] + 0.5 * (l0 + lambda(T)) * (T - t0);
}

double IntensityCurve::survival(double T) const { return std::exp(-integrated(T)); }

double survival_from_intensity(const IntensityCurve& c, double T) { return c.survival(T); }

IntensityCurve calibrate_intensity(const CdsQuoteSet& quotes, const DiscountCurve& curve) {
  if (quotes.quotes.empty()) throw std::invalid_argument("calibrate_intensity: no quotes");

  // lambda in [-1, 10]: the lower half exists only to detect negative
  // solutions, which are rejected with the documented error.
  constexpr double kLo = -1.0, kHi = 10.0, kPriceTol = 1e-12;

  std::vector<std::pair<double, double>> nodes{{0.0, 0.0}};
  for (std::size_t k = 0; k < quotes.quotes.size(); ++k) {
    const CdsQuote& q = quotes.quotes[k];
    const double t_k = year_fraction(quotes.valuation, q.maturity);
    CdsContract contract{
        PaymentSchedule::backward_from(quotes.valuation, q.maturity, quotes.premium_frequency),
        q.spread(), q.lgd(), CdsConvention::Running};

    auto trial_nodes = nodes;
    trial_nodes.emplace_back(t_k, 0.0);
    const auto price_at = [&](double lam) {
      trial_nodes.back().second = lam;
      if (k == 0) trial_nodes.front().second = lam;  // first node repeats at t = 0
      IntensitySurvival s{IntensityCurve(trial_nodes, IntensityCurve::Unchecked{})};
      return cds_price(contract, s, curve);
    };

    const double f_lo = price_at(kLo);
    const double f_hi = price_at(kHi);
    if (!brackets_root(f_lo, f_hi))
      throw NegativeIntensityError(
          q.maturity, "intensity bootstrap: no root in [-1,10] at maturity " +
                          format_iso_date(q.maturity));
    const RootResult root = find_root(price_at, kLo, kHi, kPriceTol);
    if (!root.converged)
      throw NegativeIntensityError(
          q.maturity,
          "intensity bootstrap: solver stalled at maturity " + format_iso_date(q.maturity));
    if (root.x < 0.0)
      throw NegativeIntensityError(
          q.maturity, "intensity bootstrap: negative intensity " + std::to_string(root.x) +
                          " required at maturity " + format_iso_date(q.maturity));
    if (k == 0) nodes.front().second = root.x;
    nodes.emplace_back(t_k, root.x);
  }
  return IntensityCurve(std::move(nodes), IntensityCurve::Unchecked{});
}

}  // namespace strucred
