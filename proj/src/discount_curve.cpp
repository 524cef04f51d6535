#include "strucred/discount_curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "strucred/csv.hpp"
#include "strucred/errors.hpp"

namespace strucred {

DiscountCurve::DiscountCurve(Date anchor, std::vector<CurveNode> nodes)
    : anchor_(anchor), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw IngestionError("discount curve: no nodes");
  if (nodes_.front().date != anchor_ || nodes_.front().discount != 1.0)
    throw IngestionError("discount curve: first node must be (anchor, 1.0)");
  times_.reserve(nodes_.size());
  log_dfs_.reserve(nodes_.size());
  double prev_df = 1.0 + 1e-15;
  Date prev_date = anchor_ - std::chrono::days{1};
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const CurveNode& n = nodes_[i];
    if (n.date <= prev_date)
      throw IngestionError("discount curve: dates not strictly increasing at row " +
                           std::to_string(i + 1) + " (" + format_iso_date(n.date) + ")");
    if (!(n.discount > 0.0) || n.discount > 1.0)
      throw IngestionError("discount curve: discount outside (0,1] at row " +
                           std::to_string(i + 1) + " (" + format_iso_date(n.date) + ")");
    if (n.discount > prev_df)
      throw IngestionError("discount curve: discounts increasing at row " +
                           std::to_string(i + 1) + " (" + format_iso_date(n.date) + ")");
    prev_date = n.date;
    prev_df = n.discount;
    times_.push_back(year_fraction(anchor_, n.date));
    log_dfs_.push_back(std::log(n.discount));
  }
  // Forward over each node interval; a single-node curve has zero forward.
  std::vector<double> ends, vals;
  for (std::size_t i = 1; i < times_.size(); ++i) {
    ends.push_back(times_[i]);
    vals.push_back(-(log_dfs_[i] - log_dfs_[i - 1]) / (times_[i] - times_[i - 1]));
  }
  if (vals.empty()) {
    forwards_ = PiecewiseConstant(0.0);
  } else {
    ends.pop_back();  // last piece extends flat
    forwards_ = ends.empty() ? PiecewiseConstant(vals.back())
                             : PiecewiseConstant(std::move(ends), std::move(vals));
  }
}

DiscountCurve DiscountCurve::load_csv(const std::filesystem::path& path) {
  CsvReader csv(path, {"date", "discount"});
  std::vector<CurveNode> nodes;
  while (auto row = csv.next()) {
    CurveNode n;
    n.date = csv.parse_date((*row)[0]);
    n.raw = (*row)[1];
    n.discount = csv.parse_double((*row)[1]);
    nodes.push_back(std::move(n));
  }
  if (nodes.empty()) throw IngestionError(path.string() + ": no data rows");
  Date anchor = nodes.front().date;
  return DiscountCurve(anchor, std::move(nodes));
}

void DiscountCurve::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "date,discount\n";
  for (const CurveNode& n : nodes_) {
    if (!n.raw.empty()) {
      out << format_iso_date(n.date) << ',' << n.raw << '\n';
    } else {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.10g", n.discount);
      out << format_iso_date(n.date) << ',' << buf << '\n';
    }
  }
}

double DiscountCurve::discount(double t) const {
  if (t < 0.0) throw std::invalid_argument("discount: t < 0");
  if (t == 0.0) return 1.0;
  const auto it = std::lower_bound(times_.begin(), times_.end(), t);
  const std::size_t i = std::size_t(it - times_.begin());
  if (i < times_.size() && times_[i] == t) return nodes_[i].discount;
  if (i == times_.size()) {
    // flat last instantaneous forward
    const double r = forwards_(times_.back() + 1.0);
    return std::exp(log_dfs_.back() - r * (t - times_.back()));
  }
  const double t0 = times_[i - 1], t1 = times_[i];
  const double w = (t - t0) / (t1 - t0);
  return std::exp((1.0 - w) * log_dfs_[i - 1] + w * log_dfs_[i]);
}

double DiscountCurve::forward_libor(double t_prev, double t_next) const {
  if (!(t_prev < t_next)) throw std::invalid_argument("forward_libor: need t_prev < t_next");
  const double alpha = t_next - t_prev;
  return (discount(t_prev) / discount(t_next) - 1.0) / alpha;
}

}  // namespace strucred
