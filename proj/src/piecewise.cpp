#include "strucred/piecewise.hpp"

namespace strucred {

std::vector<double> merged_breakpoints(std::span<const PiecewiseConstant* const> curves,
                                       double horizon) {
  std::vector<double> out;
  for (const PiecewiseConstant* c : curves)
    for (double e : c->breakpoints())
      if (e > 0.0 && e < horizon) out.push_back(e);
  out.push_back(horizon);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            out.end());
  return out;
}

}  // namespace strucred
