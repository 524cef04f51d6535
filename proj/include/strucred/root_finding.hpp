#pragma once

#include <functional>

namespace strucred {

struct RootResult {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Bracketed bisection/secant hybrid for f(x) = 0 on [lo, hi]. Requires
// f(lo) and f(hi) of opposite sign (or one of them within f_tol). Secant
// steps are taken while they stay inside the bracket and shrink it; anything
// else falls back to bisection, so convergence is guaranteed.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double f_tol, double x_tol = 1e-14, int max_iter = 200);

// True when [lo, hi] brackets a sign change of f.
bool brackets_root(double f_lo, double f_hi);

}  // namespace strucred
