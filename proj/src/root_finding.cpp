#include "strucred/root_finding.hpp"

#include <cmath>
#include <stdexcept>

namespace strucred {

bool brackets_root(double f_lo, double f_hi) {
  return (f_lo <= 0.0 && f_hi >= 0.0) || (f_lo >= 0.0 && f_hi <= 0.0);
}

// Regula falsi with the Illinois weighting; falls back to bisection whenever
// the secant point degenerates. Keeps a valid bracket at every step.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double f_tol, double x_tol, int max_iter) {
  if (!(lo < hi)) throw std::invalid_argument("find_root: bad bracket");
  double a = lo, b = hi;
  double fa = f(a);
  double fb = f(b);
  int evals = 2;
  if (std::abs(fa) <= f_tol) return {a, fa, evals, true};
  if (std::abs(fb) <= f_tol) return {b, fb, evals, true};
  if (!brackets_root(fa, fb)) throw std::invalid_argument("find_root: no sign change");

  int side = 0;  // which endpoint was kept last
  for (int it = 0; it < max_iter; ++it) {
    double c;
    const double denom = fb - fa;
    if (denom != 0.0) {
      c = b - fb * (b - a) / denom;
      if (!(c > a && c < b)) c = 0.5 * (a + b);
    } else {
      c = 0.5 * (a + b);
    }
    const double fc = f(c);
    ++evals;
    if (std::abs(fc) <= f_tol) return {c, fc, evals, true};
    if ((fc < 0.0) == (fa < 0.0)) {
      a = c;
      fa = fc;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = c;
      fb = fc;
      if (side == +1) fa *= 0.5;
      side = +1;
    }
    if (b - a <= x_tol * std::max(1.0, std::abs(c)))
      return {0.5 * (a + b), fc, evals, true};
  }
  return {0.5 * (a + b), 0.5 * (fa + fb), evals, false};
}

}  // namespace strucred
