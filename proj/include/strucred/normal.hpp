#pragma once

namespace strucred {

// Standard normal CDF, computed as 0.5*erfc(-x/sqrt(2)) on top of the C
// library's correctly rounded erfc; relative error is at the 1e-16 level
// across the full double range, including the deep lower tail.
double norm_cdf(double x);

double norm_pdf(double x);

// Inverse standard normal CDF, Wichura's algorithm AS 241 (PPND16 variant,
// rational minimax approximations, ~1e-16 relative error). p in (0,1).
double norm_ppf(double p);

}  // namespace strucred
