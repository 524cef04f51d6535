#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "strucred/at1p.hpp"
#include "strucred/cds.hpp"
#include "strucred/discount_curve.hpp"

namespace strucred {

enum class CrossingDetector {
  BrownianBridge,  // in-step crossings recovered from the bridge probability
  EndpointOnly,    // naive: only grid-point crossings count
};

struct McConfig {
  std::size_t n_paths = 250000;
  double step = 5.0 / 365.0;
  std::uint64_t seed = 1;
  double horizon = 10.0;
  unsigned workers = 0;  // 0 = hardware concurrency
  CrossingDetector detector = CrossingDetector::BrownianBridge;
};

struct PathOutcome {
  std::optional<double> default_time;  // absent: survived the horizon
};

// P(min of the log-value over the step <= log_barrier | endpoints), for a
// Brownian segment with the given variance. 1 if either endpoint is at or
// below the barrier, else exp(-2 a b / variance).
double bridge_crossing_probability(double log_v_start, double log_v_end, double log_barrier,
                                   double variance_step);

// Simulation grid on [0, horizon]: multiples of `step` with the volatility
// nodes and any extra times forced in, so each step has constant sigma.
std::vector<double> simulation_grid(const At1pParams& p, double horizon, double step,
                                    std::span<const double> extra_times = {});

// First-passage times of the flattened-barrier dynamics. Default inside a
// step is placed at the step midpoint; at a grid point when the endpoint
// itself is at or below the barrier.
std::vector<PathOutcome> simulate_default_times(const At1pParams& p, const McConfig& cfg,
                                                std::span<const double> extra_times = {});

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

// Monte Carlo CDS value (buyer convention) at the contract spread, from the
// simulated default times; horizon is taken from the contract schedule.
McEstimate mc_cds_value(const At1pParams& p, const CdsContract& contract,
                        const DiscountCurve& curve, const McConfig& cfg);

// Survival frequency at each requested time, with binomial standard errors.
std::vector<McEstimate> mc_survival(std::span<const PathOutcome> outcomes,
                                    std::span<const double> times);

}  // namespace strucred
