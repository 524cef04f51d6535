#pragma once

#include <functional>
#include <utility>

#include "strucred/at1p.hpp"

namespace strucred {

// Q(tau > t) supplier consumed by the CDS engine; implemented by the
// structural and the intensity models.
class SurvivalCurve {
 public:
  virtual ~SurvivalCurve() = default;
  virtual double survival(double t) const = 0;  // Q(tau > t), survival(0) = 1
};

class At1pSurvival final : public SurvivalCurve {
 public:
  explicit At1pSurvival(At1pParams params) : params_(std::move(params)) {}
  double survival(double t) const override { return survival_probability(params_, t); }
  const At1pParams& params() const { return params_; }

 private:
  At1pParams params_;
};

// Adapter for ad-hoc survival curves (tests, closed-form special cases).
class FunctionSurvival final : public SurvivalCurve {
 public:
  explicit FunctionSurvival(std::function<double(double)> fn) : fn_(std::move(fn)) {}
  double survival(double t) const override { return fn_(t); }

 private:
  std::function<double(double)> fn_;
};

}  // namespace strucred
