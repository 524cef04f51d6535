#pragma once

#include <stdexcept>
#include <string>

#include "strucred/dates.hpp"

namespace strucred {

// Bad content in an input file; the message names the offending row.
class IngestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad key or value in a run configuration / command line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The intensity bootstrap needed a negative hazard node (or found no root
// at all) at the given maturity. Expected outcome on distressed quote sets;
// callers decide whether to fall back to another barrier method.
class NegativeIntensityError : public std::runtime_error {
 public:
  NegativeIntensityError(Date maturity, const std::string& what)
      : std::runtime_error(what), maturity_(maturity) {}
  Date maturity() const { return maturity_; }

 private:
  Date maturity_;
};

// No volatility in the search bracket zeroes the CDS value at this maturity.
class NoRootInBracketError : public std::runtime_error {
 public:
  NoRootInBracketError(Date maturity, const std::string& what)
      : std::runtime_error(what), maturity_(maturity) {}
  Date maturity() const { return maturity_; }

 private:
  Date maturity_;
};

// An iterative scheme ran out of iterations; what() carries the trace.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace strucred
