#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace wns {

// Short scientific rendering for doubles quoted in error messages (fixed
// six-decimal formatting would print tiny defects and margins as 0).
inline std::string format_quantity(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Base class for every domain error thrown by the library. Contract
// violations that are plain programming errors (bad argument shapes, null
// handles) throw std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A (2N)^{k*alpha} weight left the double range; carries the log value.
class WeightOverflow : public Error {
 public:
  WeightOverflow(const std::string& what, double log_value)
      : Error(what), log_value(log_value) {}
  double log_value;
};

// The requested norm-bound constant A(gap) diverges (gap < 2).
class DivergentSeries : public Error {
 public:
  using Error::Error;
};

// A basis enumeration would exceed the configured cardinality cap.
class TruncationTooLarge : public Error {
 public:
  using Error::Error;
};

// An element or process touches a chaos variable beyond the truncation's
// variable budget.
class VariableOutOfRange : public Error {
 public:
  using Error::Error;
};

// Operator shapes are incompatible (Laurent products, matrix assembly).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Too few circle samples for the bandwidth at hand.
class AliasingRisk : public Error {
 public:
  using Error::Error;
};

// Lag-0 coefficient of a causal series is not invertible.
class SingularLeadCoefficient : public Error {
 public:
  using Error::Error;
};

// A spectrum fails positivity on the circle; carries the offending minimum
// eigenvalue.
class NotPositive : public Error {
 public:
  NotPositive(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue(min_eigenvalue) {}
  double min_eigenvalue;
};

// Factorization iteration failed to reach tolerance; carries the final
// relative defect.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double defect)
      : Error(what), defect(defect) {}
  double defect;
};

// A process correlation depends on absolute time; carries the spread.
class NotStationary : public Error {
 public:
  NotStationary(const std::string& what, double spread)
      : Error(what), spread(spread) {}
  double spread;
};

// Correlation mass beyond the requested lag band is not negligible.
class TailTooHeavy : public Error {
 public:
  TailTooHeavy(const std::string& what, double mass)
      : Error(what), mass(mass) {}
  double mass;
};

// Modulation factor is not unimodular.
class NonUnimodularModulation : public Error {
 public:
  using Error::Error;
};

// A scenario stage failed; carries the stage name and wraps the cause text.
class ScenarioError : public Error {
 public:
  ScenarioError(const std::string& stage, const std::string& what)
      : Error("stage '" + stage + "': " + what), stage(stage) {}
  std::string stage;
};

}  // namespace wns
