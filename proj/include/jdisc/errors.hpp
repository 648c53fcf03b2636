#pragma once

#include <stdexcept>
#include <string>

namespace jdisc {

struct ConversionDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TamingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundaryMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ImmersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergenceError : std::runtime_error {
  double measured_q = 0.0;
  DivergenceError(const std::string& msg, double q)
      : std::runtime_error(msg), measured_q(q) {}
};

struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LopatinskiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BasinError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContinuationBreakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SeparationAlarm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FoliationAlarm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundednessAlarm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DemoSetupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace jdisc
