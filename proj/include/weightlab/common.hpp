#ifndef WEIGHTLAB_COMMON_HPP
#define WEIGHTLAB_COMMON_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace weightlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Bad user input (nonpositive parameter, unknown tag, misaligned grids).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation outside a function's validity domain (e.g. beyond the
/// truncation horizon of an associated weight function).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A sup/inf could not be localized inside the search window: the objective
/// was still improving at the window edge.
class HorizonError : public std::runtime_error {
 public:
  explicit HorizonError(const std::string& what, double where = kNaN)
      : std::runtime_error(what), where_(where) {}
  double where() const { return where_; }

 private:
  double where_;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The generalized upper conjugate was requested for a pair whose
/// well-definedness guard fails.
class WellDefinednessError : public std::runtime_error {
 public:
  explicit WellDefinednessError(const std::string& what) : std::runtime_error(what) {}
};

/// n log-spaced points on [lo, hi], endpoints included. lo, hi > 0.
std::vector<double> log_grid(double lo, double hi, int n);

/// n evenly spaced points on [lo, hi], endpoints included.
std::vector<double> linear_grid(double lo, double hi, int n);

inline bool nearly_equal(double a, double b, double rel, double abs = 0.0) {
  return std::fabs(a - b) <= std::max(abs, rel * std::max(std::fabs(a), std::fabs(b)));
}

}  // namespace weightlab

#endif  // WEIGHTLAB_COMMON_HPP
