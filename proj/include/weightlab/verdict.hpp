#ifndef WEIGHTLAB_VERDICT_HPP
#define WEIGHTLAB_VERDICT_HPP

#include <string>
#include <vector>

#include "weightlab/common.hpp"

namespace weightlab {

// Asymptotic conditions (limits, liminf/limsup, boundedness) are only
// checkable on finite windows, so every check returns a calibrated verdict
// instead of a boolean.

enum class State { Holds, Fails, Inconclusive };

const char* to_string(State s);

struct Witness {
  std::string what;     // the decisive comparison, human readable
  double index = kNaN;  // index p, parameter or abscissa where it occurred
  double value = kNaN;  // the decisive value
};

struct Verdict {
  State state = State::Inconclusive;
  Witness witness;
  std::string window;  // the p-range or t-range that was scanned
  double margin = 0.0;
  std::vector<std::string> warnings;

  bool holds() const { return state == State::Holds; }
  bool fails() const { return state == State::Fails; }
  bool inconclusive() const { return state == State::Inconclusive; }

  Verdict& warn(std::string msg) {
    warnings.push_back(std::move(msg));
    return *this;
  }

  static Verdict make(State s, Witness w, std::string window, double margin) {
    Verdict v;
    v.state = s;
    v.witness = std::move(w);
    v.window = std::move(window);
    v.margin = margin;
    return v;
  }
};

struct IndexWitness {
  double candidate = kNaN;  // candidate index (gamma, beta, ...)
  double parameter = kNaN;  // K, A or Q that witnessed it
  double achieved = kNaN;   // the achieved liminf/limsup
};

/// Numeric bracket [lower, upper] for a growth index, with the witnesses
/// needed to reproduce the scan.
struct GrowthIndexEstimate {
  double lower = 0.0;
  double upper = kInf;
  std::vector<IndexWitness> witnesses;
  std::string window;
  bool wide = false;  // scan failed to localize; bracket not trustworthy

  double width() const { return upper - lower; }
  bool contains(double v) const { return lower <= v && v <= upper; }
};

// ---------------------------------------------------------------------------
// Tail-trend verdict policy.
//
// A decisive statistic is sampled along a window; the caller passes the
// samples already restricted to the tail. The trend over the last quarter
// decides: a monotone move larger than the tolerance gives Holds/Fails, a
// flat statistic is read as converged, anything non-monotone yet drifting is
// Inconclusive.
// ---------------------------------------------------------------------------

struct TailTrend {
  double sup = -kInf;    // max over the whole tail
  int argmax = -1;
  double last = kNaN;    // final sample
  double drift = 0.0;    // last-quarter change (last - first-of-quarter)
  bool monotone_up = false;
  bool monotone_down = false;
};

TailTrend analyze_tail(const std::vector<double>& stat, double jitter = 1e-12);

/// Verdict for "the statistic stays bounded above" (the ⪯-style checks).
/// Flat or decreasing tails hold; a sustained increase beyond `tol` fails.
Verdict verdict_bounded_above(const std::vector<double>& stat, double tol,
                              const std::string& window, const std::string& label);

/// Verdict for "the statistic decreases beyond every level" (the ◁-style
/// checks). A plateau at any finite level fails.
Verdict verdict_decreases_unboundedly(const std::vector<double>& stat, double tol,
                                      const std::string& window, const std::string& label);

/// Verdict for "the statistic increases beyond every level"
/// (divergence checks such as (M_p)^{1/p} -> infinity).
Verdict verdict_increases_unboundedly(const std::vector<double>& stat, double tol,
                                      const std::string& window, const std::string& label);

/// Restrict a full sample to its tail window [n/2, n].
std::vector<double> tail_window(const std::vector<double>& full);

}  // namespace weightlab

#endif  // WEIGHTLAB_VERDICT_HPP
