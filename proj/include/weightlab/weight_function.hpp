#ifndef WEIGHTLAB_WEIGHT_FUNCTION_HPP
#define WEIGHTLAB_WEIGHT_FUNCTION_HPP

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "weightlab/common.hpp"
#include "weightlab/sequence.hpp"
#include "weightlab/verdict.hpp"

namespace weightlab {

/// Combinator tree describing how a weight function was built, so that every
/// report is reconstructible. `seq` is populated for weights backed by an
/// explicit sequence.
struct Kind {
  std::string op;              // "id_power", "assoc", "lower", ...
  std::vector<double> params;  // numeric parameters of the node
  std::vector<Kind> args;      // sub-weights
  std::shared_ptr<const WeightSequence> seq;

  std::string to_string() const;
};

/// An evaluable nonnegative nondecreasing function on [0, inf), built from a
/// catalog plus combinators. Evaluators are pure and immutable: safe for
/// concurrent callers.
///
/// Associated weight functions are only trustworthy below their truncation
/// horizon mu_{p_max}; evaluating beyond raises DomainError. Combinators
/// propagate the minimum horizon.
class WeightFunction {
 public:
  class Impl;

  WeightFunction() = default;
  explicit WeightFunction(std::shared_ptr<const Impl> impl);

  double operator()(double t) const;

  /// Validity horizon; +inf for catalog weights.
  double horizon() const;

  /// Recommended [t_min, t_max] evaluation range.
  std::pair<double, double> domain_hint() const;

  const Kind& kind() const;

  /// Slope breaks of y -> w(e^y) inside [y_lo, y_hi]; empty when smooth.
  /// Used by optimizers to polish extrema of piecewise-linear objectives.
  std::vector<double> log_kinks(double y_lo, double y_hi) const;

  bool valid() const { return impl_ != nullptr; }

  /// Sequence behind an associated weight (nullptr otherwise).
  std::shared_ptr<const WeightSequence> backing_sequence() const;

 private:
  std::shared_ptr<const Impl> impl_;
};

// --- catalog and combinators -------------------------------------------------

/// t -> t^e, e > 0.
WeightFunction id_power(double exponent);

/// 0 on [0,1], (t-1)^e beyond: a normalized companion of id_power.
WeightFunction normalized_id_power(double exponent);

/// t -> log(1+t)^beta, beta > 1. Slowly growing; fails the doubling
/// absorption condition (gamma-bar is unbounded), so its associated matrix
/// is not constant.
WeightFunction log_power(double beta);

/// Piecewise log-linear interpolant through (t_i, v_i); domain ends at the
/// last node. Nodes must be positive in t and nondecreasing in v.
WeightFunction custom_table(std::vector<std::pair<double, double>> nodes);

/// Associated weight function of a normalized sequence:
/// w_M(t) = sup_p log(t^p / M_p). For log-convex input the sup is evaluated
/// in closed form through the quotients; otherwise by brute force over p.
WeightFunction assoc_weight(const WeightSequence& m);
WeightFunction assoc_weight(std::shared_ptr<const WeightSequence> m);

/// Power substitution t -> w(t^{1/alpha}), alpha > 0.
WeightFunction power_substitute(const WeightFunction& w, double alpha);

/// A scaled/shifted copy a*w(b*t)+c (a,b > 0, c >= 0); equivalent to w.
WeightFunction scale_shift(const WeightFunction& w, double a, double b, double c);

/// Wrap a pure evaluator as a WeightFunction. Used for conjugate results and
/// test fixtures; the construction-time monotonicity spot check still runs.
WeightFunction make_weight_function(std::function<double(double)> eval, double horizon,
                                    std::pair<double, double> domain_hint, Kind kind,
                                    std::function<std::vector<double>(double, double)> log_kinks = nullptr);

/// Inversion t -> w(1/t) on (0, inf). Not a weight function (it is
/// nonincreasing), so it is returned as a plain map.
struct InvertedMap {
  WeightFunction base;
  double operator()(double t) const {
    if (!(t > 0.0)) throw DomainError("invert: argument must be positive");
    return base(1.0 / t);
  }
};
InvertedMap invert(const WeightFunction& w);

// --- Legendre-Fenchel-Young conjugate ---------------------------------------

struct PhiStarOptions {
  double y_max = 0.0;  // right edge of the search window; 0 = from domain hint
  int coarse_points = 257;
  int golden_iters = 80;
};

/// phi*_w(x) = sup_{y>=0} (x y - w(e^y)), the generator of the associated
/// weight matrix. Throws HorizonError when the sup is not localized inside
/// the y-window (the objective still increases at the right edge).
class PhiStar {
 public:
  PhiStar(WeightFunction w, PhiStarOptions opt = {});
  double operator()(double x) const;
  double y_max() const { return y_max_; }

 private:
  WeightFunction w_;
  double y_max_;
  PhiStarOptions opt_;
};

PhiStar phi_star(const WeightFunction& w, PhiStarOptions opt = {});

// --- condition checkers ------------------------------------------------------

/// Verdicts for the standard growth/regularity conditions of BMT weights,
/// together with the fitted constants that witness them.
struct ConditionReport {
  Verdict omega0;  // continuous base axioms: w(0)=0, nondecreasing, unbounded
  Verdict omega1;  // w(2t) = O(w(t)); fitted L in witness
  Verdict omega3;  // log t = o(w(t))
  Verdict omega4;  // y -> w(e^y) convex (sampled midpoint test)
  Verdict omega5;  // w(t) = o(t)
  Verdict omega6;  // 2 w(t) <= w(Ht) + H for some H; fitted H in witness
  Verdict strong_nq;
  double fitted_L = kNaN;
  double fitted_H = kNaN;
  double fitted_C = kNaN;  // integral condition constant
};

struct ConditionOptions {
  double t_min = 1.0;
  double t_max = 1e8;
  int t_points = 400;
  double margin = 1e-3;
  double convexity_tol = 1e-9;  // relative, for the sampled midpoint test
};

ConditionReport check_conditions(const WeightFunction& w, const ConditionOptions& opt = {});

/// Strong nonquasianalyticity: int_1^inf w(yt)/t^2 dt <= C w(y) + C.
/// Numerically integrated to a horizon with a monotonicity tail bound.
Verdict strong_nq(const WeightFunction& w, const ConditionOptions& opt = {});

// --- growth indices ----------------------------------------------------------

struct GammaOptions {
  double t_min = 1.0;
  double t_max = 1e8;
  int t_points = 240;
  std::vector<double> dilations = {1.5, 2.0, 4.0, 8.0, 16.0, 32.0};  // K or A grid
  double rel_margin = 1e-3;   // required strictness margin in the ratio test
  double gamma_cap = 64.0;    // beyond this the index is reported unbounded
  int bisect_iters = 24;
  double bracket_margin = 0.02;
};

/// gamma(w) = sup{g > 0 : exists K > 1 with limsup w(K^g t)/w(t) < K}.
GrowthIndexEstimate gamma_index(const WeightFunction& w, const GammaOptions& opt = {});

/// gamma-bar(w) = inf{g > 0 : exists A > 1 with liminf w(A^g t)/w(t) > A}.
GrowthIndexEstimate gamma_bar_index(const WeightFunction& w, const GammaOptions& opt = {});

// --- function relations ------------------------------------------------------

enum class FnRelation { Preceq, OSmall, Equiv };

/// preceq: tau(t) = O(sigma(t)); o_small: tau(t) = o(sigma(t));
/// equiv: two-sided O. The ratio tau/sigma is analyzed over the tail window.
Verdict fn_relation(const WeightFunction& sigma, const WeightFunction& tau, FnRelation kind,
                    const ConditionOptions& opt = {});

}  // namespace weightlab

#endif  // WEIGHTLAB_WEIGHT_FUNCTION_HPP
