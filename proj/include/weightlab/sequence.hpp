#ifndef WEIGHTLAB_SEQUENCE_HPP
#define WEIGHTLAB_SEQUENCE_HPP

#include <vector>

#include "weightlab/common.hpp"
#include "weightlab/verdict.hpp"

namespace weightlab {

/// A finite log-domain prefix of a positive sequence M_p together with its
/// quotients mu_p = M_p / M_{p-1}. Values like p!^alpha overflow doubles near
/// p ~ 170, so all arithmetic stays in log domain; exponentiation happens
/// only in reports.
///
/// Immutable after construction; safe to share across threads.
class WeightSequence {
 public:
  /// Build from log M_p, p = 0..p_max.
  explicit WeightSequence(std::vector<double> log_m);

  /// Gevrey sequence G^alpha = (p!^alpha): log M_p = alpha * sum_{k<=p} log k.
  static WeightSequence gevrey(double alpha, int p_max);

  /// Constant sequence M_p = c.
  static WeightSequence constant(double c, int p_max);

  /// Build from quotients: log M_p = sum_{k<=p} log mu_k, log mu_0 = 0.
  static WeightSequence from_log_quotients(const std::vector<double>& log_mu);

  int p_max() const { return static_cast<int>(log_m_.size()) - 1; }
  double log_m(int p) const { return log_m_[static_cast<size_t>(p)]; }
  double log_mu(int p) const { return log_mu_[static_cast<size_t>(p)]; }
  const std::vector<double>& log_m() const { return log_m_; }
  const std::vector<double>& log_mu() const { return log_mu_; }

  bool normalized() const { return normalized_; }
  bool log_convex() const { return log_convex_; }

  /// Truncated copy with the given p_max (<= current).
  WeightSequence truncated(int p_max) const;

 private:
  std::vector<double> log_m_;
  std::vector<double> log_mu_;
  bool normalized_ = false;
  bool log_convex_ = false;
};

// --- structural checks ------------------------------------------------------

/// Membership in the regular class: normalized, log-convex and
/// (M_p)^{1/p} -> infinity: the divergence can only be read off the finite
/// prefix via the tail-trend policy.
Verdict check_lc(const WeightSequence& m, double margin_tol = 1e-3);

/// Moderate growth M_{p+q} <= C^{p+q+1} M_p M_q; the fitted log C is placed
/// in the witness value.
Verdict check_mg(const WeightSequence& m, double margin_tol = 1e-3);

// --- relations --------------------------------------------------------------

enum class SeqRelation { Preceq, Triangle, Equiv };

/// preceq:   sup_p (M_p/N_p)^{1/p} < inf
/// triangle: lim   (M_p/N_p)^{1/p} = 0
/// equiv:    preceq both ways
/// Unequal lengths are truncated to the shorter prefix (warning attached).
Verdict relation(const WeightSequence& m, const WeightSequence& n, SeqRelation kind,
                 double margin_tol = 1e-3);

/// The constant C_{M preceq N} = sup_{p>=1} ((M_p/M_0)/(N_p/N_0))^{1/p}.
/// Precondition: relation(m, n, Preceq) holds.
double preceq_constant(const WeightSequence& m, const WeightSequence& n);

// --- point-wise algebra -----------------------------------------------------

WeightSequence pointwise_product(const WeightSequence& m, const WeightSequence& n);
WeightSequence pointwise_quotient(const WeightSequence& m, const WeightSequence& n);

/// Largest log-convex sequence below m: the lower convex envelope of
/// p -> log M_p. Ties in the hull resolve to the earlier support point.
WeightSequence log_convex_minorant(const WeightSequence& m);

// --- Thilliez growth index ---------------------------------------------------

struct ThilliezOptions {
  int q_max = 8;
  double margin = 0.025;  // half width added around the scanned estimate
};

/// Estimate of the sequence growth index via the beta-condition
/// liminf_p mu_{Qp}/mu_p > Q^beta, scanned over Q = 2..q_max.
/// Requires a log-convex input. A window too small for the scan yields a
/// wide bracket flagged `wide` instead of an error.
GrowthIndexEstimate thilliez_gamma(const WeightSequence& m, const ThilliezOptions& opt = {});

}  // namespace weightlab

#endif  // WEIGHTLAB_SEQUENCE_HPP
