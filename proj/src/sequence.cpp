#include "weightlab/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace weightlab {

namespace {

constexpr double kConvexSlack = 1e-12;  // absolute, log domain

std::string p_window(int lo, int hi) {
  std::ostringstream os;
  os << "p in [" << lo << ", " << hi << "]";
  return os.str();
}

}  // namespace

WeightSequence::WeightSequence(std::vector<double> log_m) : log_m_(std::move(log_m)) {
  if (log_m_.empty()) throw InvalidArgument("WeightSequence: empty log values");
  for (double v : log_m_) {
    if (!std::isfinite(v)) throw InvalidArgument("WeightSequence: log M_p must be finite");
  }
  log_mu_.resize(log_m_.size());
  log_mu_[0] = 0.0;
  for (size_t p = 1; p < log_m_.size(); ++p) log_mu_[p] = log_m_[p] - log_m_[p - 1];

  normalized_ = std::fabs(log_m_[0]) <= kConvexSlack &&
                (log_m_.size() < 2 || log_m_[1] >= -kConvexSlack);
  log_convex_ = true;
  for (size_t p = 2; p < log_mu_.size(); ++p) {
    if (log_mu_[p] < log_mu_[p - 1] - kConvexSlack) {
      log_convex_ = false;
      break;
    }
  }
}

WeightSequence WeightSequence::gevrey(double alpha, int p_max) {
  if (!(alpha > 0.0)) throw InvalidArgument("gevrey: alpha must be positive");
  if (p_max < 1) throw InvalidArgument("gevrey: p_max must be >= 1");
  std::vector<double> log_m(static_cast<size_t>(p_max) + 1);
  log_m[0] = 0.0;
  for (int p = 1; p <= p_max; ++p)
    log_m[static_cast<size_t>(p)] = log_m[static_cast<size_t>(p) - 1] + alpha * std::log(static_cast<double>(p));
  return WeightSequence(std::move(log_m));
}

WeightSequence WeightSequence::constant(double c, int p_max) {
  if (!(c > 0.0)) throw InvalidArgument("constant: c must be positive");
  if (p_max < 1) throw InvalidArgument("constant: p_max must be >= 1");
  return WeightSequence(std::vector<double>(static_cast<size_t>(p_max) + 1, std::log(c)));
}

WeightSequence WeightSequence::from_log_quotients(const std::vector<double>& log_mu) {
  if (log_mu.empty()) throw InvalidArgument("from_log_quotients: empty");
  std::vector<double> log_m(log_mu.size());
  log_m[0] = 0.0;
  for (size_t p = 1; p < log_mu.size(); ++p) log_m[p] = log_m[p - 1] + log_mu[p];
  return WeightSequence(std::move(log_m));
}

WeightSequence WeightSequence::truncated(int p_max) const {
  if (p_max < 1 || p_max > this->p_max()) throw InvalidArgument("truncated: bad p_max");
  return WeightSequence(std::vector<double>(log_m_.begin(), log_m_.begin() + p_max + 1));
}

Verdict check_lc(const WeightSequence& m, double margin_tol) {
  const int n = m.p_max();
  const std::string window = p_window(0, n);
  if (!m.normalized()) {
    return Verdict::make(State::Fails, {"not normalized: log M_0 or log M_1 off", 0.0, m.log_m(0)},
                         window, 0.0);
  }
  for (int p = 1; p + 1 <= n; ++p) {
    const double lhs = 2.0 * m.log_m(p);
    const double rhs = m.log_m(p - 1) + m.log_m(p + 1);
    if (lhs > rhs + kConvexSlack) {
      return Verdict::make(State::Fails,
                           {"log-convexity violated: 2 log M_p > log M_{p-1} + log M_{p+1}",
                            static_cast<double>(p), lhs - rhs},
                           window, lhs - rhs);
    }
  }
  // Divergence of (M_p)^{1/p}: trend of log M_p / p over the tail.
  std::vector<double> root;
  root.reserve(static_cast<size_t>(n));
  for (int p = 1; p <= n; ++p) root.push_back(m.log_m(p) / p);
  Verdict v = verdict_increases_unboundedly(tail_window(root), margin_tol, window,
                                            "(M_p)^{1/p} divergence, stat = log M_p / p");
  if (v.holds()) v.warn("divergence read from a finite prefix (Holds-with-window)");
  return v;
}

Verdict check_mg(const WeightSequence& m, double margin_tol) {
  const int n = m.p_max();
  const std::string window = p_window(0, n);
  // Per total degree: worst defect over all splits p + q = d.
  std::vector<double> defect(static_cast<size_t>(n) + 1, -kInf);
  defect[0] = (m.log_m(0) - 2.0 * m.log_m(0)) / 1.0;
  for (int d = 1; d <= n; ++d) {
    double worst = -kInf;
    for (int p = 0; 2 * p <= d; ++p) {
      const double s = (m.log_m(d) - m.log_m(p) - m.log_m(d - p)) / (d + 1);
      worst = std::max(worst, s);
    }
    defect[static_cast<size_t>(d)] = worst;
  }
  Verdict v = verdict_bounded_above(tail_window(defect), margin_tol, window,
                                    "(mg) defect (log M_{p+q} - log M_p - log M_q)/(p+q+1)");
  // Fitted log C: sup of the defect over the whole prefix (clamped at 0, C >= 1).
  double log_c = 0.0;
  for (double d : defect) log_c = std::max(log_c, d);
  v.witness.value = log_c;
  return v;
}

namespace {

std::pair<const WeightSequence*, const WeightSequence*> align(const WeightSequence& m,
                                                              const WeightSequence& n,
                                                              WeightSequence& m_store,
                                                              WeightSequence& n_store,
                                                              bool& truncated) {
  truncated = false;
  if (m.p_max() == n.p_max()) return {&m, &n};
  truncated = true;
  const int p = std::min(m.p_max(), n.p_max());
  m_store = m.truncated(p);
  n_store = n.truncated(p);
  return {&m_store, &n_store};
}

}  // namespace

Verdict relation(const WeightSequence& m_in, const WeightSequence& n_in, SeqRelation kind,
                 double margin_tol) {
  WeightSequence ms = m_in, ns = n_in;
  bool truncated = false;
  auto [m, n] = align(m_in, n_in, ms, ns, truncated);

  if (kind == SeqRelation::Equiv) {
    Verdict fwd = relation(*m, *n, SeqRelation::Preceq, margin_tol);
    Verdict bwd = relation(*n, *m, SeqRelation::Preceq, margin_tol);
    State s = State::Holds;
    if (fwd.fails() || bwd.fails())
      s = State::Fails;
    else if (fwd.inconclusive() || bwd.inconclusive())
      s = State::Inconclusive;
    Verdict v = Verdict::make(s, fwd.fails() ? fwd.witness : (bwd.fails() ? bwd.witness : fwd.witness),
                              fwd.window, std::min(fwd.margin, bwd.margin));
    if (truncated) v.warn("sequences truncated to the shorter prefix");
    return v;
  }

  const int pm = m->p_max();
  std::vector<double> stat;
  stat.reserve(static_cast<size_t>(pm));
  for (int p = 1; p <= pm; ++p) stat.push_back((m->log_m(p) - n->log_m(p)) / p);
  const std::string window = p_window(1, pm);

  Verdict v;
  if (kind == SeqRelation::Preceq) {
    v = verdict_bounded_above(tail_window(stat), margin_tol, window,
                              "(log M_p - log N_p)/p bounded above");
  } else {
    v = verdict_decreases_unboundedly(tail_window(stat), margin_tol, window,
                                      "(log M_p - log N_p)/p -> -inf");
  }
  if (truncated) v.warn("sequences truncated to the shorter prefix");
  return v;
}

double preceq_constant(const WeightSequence& m, const WeightSequence& n) {
  Verdict pre = relation(m, n, SeqRelation::Preceq);
  if (!pre.holds()) throw PreconditionError("preceq_constant: relation(m, n, preceq) does not hold");
  const int pm = std::min(m.p_max(), n.p_max());
  double sup = -kInf;
  for (int p = 1; p <= pm; ++p) {
    const double v = (m.log_m(p) - m.log_m(0) - n.log_m(p) + n.log_m(0)) / p;
    sup = std::max(sup, v);
  }
  return std::exp(sup);
}

WeightSequence pointwise_product(const WeightSequence& m, const WeightSequence& n) {
  if (m.p_max() != n.p_max()) throw InvalidArgument("pointwise_product: p_max mismatch");
  std::vector<double> out(m.log_m().size());
  for (size_t p = 0; p < out.size(); ++p) out[p] = m.log_m()[p] + n.log_m()[p];
  return WeightSequence(std::move(out));
}

WeightSequence pointwise_quotient(const WeightSequence& m, const WeightSequence& n) {
  if (m.p_max() != n.p_max()) throw InvalidArgument("pointwise_quotient: p_max mismatch");
  std::vector<double> out(m.log_m().size());
  for (size_t p = 0; p < out.size(); ++p) out[p] = m.log_m()[p] - n.log_m()[p];
  return WeightSequence(std::move(out));
}

WeightSequence log_convex_minorant(const WeightSequence& m) {
  const int n = m.p_max();
  // Lower convex hull of (p, log M_p) by monotone chain. Collinear middle
  // points are dropped, which keeps the earliest and latest support points
  // and leaves the envelope values unchanged.
  std::vector<int> hull;
  hull.reserve(static_cast<size_t>(n) + 1);
  for (int p = 0; p <= n; ++p) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      // keep b only if it lies strictly below chord a--p
      const double cross = (static_cast<double>(b - a)) * (m.log_m(p) - m.log_m(a)) -
                           (static_cast<double>(p - a)) * (m.log_m(b) - m.log_m(a));
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  std::vector<double> out(static_cast<size_t>(n) + 1);
  for (size_t seg = 0; seg + 1 < hull.size(); ++seg) {
    const int a = hull[seg], b = hull[seg + 1];
    const double slope = (m.log_m(b) - m.log_m(a)) / (b - a);
    for (int p = a; p <= b; ++p) out[static_cast<size_t>(p)] = m.log_m(a) + slope * (p - a);
  }
  if (hull.size() == 1) out[0] = m.log_m(0);
  return WeightSequence(std::move(out));
}

GrowthIndexEstimate thilliez_gamma(const WeightSequence& m, const ThilliezOptions& opt) {
  if (!m.log_convex()) throw InvalidArgument("thilliez_gamma: sequence must be log-convex");
  if (opt.q_max < 2) throw InvalidArgument("thilliez_gamma: q_max must be >= 2");

  GrowthIndexEstimate est;
  const int n = m.p_max();
  est.wide = n < 10 * opt.q_max;

  double best = -kInf;
  for (int q = 2; q <= opt.q_max; ++q) {
    const int p_hi = n / q;
    if (p_hi < 4) continue;
    const int p_lo = std::max(1, p_hi / 2);
    double liminf = kInf;
    for (int p = p_lo; p <= p_hi; ++p) {
      const double ratio = (m.log_mu(q * p) - m.log_mu(p)) / std::log(static_cast<double>(q));
      liminf = std::min(liminf, ratio);
    }
    est.witnesses.push_back({liminf, static_cast<double>(q), liminf});
    if (liminf > best) best = liminf;
  }
  std::ostringstream os;
  os << "Q in [2, " << opt.q_max << "], tail p-window up to p_max/Q, p_max=" << n;
  est.window = os.str();

  if (!std::isfinite(best)) {
    est.wide = true;
    est.lower = 0.0;
    est.upper = kInf;
    return est;
  }
  const double margin = est.wide ? 10.0 * opt.margin : opt.margin;
  est.lower = std::max(0.0, best - margin);
  est.upper = best + margin;
  return est;
}

}  // namespace weightlab
