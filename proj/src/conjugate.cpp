#include "weightlab/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace weightlab {

namespace {

// s-window (in u = log s) for the lower conjugate at t: s and t/s must stay
// inside the factors' horizons and below the configured cap.
bool lower_window(const WeightFunction& sigma, const WeightFunction& tau, double t,
                  const ConjOptions& opt, double* u_lo, double* u_hi) {
  const double cap = std::log(opt.s_max);
  double lo = std::log(t) - cap;
  double hi = cap;
  if (!std::isinf(tau.horizon())) lo = std::max(lo, std::log(t) - std::log(tau.horizon()));
  if (!std::isinf(sigma.horizon())) hi = std::min(hi, std::log(sigma.horizon()));
  *u_lo = lo;
  *u_hi = hi;
  return lo < hi;
}

bool upper_window(const WeightFunction& sigma, const WeightFunction& tau, double t,
                  const ConjOptions& opt, double* u_lo, double* u_hi) {
  double hi = std::log(opt.s_max);
  if (!std::isinf(sigma.horizon())) hi = std::min(hi, std::log(sigma.horizon()));
  if (!std::isinf(tau.horizon())) hi = std::min(hi, std::log(t) + std::log(tau.horizon()));
  const double lo = std::log(opt.s_min_abs);
  *u_lo = lo;
  *u_hi = hi;
  return lo < hi;
}

Objective lower_objective(const WeightFunction& sigma, const WeightFunction& tau, double t) {
  Objective obj;
  const double logt = std::log(t);
  obj.f = [&sigma, &tau, t](double u) { return sigma(std::exp(u)) + tau(t * std::exp(-u)); };
  obj.kinks = [&sigma, &tau, logt](double a, double b) {
    std::vector<double> k = sigma.log_kinks(a, b);
    for (double y : tau.log_kinks(logt - b, logt - a)) k.push_back(logt - y);
    return k;
  };
  return obj;
}

Objective upper_objective(const WeightFunction& sigma, const WeightFunction& tau, double t) {
  Objective obj;
  const double logt = std::log(t);
  obj.f = [&sigma, &tau, t](double u) { return sigma(std::exp(u)) - tau(std::exp(u) / t); };
  obj.kinks = [&sigma, &tau, logt](double a, double b) {
    std::vector<double> k = sigma.log_kinks(a, b);
    for (double y : tau.log_kinks(a - logt, b - logt)) k.push_back(logt + y);
    return k;
  };
  return obj;
}

double combined_horizon_lower(const WeightFunction& sigma, const WeightFunction& tau,
                              const ConjOptions& opt) {
  const double hs = std::min(sigma.horizon(), opt.s_max);
  const double ht = std::min(tau.horizon(), opt.s_max);
  if (std::isinf(hs) || std::isinf(ht)) return kInf;
  return hs * ht;
}

double default_t_max(const WeightFunction& sigma, const WeightFunction& tau, double horizon,
                     const ConjOptions& opt) {
  double t_max = opt.t_max;
  if (t_max <= 0.0) {
    t_max = std::max(sigma.domain_hint().second, tau.domain_hint().second);
    if (!std::isinf(horizon)) t_max = std::min(t_max, horizon / 4.0);
  }
  return std::max(t_max, opt.t_min * 2);
}

}  // namespace

ConjugateResult lower_conj(const WeightFunction& sigma, const WeightFunction& tau,
                           const ConjOptions& opt) {
  const double horizon = combined_horizon_lower(sigma, tau, opt);
  const double t_max = default_t_max(sigma, tau, horizon, opt);

  // capture by value: the evaluator must stay pure and self-contained
  WeightFunction s = sigma, ta = tau;
  ConjOptions o = opt;
  auto eval_point = [s, ta, o](double t) -> ScanResult {
    if (t <= 0.0) {
      ScanResult r;
      r.arg = 0.0;
      r.value = s(0.0) + ta(0.0);
      return r;
    }
    double u_lo = 0.0, u_hi = 0.0;
    if (!lower_window(s, ta, t, o, &u_lo, &u_hi))
      throw DomainError("lower_conj: t outside the factors' combined validity horizon");
    Objective obj = lower_objective(s, ta, t);
    ScanResult r = minimize_scan(obj, u_lo, u_hi, o.scan);
    r.arg = std::exp(r.arg);
    return r;
  };

  ConjugateResult out;
  out.guard = Verdict::make(State::Holds, {"lower conjugate is always well-defined"}, "", 0.0);

  const auto grid = log_grid(opt.t_min, t_max, opt.t_points);
  out.trace.reserve(grid.size());
  for (double t : grid) {
    ScanResult r = eval_point(t);
    out.trace.push_back({t, r.value, r.arg, false});
  }
  // isotonic clean-up: the infimal convolution of nondecreasing weights is
  // nondecreasing; violations beyond tolerance are an internal error.
  double running = -kInf;
  for (auto& p : out.trace) {
    if (p.value < running - opt.isotonic_tol * std::max(1.0, std::fabs(running))) {
      std::ostringstream os;
      os << "lower_conj: monotonicity violated beyond tolerance at t=" << p.t;
      throw std::runtime_error(os.str());
    }
    running = std::max(running, p.value);
    p.value = running;
  }

  auto impl_eval = [eval_point](double t) { return eval_point(t).value; };
  Kind kind{"lower", {}, {sigma.kind(), tau.kind()}, nullptr};
  // result inherits the coarser domain hint of the inputs
  out.result = make_weight_function(impl_eval, horizon, {opt.t_min, t_max}, std::move(kind));
  return out;
}

ConjugateResult upper_conj(const WeightFunction& sigma, const WeightFunction& tau,
                           const ConjOptions& opt) {
  GuardReport guard = well_defined_guard_report(sigma, tau, opt);
  if (guard.overall.fails()) {
    throw WellDefinednessError("upper_conj: well-definedness guard fails (" +
                               guard.overall.witness.what + ")");
  }

  const double t_max = default_t_max(sigma, tau, kInf, opt);
  WeightFunction s = sigma, ta = tau;
  ConjOptions o = opt;
  auto eval_point = [s, ta, o](double t) -> ScanResult {
    ScanResult edge;  // s = 0 endpoint, defined by convention
    edge.arg = 0.0;
    edge.value = s(0.0) - ta(0.0);
    if (t <= 0.0) return edge;
    double u_lo = 0.0, u_hi = 0.0;
    if (!upper_window(s, ta, t, o, &u_lo, &u_hi))
      throw DomainError("upper_conj: empty s-window at t");
    Objective obj = upper_objective(s, ta, t);
    ScanResult r = maximize_scan(obj, u_lo, u_hi, o.scan);
    if (edge.value > r.value) {
      edge.rising_at_right = r.rising_at_right;
      return edge;
    }
    r.arg = std::exp(r.arg);
    return r;
  };

  ConjugateResult out;
  out.guard = guard.overall;

  const auto grid = log_grid(opt.t_min, t_max, opt.t_points);
  out.trace.reserve(grid.size());
  bool any_uncertain = false;
  for (double t : grid) {
    ScanResult r = eval_point(t);
    out.trace.push_back({t, r.value, r.arg, r.rising_at_right});
    any_uncertain = any_uncertain || r.rising_at_right;
  }
  if (any_uncertain && out.guard.holds()) {
    // never silently truncate a possibly infinite sup
    out.guard.state = State::Inconclusive;
    out.guard.warn("objective still increasing at the right s-edge at some probed t");
  }

  auto impl_eval = [eval_point](double t) { return eval_point(t).value; };
  Kind kind{"upper", {}, {sigma.kind(), tau.kind()}, nullptr};
  out.result = make_weight_function(impl_eval, kInf, {opt.t_min, t_max}, std::move(kind));
  return out;
}

GuardReport well_defined_guard_report(const WeightFunction& sigma, const WeightFunction& tau,
                                      const ConjOptions& opt) {
  GuardReport rep;

  // (a) sequence criterion: the upper conjugate of associated weights is
  // well-defined iff N triangle-below M.
  auto m_seq = sigma.backing_sequence();
  auto n_seq = tau.backing_sequence();
  if (m_seq && n_seq) {
    rep.seq_triangle = relation(*n_seq, *m_seq, SeqRelation::Triangle);
    rep.seq_triangle.witness.what =
        "sequence prong: tau-sequence triangle-below sigma-sequence; " + rep.seq_triangle.witness.what;
  } else {
    rep.seq_triangle = Verdict::make(
        State::Inconclusive, {"sequence prong skipped: factors are not both sequence-backed"}, "", 0.0);
  }

  // (b) growth scan: exists C such that for every H, sup_t sigma(Ht) - C tau(t)
  // stays bounded.
  {
    const double hi_all = std::min({1e8, sigma.horizon(), tau.horizon()});
    Verdict best = Verdict::make(State::Fails, {"no C on the grid bounds sigma(Ht) - C tau(t)"}, "", 0.0);
    bool any_holds = false, all_fail = true;
    double witness_C = kNaN, witness_H = kNaN;
    for (double C : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
      bool c_ok = true, c_inconclusive = false;
      double h_bad = kNaN;
      for (double H : {2.0, 4.0, 8.0, 16.0, 64.0, 256.0}) {
        const double t_hi = hi_all / (H * 1.0000001);
        if (t_hi < 16.0) continue;
        const auto grid = log_grid(2.0, t_hi, 160);
        std::vector<double> stat;
        stat.reserve(grid.size());
        for (double t : grid) stat.push_back(sigma(H * t) - C * tau(t));
        Verdict v = verdict_bounded_above(tail_window(stat), 1e-3, "", "sigma(Ht) - C tau(t)");
        if (v.fails()) {
          c_ok = false;
          h_bad = H;
          break;
        }
        if (v.inconclusive()) c_inconclusive = true;
      }
      if (c_ok && !c_inconclusive) {
        any_holds = true;
        witness_C = C;
        break;
      }
      if (c_ok && c_inconclusive) all_fail = false;
      if (!c_ok) witness_H = h_bad;
    }
    if (any_holds) {
      rep.growth_scan =
          Verdict::make(State::Holds, {"growth prong: sigma(Ht) <= C tau(t) + D_H", witness_C, kNaN},
                        "C,H geometric grids", 0.0);
    } else if (all_fail) {
      rep.growth_scan = Verdict::make(
          State::Fails, {"growth prong: every scanned C diverges at some H", witness_H, kNaN},
          "C,H geometric grids", 0.0);
    } else {
      rep.growth_scan =
          Verdict::make(State::Inconclusive, {"growth prong: scan inconclusive"}, "C,H grids", 0.0);
    }
  }

  // (c) direct boundedness of s -> sigma(s) - tau(s/t) at probe t values.
  {
    State worst = State::Holds;
    Witness w{"direct prong: sigma(s) - tau(s/t) bounded above at probe t", kNaN, kNaN};
    for (double t : {2.0, 10.0, 100.0}) {
      double s_hi = std::min(opt.s_max, 1e10);
      if (!std::isinf(sigma.horizon())) s_hi = std::min(s_hi, sigma.horizon());
      if (!std::isinf(tau.horizon())) s_hi = std::min(s_hi, t * tau.horizon());
      if (s_hi < 100.0) continue;
      const auto grid = log_grid(1.0, s_hi, 200);
      std::vector<double> stat;
      stat.reserve(grid.size());
      for (double sv : grid) stat.push_back(sigma(sv) - tau(sv / t));
      Verdict v = verdict_bounded_above(tail_window(stat), 1e-3, "", "sigma(s) - tau(s/t)");
      if (v.fails()) {
        worst = State::Fails;
        w.index = t;
        w.value = v.witness.value;
        break;
      }
      if (v.inconclusive() && worst == State::Holds) worst = State::Inconclusive;
    }
    rep.direct_bound = Verdict::make(worst, w, "probe t in {2, 10, 100}", 0.0);
  }

  // combine: any prong holding suffices; otherwise any failing prong decides
  const Verdict* prongs[3] = {&rep.seq_triangle, &rep.growth_scan, &rep.direct_bound};
  const Verdict* held = nullptr;
  const Verdict* failed = nullptr;
  for (const Verdict* p : prongs) {
    if (p->holds() && !held) held = p;
    if (p->fails() && !failed) failed = p;
  }
  if (held) {
    rep.overall = *held;
  } else if (failed) {
    rep.overall = *failed;
  } else {
    rep.overall = Verdict::make(State::Inconclusive, {"all guard prongs inconclusive"}, "", 0.0);
  }
  return rep;
}

Verdict well_defined_guard(const WeightFunction& sigma, const WeightFunction& tau,
                           const ConjOptions& opt) {
  return well_defined_guard_report(sigma, tau, opt).overall;
}

EnvelopePoint lower_envelope_at(const std::function<double(double)>& h, double t, double u_min,
                                double u_max, const ScanOptions& opt) {
  Objective obj;
  obj.f = [&h, t](double y) { return h(std::exp(y)) + t * std::exp(y); };
  ScanResult r = minimize_scan(obj, std::log(u_min), std::log(u_max), opt);
  EnvelopePoint p;
  p.t = t;
  p.value = r.value;
  p.arg = std::exp(r.arg);
  p.at_edge = r.at_left_edge || r.at_right_edge;
  return p;
}

EnvelopePoint upper_envelope_at(const std::function<double(double)>& h, double t, double s_min,
                                double s_max, const ScanOptions& opt) {
  Objective obj;
  obj.f = [&h, t](double y) { return h(std::exp(y)) - t * std::exp(y); };
  ScanResult r = maximize_scan(obj, std::log(s_min), std::log(s_max), opt);
  EnvelopePoint p;
  p.t = t;
  p.value = r.value;
  p.arg = std::exp(r.arg);
  p.at_edge = r.at_left_edge || r.at_right_edge;
  // include the s = 0 endpoint of the sup
  const double at0 = h(0.0);
  if (at0 > p.value) {
    p.value = at0;
    p.arg = 0.0;
    p.at_edge = true;
  }
  return p;
}

std::pair<std::vector<EnvelopePoint>, std::vector<EnvelopePoint>> classical_envelopes(
    const std::function<double(double)>& h, const std::vector<double>& t_grid, double u_min,
    double u_max, const ScanOptions& opt) {
  std::vector<EnvelopePoint> lower, upper;
  lower.reserve(t_grid.size());
  upper.reserve(t_grid.size());
  for (double t : t_grid) {
    lower.push_back(lower_envelope_at(h, t, u_min, u_max, opt));
    upper.push_back(upper_envelope_at(h, t, u_min, u_max, opt));
  }
  return {std::move(lower), std::move(upper)};
}

}  // namespace weightlab
