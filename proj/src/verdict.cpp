#include "weightlab/verdict.hpp"

#include <algorithm>
#include <sstream>

namespace weightlab {

const char* to_string(State s) {
  switch (s) {
    case State::Holds:
      return "Holds";
    case State::Fails:
      return "Fails";
    default:
      return "Inconclusive";
  }
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw InvalidArgument("log_grid: need 0 < lo < hi, n >= 2");
  std::vector<double> g(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (!(hi >= lo) || n < 2) throw InvalidArgument("linear_grid: need lo <= hi, n >= 2");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  g.front() = lo;
  g.back() = hi;
  return g;
}

TailTrend analyze_tail(const std::vector<double>& stat, double jitter) {
  TailTrend t;
  if (stat.empty()) return t;
  t.last = stat.back();
  for (size_t i = 0; i < stat.size(); ++i) {
    if (stat[i] > t.sup) {
      t.sup = stat[i];
      t.argmax = static_cast<int>(i);
    }
  }
  size_t q0 = stat.size() - std::max<size_t>(stat.size() / 4, std::min<size_t>(stat.size(), 3));
  t.drift = stat.back() - stat[q0];
  t.monotone_up = true;
  t.monotone_down = true;
  for (size_t i = q0 + 1; i < stat.size(); ++i) {
    const double d = stat[i] - stat[i - 1];
    if (d < -jitter) t.monotone_up = false;
    if (d > jitter) t.monotone_down = false;
  }
  return t;
}

std::vector<double> tail_window(const std::vector<double>& full) {
  if (full.size() < 4) return full;
  return std::vector<double>(full.begin() + full.size() / 2, full.end());
}

namespace {

std::string describe(const std::string& label, const TailTrend& t) {
  std::ostringstream os;
  os << label << " (sup=" << t.sup << ", last=" << t.last << ", quarter-drift=" << t.drift << ")";
  return os.str();
}

}  // namespace

Verdict verdict_bounded_above(const std::vector<double>& stat, double tol,
                              const std::string& window, const std::string& label) {
  if (stat.size() < 4)
    return Verdict::make(State::Inconclusive, {label + ": window too small"}, window, 0.0);
  const TailTrend t = analyze_tail(stat);
  Witness w{describe(label, t), static_cast<double>(t.argmax), t.sup};
  if (t.monotone_up && t.drift > tol) return Verdict::make(State::Fails, w, window, t.drift);
  if (t.drift <= tol) return Verdict::make(State::Holds, w, window, tol - std::max(0.0, t.drift));
  return Verdict::make(State::Inconclusive, w, window, t.drift);
}

Verdict verdict_decreases_unboundedly(const std::vector<double>& stat, double tol,
                                      const std::string& window, const std::string& label) {
  if (stat.size() < 4)
    return Verdict::make(State::Inconclusive, {label + ": window too small"}, window, 0.0);
  const TailTrend t = analyze_tail(stat);
  Witness w{describe(label, t), static_cast<double>(stat.size()) - 1, t.last};
  if (t.monotone_down && t.drift < -tol) return Verdict::make(State::Holds, w, window, -t.drift);
  if (std::fabs(t.drift) <= tol)
    return Verdict::make(State::Fails, w, window, std::fabs(t.drift));  // stalled at a level
  if (t.monotone_up && t.drift > tol) return Verdict::make(State::Fails, w, window, t.drift);
  return Verdict::make(State::Inconclusive, w, window, t.drift);
}

Verdict verdict_increases_unboundedly(const std::vector<double>& stat, double tol,
                                      const std::string& window, const std::string& label) {
  if (stat.size() < 4)
    return Verdict::make(State::Inconclusive, {label + ": window too small"}, window, 0.0);
  const TailTrend t = analyze_tail(stat);
  Witness w{describe(label, t), static_cast<double>(stat.size()) - 1, t.last};
  if (t.monotone_up && t.drift > tol) return Verdict::make(State::Holds, w, window, t.drift);
  if (std::fabs(t.drift) <= tol) return Verdict::make(State::Fails, w, window, std::fabs(t.drift));
  if (t.monotone_down && t.drift < -tol) return Verdict::make(State::Fails, w, window, -t.drift);
  return Verdict::make(State::Inconclusive, w, window, t.drift);
}

}  // namespace weightlab
