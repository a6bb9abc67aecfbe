#include "weightlab/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace weightlab {

double golden_max(const std::function<double(double)>& f, double a, double b, int iters,
                  double* arg) {
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && d - c > 0.0; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double x = fc > fd ? c : d;
  if (arg) *arg = x;
  return std::max(fc, fd);
}

ScanResult maximize_scan(const Objective& obj, double lo, double hi, const ScanOptions& opt) {
  ScanResult r;
  if (!(hi >= lo)) throw InvalidArgument("maximize_scan: empty window");
  if (hi == lo) {
    r.arg = lo;
    r.value = obj.f(lo);
    r.at_left_edge = r.at_right_edge = true;
    return r;
  }
  const int n = std::max(opt.coarse_points, 8);
  const double step = (hi - lo) / n;
  std::vector<double> xs(static_cast<size_t>(n) + 1), vs(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    xs[static_cast<size_t>(i)] = (i == n) ? hi : lo + step * i;
    vs[static_cast<size_t>(i)] = obj.f(xs[static_cast<size_t>(i)]);
  }

  // candidate cells: the indices with the largest sampled values
  std::vector<int> order(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) order[static_cast<size_t>(i)] = i;
  std::partial_sort(order.begin(), order.begin() + std::min<size_t>(order.size(), static_cast<size_t>(opt.top_cells)),
                    order.end(), [&](int a, int b) { return vs[static_cast<size_t>(a)] > vs[static_cast<size_t>(b)]; });

  r.arg = xs[static_cast<size_t>(order[0])];
  r.value = vs[static_cast<size_t>(order[0])];

  const int cells = std::min(opt.top_cells, n + 1);
  for (int k = 0; k < cells; ++k) {
    const int i = order[static_cast<size_t>(k)];
    const double a = xs[static_cast<size_t>(std::max(0, i - 1))];
    const double b = xs[static_cast<size_t>(std::min(n, i + 1))];
    double garg = kNaN;
    const double gval = golden_max(obj.f, a, b, opt.golden_iters, &garg);
    if (gval > r.value) {
      r.value = gval;
      r.arg = garg;
    }
    if (obj.kinks) {
      for (double x : obj.kinks(a, b)) {
        if (x < lo || x > hi) continue;
        const double v = obj.f(x);
        if (v > r.value) {
          r.value = v;
          r.arg = x;
        }
      }
    }
  }

  r.at_left_edge = r.arg <= lo + step * 1e-9;
  r.at_right_edge = r.arg >= hi - step * 1e-9;
  r.rising_at_right = vs[static_cast<size_t>(n)] > vs[static_cast<size_t>(n - 1)] + 1e-12 &&
                      vs[static_cast<size_t>(n)] >= r.value - 1e-12;
  return r;
}

ScanResult minimize_scan(const Objective& obj, double lo, double hi, const ScanOptions& opt) {
  Objective neg;
  neg.f = [&obj](double x) { return -obj.f(x); };
  neg.kinks = obj.kinks;
  ScanResult r = maximize_scan(neg, lo, hi, opt);
  r.value = -r.value;
  return r;
}

}  // namespace weightlab
