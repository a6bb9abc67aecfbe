#ifndef WEIGHTLAB_OPTIMIZE_HPP
#define WEIGHTLAB_OPTIMIZE_HPP

#include <functional>
#include <vector>

#include "weightlab/common.hpp"

namespace weightlab {

// Grid-first scalar optimization. The objectives here (conjugate integrands,
// Legendre objectives) are not guaranteed unimodal: a coarse scan localizes
// candidate cells, golden-section sharpens inside them, and piecewise-linear
// objectives get an exact polish by probing their kinks inside the final
// bracket.

struct ScanOptions {
  int coarse_points = 256;
  int golden_iters = 40;
  int top_cells = 6;  // number of best coarse cells refined for non-unimodal objectives
};

struct ScanResult {
  double arg = kNaN;
  double value = -kInf;
  bool at_left_edge = false;
  bool at_right_edge = false;
  bool rising_at_right = false;  // objective still improving at the right window edge
};

/// Objective on a closed interval [lo, hi]. `kinks(a, b)` returns abscissae
/// in [a, b] where the objective has slope breaks; empty when smooth or
/// unknown.
struct Objective {
  std::function<double(double)> f;
  std::function<std::vector<double>(double, double)> kinks;  // may be null
};

ScanResult maximize_scan(const Objective& obj, double lo, double hi, const ScanOptions& opt = {});
ScanResult minimize_scan(const Objective& obj, double lo, double hi, const ScanOptions& opt = {});

/// Plain golden-section maximum of f on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b, int iters,
                  double* arg = nullptr);

}  // namespace weightlab

#endif  // WEIGHTLAB_OPTIMIZE_HPP
