#include "weightlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace weightlab {

namespace {

bool ell_equal(double a, double b) { return nearly_equal(a, b, 1e-9); }

std::string grid_note(const std::vector<double>& ells) {
  std::ostringstream os;
  os << "grid-verified over ell in {";
  for (size_t i = 0; i < ells.size(); ++i) os << (i ? ", " : "") << ells[i];
  os << "}";
  return os.str();
}

}  // namespace

WeightMatrix::WeightMatrix(std::vector<double> ells, std::vector<WeightSequence> rows,
                           Kind provenance, bool order_waived)
    : ells_(std::move(ells)), rows_(std::move(rows)), provenance_(std::move(provenance)),
      order_waived_(order_waived) {
  if (ells_.empty() || ells_.size() != rows_.size())
    throw InvalidArgument("WeightMatrix: ells/rows size mismatch");
  for (double l : ells_)
    if (!(l > 0.0)) throw InvalidArgument("WeightMatrix: ells must be positive");
  if (!std::is_sorted(ells_.begin(), ells_.end()))
    throw InvalidArgument("WeightMatrix: ells must be sorted");
  nominal_p_max_ = 0;
  for (const auto& r : rows_) nominal_p_max_ = std::max(nominal_p_max_, r.p_max());
}

int WeightMatrix::index_of(double ell) const {
  for (size_t i = 0; i < ells_.size(); ++i)
    if (ell_equal(ells_[i], ell)) return static_cast<int>(i);
  return -1;
}

const WeightSequence& WeightMatrix::row_for(double ell) const {
  const int i = index_of(ell);
  if (i < 0) throw InvalidArgument("WeightMatrix: ell not on the grid");
  return rows_[static_cast<size_t>(i)];
}

Verdict WeightMatrix::check_pointwise_order(double tol) const {
  for (size_t i = 0; i + 1 < rows_.size(); ++i) {
    const int pm = std::min(rows_[i].p_max(), rows_[i + 1].p_max());
    for (int p = 0; p <= pm; ++p) {
      if (rows_[i].log_m(p) > rows_[i + 1].log_m(p) + tol) {
        Verdict v = Verdict::make(State::Fails,
                                  {"point-wise order violated between adjacent ells",
                                   static_cast<double>(p), rows_[i].log_m(p) - rows_[i + 1].log_m(p)},
                                  grid_note(ells_), 0.0);
        if (order_waived_) v.warn("order waived for this (quotient) matrix");
        return v;
      }
    }
  }
  return Verdict::make(State::Holds, {"log M^(l1)_p <= log M^(l2)_p for l1 <= l2"}, grid_note(ells_),
                       tol);
}

WeightMatrix assoc_matrix(const WeightFunction& omega, const std::vector<double>& ells, int p_max,
                          const AssocMatrixOptions& opt) {
  if (ells.empty() || p_max < 1) throw InvalidArgument("assoc_matrix: empty grid or bad p_max");
  {
    ConditionOptions copt;
    copt.t_max = std::min(1e8, omega.horizon());
    ConditionReport rep = check_conditions(omega, copt);
    if (rep.omega0.fails() || rep.omega3.fails())
      throw PreconditionError("assoc_matrix: omega fails (omega_0) or (omega_3)");
  }
  std::vector<double> sorted = ells;
  std::sort(sorted.begin(), sorted.end());

  PhiStar ps = phi_star(omega, opt.phi);
  std::vector<WeightSequence> rows;
  rows.reserve(sorted.size());
  for (double ell : sorted) {
    std::vector<double> log_w;
    log_w.reserve(static_cast<size_t>(p_max) + 1);
    for (int p = 0; p <= p_max; ++p) {
      try {
        log_w.push_back(ps(ell * p) / ell);
      } catch (const HorizonError&) {
        break;  // row truncated; effective p_max recorded by its length
      }
    }
    if (log_w.size() < 2)
      throw HorizonError("assoc_matrix: row empty before the phi* horizon; enlarge the base weight");
    rows.emplace_back(std::move(log_w));
  }
  Kind prov{"assoc_matrix", {static_cast<double>(p_max)}, {omega.kind()}, nullptr};
  return WeightMatrix(std::move(sorted), std::move(rows), std::move(prov));
}

namespace {

// worst (mg) defect per total degree d, left row vs right row
std::vector<double> mg_defect_profile(const WeightSequence& left, const WeightSequence& right) {
  const int n = std::min(left.p_max(), right.p_max());
  std::vector<double> defect;
  defect.reserve(static_cast<size_t>(n));
  for (int d = 1; d <= n; ++d) {
    double worst = -kInf;
    for (int p = 0; 2 * p <= d; ++p)
      worst = std::max(worst, (left.log_m(d) - right.log_m(p) - right.log_m(d - p)) / (d + 1));
    defect.push_back(worst);
  }
  return defect;
}

}  // namespace

double sharp_mg_defect(const WeightMatrix& m) {
  double defect = -kInf;
  bool any = false;
  for (int i = 0; i < m.size(); ++i) {
    const int j = m.index_of(2.0 * m.ells()[static_cast<size_t>(i)]);
    if (j < 0) continue;
    any = true;
    const auto& a = m.row(i);
    const auto& b = m.row(j);
    const int n = std::min(a.p_max(), b.p_max());
    for (int d = 0; d <= n; ++d)
      for (int p = 0; 2 * p <= d; ++p)
        defect = std::max(defect, a.log_m(d) - b.log_m(p) - b.log_m(d - p));
  }
  if (!any) throw InvalidArgument("sharp_mg_defect: no (ell, 2 ell) pair on the grid");
  return defect;
}

Verdict matrix_mg(const WeightMatrix& m, MatrixFlavor flavor, double margin_tol) {
  const std::string note = grid_note(m.ells());
  Verdict worst = Verdict::make(State::Holds, {"every row has an absorbing partner"}, note, 0.0);
  for (int i = 0; i < m.size(); ++i) {
    bool found = false;
    Verdict last;
    for (int j = 0; j < m.size(); ++j) {
      const bool candidate = flavor == MatrixFlavor::Roumieu
                                 ? m.ells()[static_cast<size_t>(j)] >= m.ells()[static_cast<size_t>(i)]
                                 : m.ells()[static_cast<size_t>(j)] <= m.ells()[static_cast<size_t>(i)];
      if (!candidate) continue;
      // Roumieu: the base row's coefficients are bounded by partner products;
      // Beurling: a (smaller) partner row is bounded by base products.
      const WeightSequence& left = flavor == MatrixFlavor::Roumieu ? m.row(i) : m.row(j);
      const WeightSequence& right = flavor == MatrixFlavor::Roumieu ? m.row(j) : m.row(i);
      auto defect = mg_defect_profile(left, right);
      last = verdict_bounded_above(tail_window(defect), margin_tol, note, "(mg) defect");
      if (last.holds()) {
        found = true;
        break;
      }
    }
    if (!found) {
      Verdict v = last;
      v.state = State::Fails;
      v.witness.what = "no partner row absorbs the (mg) defect; " + v.witness.what;
      v.witness.index = m.ells()[static_cast<size_t>(i)];
      v.window = note;
      return v;
    }
  }
  // sharp form for associated matrices, exact when 2 ell is on the grid
  if (m.provenance().op == "assoc_matrix") {
    try {
      const double defect = sharp_mg_defect(m);
      worst.witness.what = "sharp form W^(l)_{p+q} <= W^(2l)_p W^(2l)_q, max log defect attached";
      worst.witness.value = defect;
      if (defect > 1e-9) {
        worst.state = State::Fails;
        worst.margin = defect;
      }
    } catch (const InvalidArgument&) {
      worst.warn("sharp form skipped: no (ell, 2 ell) pair on the grid");
    }
  }
  return worst;
}

Verdict matrix_L(const WeightMatrix& m, MatrixFlavor flavor, double margin_tol) {
  const std::string note = grid_note(m.ells());
  for (double h : {2.0, 4.0, 8.0}) {
    const double logh = std::log(h);
    for (int i = 0; i < m.size(); ++i) {
      bool found = false;
      for (int j = 0; j < m.size(); ++j) {
        const bool candidate = flavor == MatrixFlavor::Roumieu
                                   ? m.ells()[static_cast<size_t>(j)] >= m.ells()[static_cast<size_t>(i)]
                                   : m.ells()[static_cast<size_t>(j)] <= m.ells()[static_cast<size_t>(i)];
        if (!candidate || j == i) continue;
        const WeightSequence& left = flavor == MatrixFlavor::Roumieu ? m.row(i) : m.row(j);
        const WeightSequence& right = flavor == MatrixFlavor::Roumieu ? m.row(j) : m.row(i);
        const int n = std::min(left.p_max(), right.p_max());
        std::vector<double> stat;
        stat.reserve(static_cast<size_t>(n) + 1);
        for (int p = 0; p <= n; ++p) stat.push_back(p * logh + left.log_m(p) - right.log_m(p));
        Verdict v = verdict_bounded_above(tail_window(stat), margin_tol, note, "h^p absorption defect");
        if (v.holds()) {
          found = true;
          break;
        }
      }
      if (!found) {
        return Verdict::make(State::Fails,
                             {"no partner row absorbs h^p", m.ells()[static_cast<size_t>(i)], h}, note,
                             0.0);
      }
    }
  }
  return Verdict::make(State::Holds, {"h^p absorbed for h in {2,4,8} at every ell"}, note, 0.0);
}

Verdict matrix_relation(const WeightMatrix& m, const WeightMatrix& n, MatrixRelation kind,
                        double margin_tol) {
  const std::string note = grid_note(m.ells()) + " x " + grid_note(n.ells());

  auto pair_rel = [&](const WeightSequence& a, const WeightSequence& b, SeqRelation r) {
    return relation(a, b, r, margin_tol);
  };

  switch (kind) {
    case MatrixRelation::RoumieuPreceq: {
      // for all a (rows of m) exists b (rows of n): M^(a) preceq N^(b)
      for (int a = 0; a < m.size(); ++a) {
        bool ok = false;
        for (int b = 0; b < n.size(); ++b) {
          if (pair_rel(m.row(a), n.row(b), SeqRelation::Preceq).holds()) {
            ok = true;
            break;
          }
        }
        if (!ok)
          return Verdict::make(State::Fails,
                               {"no partner row for M^(a)", m.ells()[static_cast<size_t>(a)]}, note, 0.0);
      }
      return Verdict::make(State::Holds, {"forall a exists b: M^(a) preceq N^(b)"}, note, 0.0);
    }
    case MatrixRelation::BeurlingPreceq: {
      // for all a (rows of n) exists b (rows of m): M^(b) preceq N^(a)
      for (int a = 0; a < n.size(); ++a) {
        bool ok = false;
        for (int b = 0; b < m.size(); ++b) {
          if (pair_rel(m.row(b), n.row(a), SeqRelation::Preceq).holds()) {
            ok = true;
            break;
          }
        }
        if (!ok)
          return Verdict::make(State::Fails,
                               {"no partner row for N^(a)", n.ells()[static_cast<size_t>(a)]}, note, 0.0);
      }
      return Verdict::make(State::Holds, {"forall a exists b: M^(b) preceq N^(a)"}, note, 0.0);
    }
    case MatrixRelation::Triangle: {
      State worst = State::Holds;
      Witness w{"M^(a) triangle N^(b) for all grid pairs"};
      for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < n.size(); ++j) {
          const Verdict v = pair_rel(m.row(i), n.row(j), SeqRelation::Triangle);
          if (v.fails())
            return Verdict::make(State::Fails,
                                 {"pair (a, b) fails triangle: " + v.witness.what,
                                  m.ells()[static_cast<size_t>(i)], n.ells()[static_cast<size_t>(j)]},
                                 note, v.margin);
          if (v.inconclusive()) worst = State::Inconclusive;
        }
      }
      return Verdict::make(worst, w, note, 0.0);
    }
    case MatrixRelation::Mixed: {
      // exists k0 (row of n) such that N^(k0) preceq M^(ell) for every ell
      for (int k0 = 0; k0 < n.size(); ++k0) {
        bool all = true;
        for (int i = 0; i < m.size(); ++i) {
          if (!pair_rel(n.row(k0), m.row(i), SeqRelation::Preceq).holds()) {
            all = false;
            break;
          }
        }
        if (all)
          return Verdict::make(State::Holds,
                               {"witness k0 with N^(k0) preceq M^(ell) for all ell",
                                n.ells()[static_cast<size_t>(k0)]},
                               note, 0.0);
      }
      return Verdict::make(State::Fails, {"no k0 on the grid works"}, note, 0.0);
    }
  }
  return Verdict::make(State::Inconclusive, {"unreachable"}, note, 0.0);
}

Verdict is_constant(const WeightMatrix& m, double margin_tol) {
  const std::string note = grid_note(m.ells());
  if (m.size() == 1)
    return Verdict::make(State::Holds, {"single-row matrix is constant vacuously"}, note, 0.0);
  State worst = State::Holds;
  for (int i = 0; i + 1 < m.size(); ++i) {
    Verdict v = relation(m.row(i), m.row(i + 1), SeqRelation::Equiv, margin_tol);
    if (v.fails()) {
      Verdict out = Verdict::make(State::Fails,
                                  {"adjacent rows not equivalent: " + v.witness.what,
                                   m.ells()[static_cast<size_t>(i)], m.ells()[static_cast<size_t>(i + 1)]},
                                  note, v.margin);
      return out;
    }
    if (v.inconclusive()) worst = State::Inconclusive;
  }
  Verdict out = Verdict::make(worst, {"all adjacent row pairs equivalent"}, note, 0.0);
  // doubling-absorption criterion: exists ell > 2 ell1 with W^(ell) preceq W^(ell1)
  bool criterion = false;
  for (int i = 0; i < m.size() && !criterion; ++i)
    for (int j = 0; j < m.size(); ++j) {
      if (m.ells()[static_cast<size_t>(j)] > 2.0 * m.ells()[static_cast<size_t>(i)] &&
          relation(m.row(j), m.row(i), SeqRelation::Preceq, margin_tol).holds()) {
        criterion = true;
        break;
      }
    }
  out.warn(std::string("doubling-absorption criterion (exists ell > 2 ell1: W^(ell) preceq W^(ell1)): ") +
           (criterion ? "met" : "not met on the grid"));
  if ((worst == State::Holds) != criterion) {
    out.state = State::Inconclusive;
    out.warn("equivalence scan and absorption criterion disagree");
  }
  return out;
}

namespace {

// rows aligned over the intersection of the ell grids
void align_grids(const WeightMatrix& m, const WeightMatrix& n, std::vector<double>* ells,
                 std::vector<int>* mi, std::vector<int>* ni) {
  for (int i = 0; i < m.size(); ++i) {
    const int j = n.index_of(m.ells()[static_cast<size_t>(i)]);
    if (j >= 0) {
      ells->push_back(m.ells()[static_cast<size_t>(i)]);
      mi->push_back(i);
      ni->push_back(j);
    }
  }
  if (ells->empty()) throw InvalidArgument("matrix algebra: ell grids do not intersect");
}

WeightSequence truncate_to(const WeightSequence& s, int p_max) {
  return s.p_max() == p_max ? s : s.truncated(p_max);
}

}  // namespace

WeightMatrix matrix_product(const WeightMatrix& m, const WeightMatrix& n) {
  std::vector<double> ells;
  std::vector<int> mi, ni;
  align_grids(m, n, &ells, &mi, &ni);
  std::vector<WeightSequence> rows;
  rows.reserve(ells.size());
  for (size_t k = 0; k < ells.size(); ++k) {
    const auto& a = m.row(mi[k]);
    const auto& b = n.row(ni[k]);
    const int pm = std::min(a.p_max(), b.p_max());
    rows.push_back(pointwise_product(truncate_to(a, pm), truncate_to(b, pm)));
  }
  Kind prov{"matrix_product", {}, {m.provenance(), n.provenance()}, nullptr};
  return WeightMatrix(std::move(ells), std::move(rows), std::move(prov));
}

WeightMatrix matrix_quotient(const WeightMatrix& m, const WeightMatrix& n) {
  std::vector<double> ells;
  std::vector<int> mi, ni;
  align_grids(m, n, &ells, &mi, &ni);
  std::vector<WeightSequence> raw, reg;
  raw.reserve(ells.size());
  reg.reserve(ells.size());
  for (size_t k = 0; k < ells.size(); ++k) {
    const auto& a = m.row(mi[k]);
    const auto& b = n.row(ni[k]);
    const int pm = std::min(a.p_max(), b.p_max());
    WeightSequence q = pointwise_quotient(truncate_to(a, pm), truncate_to(b, pm));
    reg.push_back(log_convex_minorant(q));
    raw.push_back(std::move(q));
  }
  Kind prov{"matrix_quotient", {}, {m.provenance(), n.provenance()}, nullptr};
  WeightMatrix out(std::move(ells), std::move(raw), std::move(prov), /*order_waived=*/true);
  out.set_regularized(std::move(reg));
  if (!matrix_relation(n, m, MatrixRelation::Triangle).holds()) out.mark_degenerate();
  return out;
}

WeightMatrix gevrey_quotient(const WeightMatrix& m, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("gevrey_quotient: alpha must be positive");
  std::vector<WeightSequence> raw, reg;
  raw.reserve(static_cast<size_t>(m.size()));
  reg.reserve(static_cast<size_t>(m.size()));
  bool degenerate = false;
  for (int i = 0; i < m.size(); ++i) {
    const auto& a = m.row(i);
    const WeightSequence g = WeightSequence::gevrey(alpha, a.p_max());
    WeightSequence q = pointwise_quotient(a, g);
    if (!relation(g, a, SeqRelation::Triangle).holds()) degenerate = true;
    reg.push_back(log_convex_minorant(q));
    raw.push_back(std::move(q));
  }
  Kind prov{"gevrey_quotient", {alpha}, {m.provenance()}, nullptr};
  WeightMatrix out(m.ells(), std::move(raw), std::move(prov), /*order_waived=*/true);
  out.set_regularized(std::move(reg));
  if (degenerate) out.mark_degenerate();
  return out;
}

Verdict quotient_sequence_identity(const WeightMatrix& m, double ell, int c, double tol) {
  if (c < 1) throw InvalidArgument("quotient_sequence_identity: c must be >= 1");
  const int i_base = m.index_of(ell);
  const int i_up = m.index_of(static_cast<double>(c) * ell);
  if (i_base < 0 || i_up < 0)
    throw InvalidArgument("quotient_sequence_identity: ell or c*ell missing from the grid");
  const WeightSequence& base = m.row(i_base);
  const WeightSequence& up = m.row(i_up);

  std::ostringstream win;
  win << "ell=" << ell << ", c=" << c << ", p up to " << std::min(up.p_max(), base.p_max() / c);

  double worst = 0.0;
  int worst_p = -1;
  for (int p = 1; p <= up.p_max() && c * p <= base.p_max(); ++p) {
    double rhs = 0.0;
    for (int i = 1; i <= c; ++i) rhs += base.log_mu(c * (p - 1) + i);
    rhs /= c;
    const double diff = std::fabs(up.log_mu(p) - rhs);
    if (diff > worst) {
      worst = diff;
      worst_p = p;
    }
  }
  // dual identity through the ell/c row, when present
  const int i_down = m.index_of(ell / c);
  bool dual_checked = false;
  if (i_down >= 0 && c > 1) {
    const WeightSequence& down = m.row(i_down);
    dual_checked = true;
    for (int p = 1; p <= base.p_max() && c * p <= down.p_max(); ++p) {
      double rhs = 0.0;
      for (int i = 0; i < c; ++i) rhs += down.log_mu(c * p - i);
      rhs /= c;
      const double diff = std::fabs(base.log_mu(p) - rhs);
      if (diff > worst) {
        worst = diff;
        worst_p = p;
      }
    }
  }
  Verdict v = Verdict::make(worst <= tol ? State::Holds : State::Fails,
                            {"max |log theta identity defect|", static_cast<double>(worst_p), worst},
                            win.str(), tol - worst);
  if (!dual_checked) v.warn("dual identity skipped: ell/c not on the grid");
  return v;
}

}  // namespace weightlab
