#ifndef WEIGHTLAB_MATRIX_HPP
#define WEIGHTLAB_MATRIX_HPP

#include <optional>
#include <vector>

#include "weightlab/sequence.hpp"
#include "weightlab/verdict.hpp"
#include "weightlab/weight_function.hpp"

namespace weightlab {

/// A family ell -> WeightSequence over a finite grid of positive indices.
/// Quantifiers over "all ell > 0" are interpreted over this grid; every
/// verdict carries a grid-coverage note.
///
/// Rows built from phi* may be truncated at the horizon; matrix-level checks
/// quantify only over p where all touched rows are defined.
class WeightMatrix {
 public:
  WeightMatrix(std::vector<double> ells, std::vector<WeightSequence> rows, Kind provenance,
               bool order_waived = false);

  const std::vector<double>& ells() const { return ells_; }
  int size() const { return static_cast<int>(ells_.size()); }
  const WeightSequence& row(int i) const { return rows_[static_cast<size_t>(i)]; }
  const WeightSequence& row_for(double ell) const;
  int index_of(double ell) const;  // -1 when absent
  const Kind& provenance() const { return provenance_; }

  int nominal_p_max() const { return nominal_p_max_; }
  bool order_waived() const { return order_waived_; }
  bool degenerate() const { return degenerate_; }
  void mark_degenerate() { degenerate_ = true; }

  /// Quotient matrices carry log-convex regularized rows next to the raw ones.
  const std::optional<std::vector<WeightSequence>>& regularized() const { return regularized_; }
  void set_regularized(std::vector<WeightSequence> rows) { regularized_ = std::move(rows); }

  /// Point-wise row order across the ell grid (may legitimately fail for
  /// quotient matrices, where it is waived and flagged).
  Verdict check_pointwise_order(double tol = 1e-10) const;

 private:
  std::vector<double> ells_;
  std::vector<WeightSequence> rows_;
  Kind provenance_;
  int nominal_p_max_ = 0;
  bool order_waived_ = false;
  bool degenerate_ = false;
  std::optional<std::vector<WeightSequence>> regularized_;
};

struct AssocMatrixOptions {
  PhiStarOptions phi;
  bool check_rows = true;  // attach LC verdicts / order checks
};

/// Associated weight matrix of omega: log W^(ell)_p = phi*(ell p) / ell.
/// Rows share one phi* sampling, so the quotient-sequence identities hold to
/// rounding. Rows are truncated where phi* hits its horizon.
/// Precondition: the (omega_0) and (omega_3) verdicts of omega must not fail.
WeightMatrix assoc_matrix(const WeightFunction& omega, const std::vector<double>& ells, int p_max,
                          const AssocMatrixOptions& opt = {});

enum class MatrixFlavor { Roumieu, Beurling };

/// Matrix moderate growth: each row has a partner row absorbing the
/// (mg)-defect (larger partner for Roumieu, smaller for Beurling). For
/// associated matrices the sharp form W^(ell)_{p+q} <= W^(2ell)_p W^(2ell)_q
/// is additionally verified exactly whenever 2 ell is on the grid.
Verdict matrix_mg(const WeightMatrix& m, MatrixFlavor flavor, double margin_tol = 1e-3);

/// Sharp moderate-growth defect: max over rows (with 2 ell on the grid) and
/// all p + q of log W^(ell)_{p+q} - log W^(2ell)_p - log W^(2ell)_q.
double sharp_mg_defect(const WeightMatrix& m);

/// Matrix condition (L): h^p absorbed by moving to a partner row, scanned at
/// h in {2, 4, 8}.
Verdict matrix_L(const WeightMatrix& m, MatrixFlavor flavor, double margin_tol = 1e-3);

enum class MatrixRelation { RoumieuPreceq, BeurlingPreceq, Triangle, Mixed };

/// Quantifier alternation over the finite ell grids:
///   roumieu_preceq: for all a exists b: M^(a) preceq N^(b)
///   beurling_preceq: for all a exists b: M^(b) preceq N^(a)
///   triangle:       for all a, b: M^(a) triangle N^(b)
///   mixed:          exists k0 (row of N) for all ell: N^(k0) preceq M^(ell)
Verdict matrix_relation(const WeightMatrix& m, const WeightMatrix& n, MatrixRelation kind,
                        double margin_tol = 1e-3);

/// Constancy: every pair of rows equivalent. Cross-checked against the
/// doubling-absorption criterion "exists ell > 2 ell1 with
/// W^(ell) preceq W^(ell1)" on the grid.
Verdict is_constant(const WeightMatrix& m, double margin_tol = 1e-3);

WeightMatrix matrix_product(const WeightMatrix& m, const WeightMatrix& n);

/// Row-wise quotient; rows are post-processed by log_convex_minorant into the
/// regularized matrix. When the triangle relation n < m fails, the output is
/// flagged degenerate.
WeightMatrix matrix_quotient(const WeightMatrix& m, const WeightMatrix& n);

/// Quotient by a fixed Gevrey sequence.
WeightMatrix gevrey_quotient(const WeightMatrix& m, double alpha);

/// The quotient-sequence identity of associated matrices:
///   theta^(c ell)_p = (theta^(ell)_{c(p-1)+1} ... theta^(ell)_{cp})^{1/c},
/// together with its dual for ell/c when that row is on the grid. Verified in
/// log domain to 1e-9 absolute.
Verdict quotient_sequence_identity(const WeightMatrix& m, double ell, int c, double tol = 1e-9);

}  // namespace weightlab

#endif  // WEIGHTLAB_MATRIX_HPP
