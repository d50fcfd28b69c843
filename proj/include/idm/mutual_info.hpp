#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "idm/simplex.hpp"

namespace idm {

/// A d1 x d2 contingency table of non-negative (possibly fractional) counts,
/// stored row-major, with cached marginals.
class ContingencyCounts {
public:
  ContingencyCounts(std::size_t rows, std::size_t cols, std::vector<double> cells);
  explicit ContingencyCounts(const std::vector<std::vector<double>>& table);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t cells() const noexcept { return cells_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
  std::span<const double> values() const noexcept { return cells_; }
  std::span<const double> row_sums() const noexcept { return row_sums_; }
  std::span<const double> col_sums() const noexcept { return col_sums_; }
  double total() const noexcept { return total_; }

  ContingencyCounts transposed() const;

  CountVector joint_counts() const { return CountVector(cells_); }
  CountVector row_counts() const { return CountVector(row_sums_); }
  CountVector col_counts() const { return CountVector(col_sums_); }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> cells_;
  std::vector<double> row_sums_;
  std::vector<double> col_sums_;
  double total_ = 0.0;
};

using Cell = std::pair<std::size_t, std::size_t>;

struct MiBounds {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double i0 = 0.0;
  double sigma = 0.0;
  /// Row-major per-cell remainder bounds.
  std::vector<double> r_ub_per_ij;
  std::vector<double> r_lb_per_ij;
  double r_ub = 0.0;
  double r_lb = 0.0;
  double inner_upper = 0.0;
  double inner_lower = 0.0;
  Cell cell1;
  Cell cell2;
  Interval crude;

  Interval conservative() const { return Interval(i0 + r_lb, i0 + r_ub); }
  Interval inner() const { return Interval(inner_lower, inner_upper); }
  bool sandwich_holds(double tol = 1e-12) const;
};

/// Expected mutual information under the Dirichlet posterior with hyperparameter
/// t over cells: sum_i h(u_i+) + sum_j h(u_+j) - sum_ij h(u_ij), kernel n + s.
double expected_mi(const ContingencyCounts& tbl, const IdmConfig& cfg, const SimplexPoint& t);

/// Same, from cell posterior means directly (row-major, any point of the
/// extended simplex).
double expected_mi_at(const ContingencyCounts& tbl, const IdmConfig& cfg,
                      std::span<const double> u_cells);

/// [H_row_lo + H_col_lo - H_joint_hi, H_row_hi + H_col_hi - H_joint_lo] from the
/// exact marginal and joint entropy intervals.
Interval mi_interval_crude(const ContingencyCounts& tbl, const IdmConfig& cfg);

/// First-order bounds with per-cell remainders
///   r_ub_ij = sigma [h'(u_i+^0) + h'(u_+j^0) - h'(u_ij^0 + sigma)]
///   r_lb_ij = sigma [h'(u_i+^0 + sigma) + h'(u_+j^0 + sigma) - h'(u_ij^0)]
/// and inner bounds at the extremal vertex cells (row-major tie-breaking).
MiBounds mi_interval_bounds(const ContingencyCounts& tbl, const IdmConfig& cfg);

/// Leading term of the posterior variance of the mutual information,
///   (1/(n+s)) [sum u_ij L_ij^2 - (sum u_ij L_ij)^2],  L_ij = log(u_ij/(u_i+ u_+j)).
/// Throws std::domain_error for a zero cell mean.
double mi_variance_leading(const ContingencyCounts& tbl, const IdmConfig& cfg,
                           const SimplexPoint& t);

/// Checks the bounds against a lattice over the product hyperparameter set
/// t_ij = v_i w_j: every lattice value must lie in the conservative interval and
/// the lattice extremes must reach the inner bounds.
bool product_idm_check(const ContingencyCounts& tbl, const IdmConfig& cfg, const MiBounds& bounds,
                       int resolution);

}  // namespace idm
