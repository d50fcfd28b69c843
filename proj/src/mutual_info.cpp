#include "idm/mutual_info.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "idm/exact_extrema.hpp"
#include "idm/oracle.hpp"
#include "idm/special_functions.hpp"

namespace idm {
namespace {

std::vector<double> flatten(const std::vector<std::vector<double>>& table, std::size_t& cols) {
  if (table.empty()) throw std::invalid_argument("contingency table has no rows");
  cols = table.front().size();
  std::vector<double> cells;
  cells.reserve(table.size() * cols);
  for (const auto& row : table) {
    if (row.size() != cols) throw std::invalid_argument("contingency table rows are ragged");
    cells.insert(cells.end(), row.begin(), row.end());
  }
  return cells;
}

struct PseudoCounts {
  std::vector<double> cells;
  std::vector<double> rows;
  std::vector<double> cols;
};

// a_ij = n_ij + s t_ij and its marginals.
PseudoCounts pseudo_counts(const ContingencyCounts& tbl, double s, std::span<const double> t) {
  PseudoCounts pc;
  pc.cells.resize(tbl.cells());
  pc.rows.assign(tbl.rows(), 0.0);
  pc.cols.assign(tbl.cols(), 0.0);
  for (std::size_t i = 0; i < tbl.rows(); ++i) {
    for (std::size_t j = 0; j < tbl.cols(); ++j) {
      const std::size_t k = i * tbl.cols() + j;
      pc.cells[k] = tbl(i, j) + s * t[k];
      pc.rows[i] += pc.cells[k];
      pc.cols[j] += pc.cells[k];
    }
  }
  return pc;
}

double mi_from_pseudo_counts(const PseudoCounts& pc, const EntropyKernel& kernel) {
  double acc = 0.0;
  for (double a : pc.rows) acc += kernel.h_of_count(a);
  for (double a : pc.cols) acc += kernel.h_of_count(a);
  for (double a : pc.cells) acc -= kernel.h_of_count(a);
  return acc;
}

}  // namespace

ContingencyCounts::ContingencyCounts(std::size_t rows, std::size_t cols, std::vector<double> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("contingency table must be non-empty");
  if (cells_.size() != rows_ * cols_) {
    throw std::invalid_argument("cell count does not match table shape");
  }
  row_sums_.assign(rows_, 0.0);
  col_sums_.assign(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const double n = cells_[i * cols_ + j];
      if (!std::isfinite(n)) throw std::invalid_argument("table entries must be finite");
      if (n < 0.0) throw std::invalid_argument("table entries must be non-negative");
      row_sums_[i] += n;
      col_sums_[j] += n;
    }
  }
  total_ = std::accumulate(cells_.begin(), cells_.end(), 0.0);
}

ContingencyCounts::ContingencyCounts(const std::vector<std::vector<double>>& table)
    : ContingencyCounts(table.size(), table.empty() ? 0 : table.front().size(),
                        [&] {
                          std::size_t cols = 0;
                          return flatten(table, cols);
                        }()) {}

ContingencyCounts ContingencyCounts::transposed() const {
  std::vector<double> cells(cells_.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) cells[j * rows_ + i] = cells_[i * cols_ + j];
  }
  return ContingencyCounts(cols_, rows_, std::move(cells));
}

bool MiBounds::sandwich_holds(double tol) const {
  const double lo = i0 + r_lb;
  const double hi = i0 + r_ub;
  const double slack = tol * std::max({1.0, std::abs(lo), std::abs(hi)});
  return lo <= inner_lower + slack && inner_lower <= inner_upper + slack &&
         inner_upper <= hi + slack;
}

double expected_mi(const ContingencyCounts& tbl, const IdmConfig& cfg, const SimplexPoint& t) {
  if (t.size() != tbl.cells()) {
    throw std::invalid_argument("hyperparameter dimension does not match the table's cell count");
  }
  const EntropyKernel kernel(tbl.total() + cfg.s());
  return mi_from_pseudo_counts(pseudo_counts(tbl, cfg.s(), t.values()), kernel);
}

double expected_mi_at(const ContingencyCounts& tbl, const IdmConfig& cfg,
                      std::span<const double> u_cells) {
  if (u_cells.size() != tbl.cells()) {
    throw std::invalid_argument("cell mean dimension does not match the table");
  }
  const double total = tbl.total() + cfg.s();
  PseudoCounts pc;
  pc.cells.resize(tbl.cells());
  pc.rows.assign(tbl.rows(), 0.0);
  pc.cols.assign(tbl.cols(), 0.0);
  for (std::size_t i = 0; i < tbl.rows(); ++i) {
    for (std::size_t j = 0; j < tbl.cols(); ++j) {
      const double a = u_cells[i * tbl.cols() + j] * total;
      pc.cells[i * tbl.cols() + j] = a;
      pc.rows[i] += a;
      pc.cols[j] += a;
    }
  }
  return mi_from_pseudo_counts(pc, EntropyKernel(total));
}

Interval mi_interval_crude(const ContingencyCounts& tbl, const IdmConfig& cfg) {
  const Interval row = entropy_interval_exact(tbl.row_counts(), cfg);
  const Interval col = entropy_interval_exact(tbl.col_counts(), cfg);
  const Interval joint = entropy_interval_exact(tbl.joint_counts(), cfg);
  return Interval(row.lower + col.lower - joint.upper, row.upper + col.upper - joint.lower);
}

MiBounds mi_interval_bounds(const ContingencyCounts& tbl, const IdmConfig& cfg) {
  const double s = cfg.s();
  const double total = tbl.total() + s;
  if (!(total > 0.0)) throw std::domain_error("n + s must be positive");
  const EntropyKernel kernel(total);
  const double sigma = s / total;

  MiBounds b;
  b.rows = tbl.rows();
  b.cols = tbl.cols();
  b.sigma = sigma;

  const std::vector<double> zero(tbl.cells(), 0.0);
  b.i0 = mi_from_pseudo_counts(pseudo_counts(tbl, s, zero), kernel);

  const auto rows = tbl.row_sums();
  const auto cols = tbl.col_sums();
  b.r_ub_per_ij.resize(tbl.cells());
  b.r_lb_per_ij.resize(tbl.cells());
  for (std::size_t i = 0; i < tbl.rows(); ++i) {
    for (std::size_t j = 0; j < tbl.cols(); ++j) {
      const std::size_t k = i * tbl.cols() + j;
      const double n = tbl(i, j);
      // h' is decreasing: marginal terms peak at the base point, the joint term
      // (entering with a minus sign) at the top of its range.
      const double up = kernel.h_prime_of_count(rows[i]) + kernel.h_prime_of_count(cols[j]) -
                        kernel.h_prime_of_count(n + s);
      const double down = kernel.h_prime_of_count(rows[i] + s) +
                          kernel.h_prime_of_count(cols[j] + s) - kernel.h_prime_of_count(n);
      b.r_ub_per_ij[k] = sigma * up;
      b.r_lb_per_ij[k] = sigma * down;
    }
  }
  const auto k1 = static_cast<std::size_t>(
      std::max_element(b.r_ub_per_ij.begin(), b.r_ub_per_ij.end()) - b.r_ub_per_ij.begin());
  const auto k2 = static_cast<std::size_t>(
      std::min_element(b.r_lb_per_ij.begin(), b.r_lb_per_ij.end()) - b.r_lb_per_ij.begin());
  b.r_ub = b.r_ub_per_ij[k1];
  b.r_lb = b.r_lb_per_ij[k2];
  b.cell1 = {k1 / tbl.cols(), k1 % tbl.cols()};
  b.cell2 = {k2 / tbl.cols(), k2 % tbl.cols()};
  b.inner_upper = expected_mi(tbl, cfg, SimplexPoint::vertex(tbl.cells(), k1));
  b.inner_lower = expected_mi(tbl, cfg, SimplexPoint::vertex(tbl.cells(), k2));
  b.crude = mi_interval_crude(tbl, cfg);
  return b;
}

double mi_variance_leading(const ContingencyCounts& tbl, const IdmConfig& cfg,
                           const SimplexPoint& t) {
  if (t.size() != tbl.cells()) {
    throw std::invalid_argument("hyperparameter dimension does not match the table's cell count");
  }
  const PseudoCounts pc = pseudo_counts(tbl, cfg.s(), t.values());
  const double total = std::accumulate(pc.cells.begin(), pc.cells.end(), 0.0);
  double k_sum = 0.0;
  double j_sum = 0.0;
  for (std::size_t i = 0; i < tbl.rows(); ++i) {
    for (std::size_t j = 0; j < tbl.cols(); ++j) {
      const double a = pc.cells[i * tbl.cols() + j];
      if (!(a > 0.0)) {
        throw std::domain_error("variance needs every cell mean to be positive");
      }
      // u_ij / (u_i+ u_+j) in pseudo-count form.
      const double log_ratio = std::log((a * total) / (pc.rows[i] * pc.cols[j]));
      const double u = a / total;
      k_sum += u * log_ratio * log_ratio;
      j_sum += u * log_ratio;
    }
  }
  return std::max(0.0, (k_sum - j_sum * j_sum) / total);
}

bool product_idm_check(const ContingencyCounts& tbl, const IdmConfig& cfg, const MiBounds& bounds,
                       int resolution) {
  if (resolution < 2) throw std::invalid_argument("product lattice resolution must be >= 2");
  const GridSpec grid{resolution};
  const Interval lattice = product_grid_extrema_lattice(
      mi_lattice_objective(tbl, cfg, resolution * resolution), tbl.rows(), tbl.cols(), grid);
  const Interval cons = bounds.conservative();
  const double tol = 1e-12 * std::max({1.0, std::abs(cons.lower), std::abs(cons.upper)});
  return cons.contains(lattice, tol) && lattice.upper >= bounds.inner_upper - tol &&
         lattice.lower <= bounds.inner_lower + tol;
}

}  // namespace idm
