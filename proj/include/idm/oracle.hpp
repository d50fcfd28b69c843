#pragma once

// Brute-force reference computations: exhaustive lattice extremization over the
// hyperparameter simplex (and its product subset) and seeded Monte-Carlo
// sampling of Dirichlet posteriors. Nothing here shares code with the bounding
// routines it is used to check, apart from the special functions.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "idm/mutual_info.hpp"
#include "idm/simplex.hpp"

namespace idm {

struct GridSpec {
  int resolution = 100;
  std::uint64_t max_points = 100'000'000;
};

struct McSpec {
  std::uint64_t draws = 100'000;
  std::uint64_t seed = 0;
};

struct McStats {
  double mean = 0.0;
  double variance = 0.0;
  double stderr_mean = 0.0;
  /// Standard error of the sample variance, from the fourth central moment.
  double stderr_variance = 0.0;
};

/// Objective evaluated on posterior means u (row-major for tables).
using PointObjective = std::function<double(std::span<const double> u)>;
/// Objective evaluated on an integer composition k of the lattice resolution,
/// i.e. t = k / resolution.
using LatticeObjective = std::function<double(std::span<const int> k)>;

/// Number of compositions of `resolution` into `d` non-negative parts,
/// saturating at UINT64_MAX.
std::uint64_t composition_count(int resolution, std::size_t d);

/// Visits every composition of `resolution` into `d` parts in colexicographic
/// order: (R,0,...,0), (R-1,1,0,...), ..., (0,...,0,R). The first component is
/// the fastest to change.
template <class Visitor>
void for_each_composition(int resolution, std::size_t d, Visitor&& visit) {
  if (d == 0 || resolution < 0) throw std::invalid_argument("bad composition request");
  std::vector<int> k(d, 0);
  k[0] = resolution;
  while (true) {
    visit(std::span<const int>(k));
    if (d == 1) return;
    if (k[0] > 0) {
      --k[0];
      ++k[1];
      continue;
    }
    std::size_t j = 1;
    while (j < d && k[j] == 0) ++j;
    if (j + 1 >= d) return;
    const int v = k[j];
    k[j] = 0;
    ++k[j + 1];
    k[0] = v - 1;
  }
}

/// [min, max] of the objective over u(t) for every lattice point t = k/R of the
/// d-simplex.
Interval grid_extrema(const PointObjective& objective, std::size_t d, const CountVector& counts,
                      const IdmConfig& cfg, const GridSpec& grid);

/// Lattice variant for objectives that cache per-coordinate values.
Interval grid_extrema_lattice(const LatticeObjective& objective, std::size_t d,
                              const GridSpec& grid);

/// [min, max] over the product lattice t_ij = v_i w_j with v, w on the
/// resolution-R lattices of the d1- and d2-simplices.
Interval product_grid_extrema(const PointObjective& objective, std::size_t d1, std::size_t d2,
                              const ContingencyCounts& tbl, const IdmConfig& cfg,
                              const GridSpec& grid);

/// Product lattice in integer form: the objective receives k_ij = a_i b_j, a
/// composition of R^2 (it must be built for resolution R^2).
Interval product_grid_extrema_lattice(const LatticeObjective& objective, std::size_t d1,
                                      std::size_t d2, const GridSpec& grid);

/// sum_i f(u_i) on the resolution-R lattice with f tabulated per coordinate.
LatticeObjective separable_lattice_objective(const CountVector& counts, const IdmConfig& cfg,
                                             int resolution, const std::function<double(double)>& f);

/// Expected mutual information on the resolution-R lattice over table cells,
/// re-summed from tabulated entropy summands of rows, columns and cells.
LatticeObjective mi_lattice_objective(const ContingencyCounts& tbl, const IdmConfig& cfg,
                                      int resolution);

/// Samples from Dirichlet(params) by normalizing independent Gamma variates.
/// Deterministic for a given seed.
std::vector<SimplexPoint> dirichlet_draws(std::span<const double> params, const McSpec& mc);

McStats mc_functional_stats(std::span<const SimplexPoint> samples,
                            const std::function<double(const SimplexPoint&)>& functional);

/// Shannon entropy -sum p log p (0 log 0 = 0).
double shannon_entropy(std::span<const double> p);

/// Mutual information of a row-major joint distribution.
double mutual_information(std::span<const double> joint, std::size_t rows, std::size_t cols);

}  // namespace idm
