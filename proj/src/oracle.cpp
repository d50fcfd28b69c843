#include "idm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "idm/special_functions.hpp"

namespace idm {
namespace {

void check_lattice_size(std::uint64_t points, const GridSpec& grid) {
  if (points > grid.max_points) {
    throw std::length_error("lattice has " + std::to_string(points) + " points, cap is " +
                            std::to_string(grid.max_points));
  }
}

void check_resolution(const GridSpec& grid) {
  if (grid.resolution < 1) throw std::invalid_argument("lattice resolution must be >= 1");
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::numeric_limits<std::uint64_t>::max();
  return out;
}

struct MinMax {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (std::isnan(v)) throw std::domain_error("oracle objective returned NaN");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  Interval interval() const { return Interval(lo, hi); }
};

std::vector<std::vector<int>> all_compositions(int resolution, std::size_t d) {
  std::vector<std::vector<int>> out;
  for_each_composition(resolution, d,
                       [&](std::span<const int> k) { out.emplace_back(k.begin(), k.end()); });
  return out;
}

// Seed-stable generator: raw 64-bit engine output mapped to doubles by hand so
// the stream does not depend on the standard library's distributions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1).
  double uniform() {
    while (true) {
      const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  // Marsaglia polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double x, y, r2;
    do {
      x = 2.0 * uniform() - 1.0;
      y = 2.0 * uniform() - 1.0;
      r2 = x * x + y * y;
    } while (r2 >= 1.0 || r2 == 0.0);
    const double f = std::sqrt(-2.0 * std::log(r2) / r2);
    spare_ = y * f;
    has_spare_ = true;
    return x * f;
  }

  // Marsaglia-Tsang squeeze; shapes below one are boosted by a power of a uniform.
  double gamma(double shape) {
    if (shape < 1.0) {
      return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

std::uint64_t composition_count(int resolution, std::size_t d) {
  if (d == 0 || resolution < 0) return 0;
  // C(R + d - 1, d - 1), built incrementally so every partial product is exact.
  const std::uint64_t r = static_cast<std::uint64_t>(resolution);
  std::uint64_t acc = 1;
  for (std::uint64_t k = 1; k < d; ++k) {
    const std::uint64_t num = saturating_mul(acc, r + k);
    if (num == std::numeric_limits<std::uint64_t>::max()) return num;
    acc = num / k;
  }
  return acc;
}

Interval grid_extrema(const PointObjective& objective, std::size_t d, const CountVector& counts,
                      const IdmConfig& cfg, const GridSpec& grid) {
  if (d != counts.size()) throw std::invalid_argument("grid dimension does not match counts");
  check_resolution(grid);
  check_lattice_size(composition_count(grid.resolution, d), grid);
  const double r = static_cast<double>(grid.resolution);
  const double total = counts.total() + cfg.s();
  std::vector<double> u(d);
  MinMax acc;
  for_each_composition(grid.resolution, d, [&](std::span<const int> k) {
    for (std::size_t i = 0; i < d; ++i) u[i] = (counts[i] + cfg.s() * (k[i] / r)) / total;
    acc.add(objective(u));
  });
  return acc.interval();
}

Interval grid_extrema_lattice(const LatticeObjective& objective, std::size_t d,
                              const GridSpec& grid) {
  check_resolution(grid);
  check_lattice_size(composition_count(grid.resolution, d), grid);
  MinMax acc;
  for_each_composition(grid.resolution, d, [&](std::span<const int> k) { acc.add(objective(k)); });
  return acc.interval();
}

Interval product_grid_extrema(const PointObjective& objective, std::size_t d1, std::size_t d2,
                              const ContingencyCounts& tbl, const IdmConfig& cfg,
                              const GridSpec& grid) {
  if (d1 != tbl.rows() || d2 != tbl.cols()) {
    throw std::invalid_argument("product grid shape does not match the table");
  }
  check_resolution(grid);
  check_lattice_size(saturating_mul(composition_count(grid.resolution, d1),
                                    composition_count(grid.resolution, d2)),
                     grid);
  const auto right = all_compositions(grid.resolution, d2);
  const double r = static_cast<double>(grid.resolution);
  const double s = cfg.s();
  const double total = tbl.total() + s;
  const auto cells = tbl.values();
  std::vector<double> u(d1 * d2);
  MinMax acc;
  for_each_composition(grid.resolution, d1, [&](std::span<const int> a) {
    for (const auto& b : right) {
      for (std::size_t i = 0; i < d1; ++i) {
        for (std::size_t j = 0; j < d2; ++j) {
          const double t = (a[i] / r) * (b[j] / r);
          u[i * d2 + j] = (cells[i * d2 + j] + s * t) / total;
        }
      }
      acc.add(objective(u));
    }
  });
  return acc.interval();
}

Interval product_grid_extrema_lattice(const LatticeObjective& objective, std::size_t d1,
                                      std::size_t d2, const GridSpec& grid) {
  check_resolution(grid);
  check_lattice_size(saturating_mul(composition_count(grid.resolution, d1),
                                    composition_count(grid.resolution, d2)),
                     grid);
  const auto right = all_compositions(grid.resolution, d2);
  std::vector<int> k(d1 * d2);
  MinMax acc;
  for_each_composition(grid.resolution, d1, [&](std::span<const int> a) {
    for (const auto& b : right) {
      for (std::size_t i = 0; i < d1; ++i) {
        for (std::size_t j = 0; j < d2; ++j) k[i * d2 + j] = a[i] * b[j];
      }
      acc.add(objective(k));
    }
  });
  return acc.interval();
}

LatticeObjective separable_lattice_objective(const CountVector& counts, const IdmConfig& cfg,
                                             int resolution,
                                             const std::function<double(double)>& f) {
  if (resolution < 1) throw std::invalid_argument("lattice resolution must be >= 1");
  const std::size_t d = counts.size();
  const std::size_t stride = static_cast<std::size_t>(resolution) + 1;
  const double total = counts.total() + cfg.s();
  std::vector<double> table(d * stride);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < stride; ++k) {
      const double t = static_cast<double>(k) / resolution;
      table[i * stride + k] = f((counts[i] + cfg.s() * t) / total);
    }
  }
  return [table = std::move(table), stride, d](std::span<const int> k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) acc += table[i * stride + static_cast<std::size_t>(k[i])];
    return acc;
  };
}

LatticeObjective mi_lattice_objective(const ContingencyCounts& tbl, const IdmConfig& cfg,
                                      int resolution) {
  if (resolution < 1) throw std::invalid_argument("lattice resolution must be >= 1");
  const std::size_t rows = tbl.rows();
  const std::size_t cols = tbl.cols();
  const std::size_t stride = static_cast<std::size_t>(resolution) + 1;
  const double s = cfg.s();
  const EntropyKernel kernel(tbl.total() + s);
  auto tabulate = [&](std::span<const double> base) {
    std::vector<double> out(base.size() * stride);
    for (std::size_t i = 0; i < base.size(); ++i) {
      for (std::size_t k = 0; k < stride; ++k) {
        out[i * stride + k] = kernel.h_of_count(base[i] + s * (static_cast<double>(k) / resolution));
      }
    }
    return out;
  };
  std::vector<double> cell_h = tabulate(tbl.values());
  std::vector<double> row_h = tabulate(tbl.row_sums());
  std::vector<double> col_h = tabulate(tbl.col_sums());
  return [cell_h = std::move(cell_h), row_h = std::move(row_h), col_h = std::move(col_h), rows,
          cols, stride](std::span<const int> k) {
    double joint = 0.0;
    double row_part = 0.0;
    double col_part = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      std::size_t row_k = 0;
      for (std::size_t j = 0; j < cols; ++j) {
        const auto kij = static_cast<std::size_t>(k[i * cols + j]);
        row_k += kij;
        joint += cell_h[(i * cols + j) * stride + kij];
      }
      row_part += row_h[i * stride + row_k];
    }
    for (std::size_t j = 0; j < cols; ++j) {
      std::size_t col_k = 0;
      for (std::size_t i = 0; i < rows; ++i) col_k += static_cast<std::size_t>(k[i * cols + j]);
      col_part += col_h[j * stride + col_k];
    }
    return row_part + col_part - joint;
  };
}

std::vector<SimplexPoint> dirichlet_draws(std::span<const double> params, const McSpec& mc) {
  if (params.empty()) throw std::invalid_argument("Dirichlet needs at least one parameter");
  for (double a : params) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("Dirichlet parameters must be positive and finite");
    }
  }
  if (mc.draws < 1) throw std::invalid_argument("need at least one draw");
  Rng rng(mc.seed);
  std::vector<SimplexPoint> out;
  out.reserve(mc.draws);
  std::vector<double> g(params.size());
  for (std::uint64_t n = 0; n < mc.draws; ++n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < params.size(); ++i) {
      g[i] = rng.gamma(params[i]);
      sum += g[i];
    }
    for (double& x : g) x /= sum;
    out.emplace_back(g);
  }
  return out;
}

McStats mc_functional_stats(std::span<const SimplexPoint> samples,
                            const std::function<double(const SimplexPoint&)>& functional) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("need at least two samples");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = functional(samples[i]);
  const double nd = static_cast<double>(n);
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / nd;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : x) {
    const double d2 = (v - mean) * (v - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  McStats st;
  st.mean = mean;
  st.variance = m2 / (nd - 1.0);
  st.stderr_mean = std::sqrt(st.variance / nd);
  const double fourth = m4 / nd;
  const double var_of_var = (fourth - (nd - 3.0) / (nd - 1.0) * st.variance * st.variance) / nd;
  st.stderr_variance = std::sqrt(std::max(0.0, var_of_var));
  return st;
}

double shannon_entropy(std::span<const double> p) {
  double acc = 0.0;
  for (double x : p) {
    if (x > 0.0) acc -= x * std::log(x);
  }
  return acc;
}

double mutual_information(std::span<const double> joint, std::size_t rows, std::size_t cols) {
  if (joint.size() != rows * cols) throw std::invalid_argument("joint distribution shape mismatch");
  std::vector<double> pr(rows, 0.0);
  std::vector<double> pc(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      pr[i] += joint[i * cols + j];
      pc[j] += joint[i * cols + j];
    }
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double p = joint[i * cols + j];
      if (p > 0.0) acc += p * std::log(p / (pr[i] * pc[j]));
    }
  }
  return acc;
}

}  // namespace idm
