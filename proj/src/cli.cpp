#include "idm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include "idm/credible.hpp"
#include "idm/exact_extrema.hpp"
#include "idm/mutual_info.hpp"
#include "idm/oracle.hpp"
#include "idm/special_functions.hpp"
#include "idm/taylor_bounds.hpp"

namespace idm::cli {
namespace {

using nlohmann::json;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Rows = std::vector<std::vector<double>>;

// Exact rationals are only attempted for modest totals.
constexpr long kMaxRationalTotal = 2000;
constexpr std::uint64_t kCoverageDraws = 20'000;
constexpr double kContainTol = 1e-12;

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw CliError(code, message);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_real(std::string_view field) {
  const std::string text(trim(field));
  if (text.empty()) fail(ErrorCode::parse_error, "empty field in input");
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) {
    fail(ErrorCode::parse_error, "not a number: '" + text + "'");
  }
  return v;
}

void validate_rows(const Rows& rows) {
  if (rows.empty()) fail(ErrorCode::empty_input, "input contains no counts");
  const std::size_t cols = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != cols) {
      fail(ErrorCode::ragged_table, "table rows have different lengths");
    }
    for (double v : row) {
      if (!std::isfinite(v)) fail(ErrorCode::non_finite, "counts must be finite");
      if (v < 0.0) fail(ErrorCode::negative_count, "counts must be non-negative");
    }
  }
  if (cols == 0) fail(ErrorCode::empty_input, "input contains no counts");
}

Rows parse_json_input(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
  }
  auto number = [](const json& v) {
    if (!v.is_number()) fail(ErrorCode::parse_error, "JSON counts must be numbers");
    return v.get<double>();
  };
  Rows rows;
  if (doc.is_object() && doc.contains("counts")) {
    const json& c = doc["counts"];
    if (!c.is_array()) fail(ErrorCode::parse_error, "\"counts\" must be an array");
    if (c.empty()) fail(ErrorCode::empty_input, "\"counts\" is empty");
    std::vector<double> row;
    for (const auto& v : c) row.push_back(number(v));
    rows.push_back(std::move(row));
  } else if (doc.is_object() && doc.contains("table")) {
    const json& t = doc["table"];
    if (!t.is_array()) fail(ErrorCode::parse_error, "\"table\" must be an array of rows");
    if (t.empty()) fail(ErrorCode::empty_input, "\"table\" is empty");
    for (const auto& r : t) {
      if (!r.is_array()) fail(ErrorCode::parse_error, "table rows must be arrays");
      std::vector<double> row;
      for (const auto& v : r) row.push_back(number(v));
      rows.push_back(std::move(row));
    }
  } else {
    fail(ErrorCode::parse_error, "JSON input needs a \"counts\" or \"table\" member");
  }
  return rows;
}

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::exact: return "exact";
    case Mode::approx: return "approx";
    case Mode::both: return "both";
  }
  return "both";
}

std::string command_name(Command c) {
  switch (c) {
    case Command::entropy: return "entropy";
    case Command::mutinfo: return "mutinfo";
    case Command::credible: return "credible";
    case Command::sweep: return "sweep";
  }
  return "entropy";
}

void validate_request(const RunRequest& req) {
  if (!std::isfinite(req.s) || req.s <= 0.0) {
    fail(ErrorCode::invalid_argument, "--s must be positive and finite");
  }
  if (req.command == Command::credible) {
    if (!req.alpha) fail(ErrorCode::missing_alpha, "credible needs --alpha");
    if (!(*req.alpha > 0.0 && *req.alpha < 1.0)) {
      fail(ErrorCode::invalid_argument, "--alpha must lie in (0, 1)");
    }
  } else if (req.alpha) {
    fail(ErrorCode::invalid_argument, "--alpha only applies to the credible command");
  }
  if (req.grid_check && *req.grid_check < 1) {
    fail(ErrorCode::invalid_argument, "--grid-check resolution must be >= 1");
  }
  if (req.command == Command::sweep && !req.sweep) {
    fail(ErrorCode::invalid_sweep, "sweep needs --sweep n:<min>:<max> or --sweep ratio:<n>");
  }
  if (req.command != Command::sweep && req.sweep) {
    fail(ErrorCode::invalid_argument, "--sweep only applies to the sweep command");
  }
  if (req.input_path && req.inline_data) {
    fail(ErrorCode::invalid_argument, "give either an input path or --inline, not both");
  }
}

RunResult start_result(const RunRequest& req, Rows data) {
  RunResult r;
  r.input.command = command_name(req.command);
  r.input.s = quantize(req.s);
  r.input.mode = mode_name(req.mode);
  if (req.alpha) r.input.alpha = quantize(*req.alpha);
  r.input.grid_check = req.grid_check;
  r.input.sweep = req.sweep;
  r.input.seed = req.seed;
  for (auto& row : data) {
    for (double& v : row) v = quantize(v);
  }
  r.input.data = std::move(data);
  return r;
}

void put(RunResult& r, const std::string& key, const Interval& iv) {
  r.intervals[key] = Interval(quantize(iv.lower), quantize(iv.upper));
}

void put(RunResult& r, const std::string& key, double v) { r.diagnostics[key] = quantize(v); }

double rel_tol(const Interval& iv) {
  return kContainTol * std::max({1.0, std::abs(iv.lower), std::abs(iv.upper)});
}

std::vector<double> counts_from_rows(const Rows& rows) {
  if (rows.size() == 1) return rows.front();
  if (std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.size() == 1; })) {
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.front());
    return out;
  }
  fail(ErrorCode::invalid_argument, "entropy expects a single row (or column) of counts");
}

ContingencyCounts table_from_rows(const Rows& rows) { return ContingencyCounts(rows); }

std::optional<long> as_integer(double x) {
  if (!std::isfinite(x) || std::abs(x) > 1e15) return std::nullopt;
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x))) return std::nullopt;
  return static_cast<long>(r);
}

// Sum of h(a_i) with h(a) = (a/N) sum_{k=a+1}^{N} 1/k, exact when the
// pseudo-counts a_i = N u_i and N are integers.
std::optional<Rational> exact_entropy_sum(std::span<const double> u, double total) {
  const auto big_n = as_integer(total);
  if (!big_n || *big_n <= 0 || *big_n > kMaxRationalTotal) return std::nullopt;
  Rational acc = 0;
  for (double ui : u) {
    const auto a = as_integer(ui * total);
    if (!a || *a < 0 || *a > *big_n) return std::nullopt;
    Rational tail = 0;
    for (long k = *a + 1; k <= *big_n; ++k) tail += Rational(1, k);
    acc += Rational(*a, *big_n) * tail;
  }
  return acc;
}

std::string over(const Rational& q, const BigInt& den) {
  const BigInt num = numerator(q) * (den / denominator(q));
  return num.str() + "/" + den.str();
}

// Both endpoints written over the least common denominator.
void put_rational_pair(RunResult& r, const std::string& key, const Rational& lo,
                       const Rational& hi) {
  const BigInt den = boost::multiprecision::lcm(denominator(lo), denominator(hi));
  r.rationals[key + "_lower"] = over(lo, den);
  r.rationals[key + "_upper"] = over(hi, den);
}

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

double shannon(std::span<const double> p) {
  double acc = 0.0;
  for (double x : p) {
    if (x > 0.0) acc -= x * std::log(x);
  }
  return acc;
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json interval_json(const Interval& iv) { return json{{"lower", iv.lower}, {"upper", iv.upper}}; }

double finite_number(const json& v, const char* what) {
  if (!v.is_number()) throw std::invalid_argument(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::empty_input: return "EMPTY_INPUT";
    case ErrorCode::parse_error: return "PARSE_ERROR";
    case ErrorCode::negative_count: return "NEGATIVE_COUNT";
    case ErrorCode::non_finite: return "NON_FINITE";
    case ErrorCode::ragged_table: return "RAGGED_TABLE";
    case ErrorCode::missing_alpha: return "MISSING_ALPHA";
    case ErrorCode::invalid_sweep: return "INVALID_SWEEP";
    case ErrorCode::invalid_argument: return "INVALID_ARGUMENT";
    case ErrorCode::grid_too_large: return "GRID_TOO_LARGE";
    case ErrorCode::io_error: return "IO_ERROR";
    case ErrorCode::domain_error: return "DOMAIN_ERROR";
  }
  return "INVALID_ARGUMENT";
}

double quantize(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(fmt12(x).c_str(), nullptr);
}

std::vector<std::vector<double>> parse_input(std::string_view text) {
  const std::string_view body = trim(text);
  if (body.empty()) fail(ErrorCode::empty_input, "input is empty");
  Rows rows;
  if (body.front() == '{') {
    rows = parse_json_input(body);
  } else {
    for (std::string_view line : split(body, '\n')) {
      line = trim(line);
      if (line.empty()) continue;
      std::vector<double> row;
      for (std::string_view field : split(line, ',')) row.push_back(parse_real(field));
      rows.push_back(std::move(row));
    }
  }
  validate_rows(rows);
  return rows;
}

std::string load_input(const RunRequest& req) {
  if (req.inline_data) return *req.inline_data;
  if (!req.input_path) fail(ErrorCode::empty_input, "no input: give a path or --inline");
  std::ifstream in(*req.input_path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + *req.input_path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::io_error, "error reading '" + *req.input_path + "'");
  return text;
}

RunResult run_entropy(const RunRequest& req) {
  validate_request(req);
  const Rows rows = parse_input(load_input(req));
  const CountVector counts(counts_from_rows(rows));
  const IdmConfig cfg(req.s);
  RunResult r = start_result(req, {counts_from_rows(rows)});

  const double total = counts.total() + cfg.s();
  const EntropyKernel kernel(total);
  const ConcaveSummand h = ConcaveSummand::entropy(kernel);
  put(r, "n", counts.total());
  put(r, "sigma", sigma_of(counts, cfg));
  put(r, "d", static_cast<double>(counts.size()));

  std::optional<Interval> exact;
  if (req.mode != Mode::approx) {
    const ExtremumResult lo = min_concave_sum(counts, cfg, h);
    const ExtremumResult hi = max_concave_sum(counts, cfg, h);
    exact = Interval(lo.value, std::max(lo.value, hi.value));
    put(r, "exact", *exact);
    if (lo.vertex_index) r.indices["min_vertex"] = {*lo.vertex_index};
    if (hi.m_star) r.indices["m_star"] = {*hi.m_star};
    if (hi.vertex_index) r.indices["max_vertex"] = {*hi.vertex_index};
    const auto q_lo = exact_entropy_sum(lo.u_star.u, total);
    const auto q_hi = exact_entropy_sum(hi.u_star.u, total);
    if (q_lo && q_hi) put_rational_pair(r, "exact", *q_lo, *q_hi);
  }

  std::optional<Interval> cons;
  if (req.mode != Mode::exact) {
    const RobustEstimate est = concave_remainder_bounds(counts, cfg, h);
    cons = est.conservative();
    put(r, "conservative", *cons);
    put(r, "inner", est.inner());
    put(r, "f0", est.f0);
    put(r, "r_ub", est.r_ub);
    put(r, "r_lb", est.r_lb);
    put(r, "gap_upper", est.f0 + est.r_ub - est.inner_upper);
    put(r, "gap_lower", est.inner_lower - (est.f0 + est.r_lb));
    r.indices["i1"] = {est.i1};
    r.indices["i2"] = {est.i2};
    r.checks["sandwich"] = est.sandwich_holds();
    const auto q0 = exact_entropy_sum(base_point(counts, cfg), total);
    if (q0) r.rationals["f0"] = to_string(*q0);
  }
  if (exact && cons) {
    r.checks["exact_within_conservative"] = cons->contains(*exact, rel_tol(*cons));
  }

  if (req.grid_check) {
    const int res = *req.grid_check;
    const Interval grid = grid_extrema_lattice(
        separable_lattice_objective(counts, cfg, res, [&](double u) { return kernel.h(u); }),
        counts.size(), GridSpec{res});
    put(r, "grid", grid);
    if (exact) r.checks["grid_within_exact"] = exact->contains(grid, rel_tol(*exact));
    if (cons) r.checks["grid_within_conservative"] = cons->contains(grid, rel_tol(*cons));
  }
  return r;
}

RunResult run_mutinfo(const RunRequest& req) {
  validate_request(req);
  const Rows rows = parse_input(load_input(req));
  const ContingencyCounts tbl = table_from_rows(rows);
  const IdmConfig cfg(req.s);
  RunResult r = start_result(req, rows);
  put(r, "n", tbl.total());
  put(r, "sigma", cfg.s() / (tbl.total() + cfg.s()));

  const Interval crude = mi_interval_crude(tbl, cfg);
  put(r, "crude", crude);
  std::optional<Interval> cons;
  if (req.mode != Mode::exact) {
    const MiBounds b = mi_interval_bounds(tbl, cfg);
    cons = b.conservative();
    put(r, "conservative", *cons);
    put(r, "inner", b.inner());
    put(r, "i0", b.i0);
    put(r, "r_ub", b.r_ub);
    put(r, "r_lb", b.r_lb);
    r.indices["cell1"] = {b.cell1.first, b.cell1.second};
    r.indices["cell2"] = {b.cell2.first, b.cell2.second};
    r.checks["sandwich"] = b.sandwich_holds();
  }
  if (req.grid_check) {
    const int res = *req.grid_check;
    const Interval grid = product_grid_extrema_lattice(
        mi_lattice_objective(tbl, cfg, res * res), tbl.rows(), tbl.cols(), GridSpec{res});
    put(r, "product_grid", grid);
    r.checks["product_grid_within_crude"] = crude.contains(grid, rel_tol(crude));
    if (cons) r.checks["product_grid_within_conservative"] = cons->contains(grid, rel_tol(*cons));
  }
  return r;
}

RunResult run_credible(const RunRequest& req) {
  validate_request(req);
  const Rows rows = parse_input(load_input(req));
  const ContingencyCounts tbl = table_from_rows(rows);
  const IdmConfig cfg(req.s);
  const CredibleSpec spec = CredibleSpec::from_alpha(*req.alpha);
  RunResult r = start_result(req, rows);

  const SimplexPoint t_star = SimplexPoint::center(tbl.cells());
  const MiBounds b = mi_interval_bounds(tbl, cfg);
  const Interval credible = robust_credible_mi(tbl, cfg, spec, t_star);
  const double var = mi_variance_leading(tbl, cfg, t_star);
  put(r, "credible", credible);
  put(r, "conservative", b.conservative());
  put(r, "n", tbl.total());
  put(r, "sigma", b.sigma);
  put(r, "i0", b.i0);
  put(r, "kappa", spec.kappa);
  put(r, "variance_leading", var);

  // Empirical coverage at t_star; a rough check on the Gaussian approximation.
  std::vector<double> params(tbl.cells());
  for (std::size_t k = 0; k < tbl.cells(); ++k) params[k] = tbl.values()[k] + cfg.s() * t_star[k];
  const auto draws = dirichlet_draws(params, McSpec{kCoverageDraws, req.seed});
  std::size_t inside = 0;
  for (const auto& p : draws) {
    if (credible.contains(mutual_information(p.values(), tbl.rows(), tbl.cols()))) ++inside;
  }
  put(r, "coverage_at_t_star", static_cast<double>(inside) / static_cast<double>(draws.size()));
  return r;
}

RunResult run_sweep(const RunRequest& req) {
  validate_request(req);
  const std::vector<std::string_view> parts = split(*req.sweep, ':');
  auto number = [&](std::size_t i) {
    try {
      return parse_real(parts.at(i));
    } catch (const CliError&) {
      fail(ErrorCode::invalid_sweep, "bad number in sweep spec '" + *req.sweep + "'");
    }
  };
  auto whole = [&](std::size_t i) {
    const auto v = as_integer(number(i));
    if (!v) fail(ErrorCode::invalid_sweep, "sweep bounds must be integers");
    return *v;
  };

  Rows data;
  std::vector<std::pair<double, std::vector<double>>> points;
  const std::string_view kind = trim(parts.front());
  if (kind == "n") {
    if (parts.size() < 3 || parts.size() > 4) {
      fail(ErrorCode::invalid_sweep, "expected n:<min>:<max>[:<step>]");
    }
    const long lo = whole(1);
    const long hi = whole(2);
    const long step = parts.size() == 4 ? whole(3) : 1;
    if (lo < 1 || hi < lo || step < 1 || (hi - lo) / step > 100'000) {
      fail(ErrorCode::invalid_sweep, "need 1 <= min <= max, step >= 1, at most 1e5 rows");
    }
    std::vector<double> ratios{1.0 / 3.0, 2.0 / 3.0};
    if (req.inline_data || req.input_path) {
      data = parse_input(load_input(req));
      ratios = counts_from_rows(data);
      const double sum = std::accumulate(ratios.begin(), ratios.end(), 0.0);
      if (!(sum > 0.0)) fail(ErrorCode::invalid_sweep, "ratio counts must not all be zero");
      for (double& x : ratios) x /= sum;
    }
    for (long n = lo; n <= hi; n += step) {
      std::vector<double> c(ratios.size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = ratios[i] * static_cast<double>(n);
      points.emplace_back(static_cast<double>(n), std::move(c));
    }
  } else if (kind == "ratio") {
    if (parts.size() < 2 || parts.size() > 3) {
      fail(ErrorCode::invalid_sweep, "expected ratio:<n>[:<points>]");
    }
    const double n = number(1);
    const long count = parts.size() == 3 ? whole(2) : 31;
    if (!(n > 0.0) || !std::isfinite(n) || count < 1 || count > 100'000) {
      fail(ErrorCode::invalid_sweep, "need n > 0 and 1 <= points <= 1e5");
    }
    for (long k = 0; k < count; ++k) {
      const double x = count == 1 ? 0.0 : 0.5 * static_cast<double>(k) / static_cast<double>(count - 1);
      points.emplace_back(x, std::vector<double>{x * n, (1.0 - x) * n});
    }
  } else {
    fail(ErrorCode::invalid_sweep, "sweep axis must be 'n' or 'ratio'");
  }

  RunResult r = start_result(req, std::move(data));
  r.columns = {"x",         "H_exact_lo", "H_exact_hi",   "H_cons_lo",
               "H_cons_hi", "H_point_ml", "H_point_half", "H_expected_ml"};
  const IdmConfig cfg(req.s);
  for (const auto& [x, c] : points) {
    const CountVector counts(c);
    const double n = counts.total();
    const double d = static_cast<double>(counts.size());
    const Interval exact = entropy_interval_exact(counts, cfg);
    const ConcaveSummand h = ConcaveSummand::entropy(EntropyKernel(n + cfg.s()));
    const Interval cons = concave_remainder_bounds(counts, cfg, h).conservative();
    std::vector<double> ml(c.size());
    std::vector<double> half(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      ml[i] = c[i] / n;
      half[i] = (c[i] + 0.5) / (n + 0.5 * d);
    }
    const EntropyKernel at_n(n);
    double expected_ml = 0.0;
    for (double p : ml) expected_ml += at_n.h(p);
    std::vector<double> row{x,          exact.lower, exact.upper, cons.lower,
                            cons.upper, shannon(ml), shannon(half), expected_ml};
    for (double& v : row) v = quantize(v);
    r.rows.push_back(std::move(row));
  }
  return r;
}

RunResult run(const RunRequest& req) {
  try {
    switch (req.command) {
      case Command::entropy: return run_entropy(req);
      case Command::mutinfo: return run_mutinfo(req);
      case Command::credible: return run_credible(req);
      case Command::sweep: return run_sweep(req);
    }
  } catch (const CliError&) {
    throw;
  } catch (const std::length_error& e) {
    fail(ErrorCode::grid_too_large, e.what());
  } catch (const std::domain_error& e) {
    fail(ErrorCode::domain_error, e.what());
  } catch (const std::exception& e) {
    fail(ErrorCode::invalid_argument, e.what());
  }
  fail(ErrorCode::invalid_argument, "unknown command");
}

std::string emit_json(const RunResult& result) {
  json doc;
  doc["schema"] = result.schema;
  json input{{"command", result.input.command},
             {"s", result.input.s},
             {"mode", result.input.mode},
             {"seed", result.input.seed},
             {"data", result.input.data}};
  if (result.input.alpha) input["alpha"] = *result.input.alpha;
  if (result.input.grid_check) input["grid_check"] = *result.input.grid_check;
  if (result.input.sweep) input["sweep"] = *result.input.sweep;
  doc["input"] = std::move(input);
  json intervals = json::object();
  for (const auto& [k, iv] : result.intervals) intervals[k] = interval_json(iv);
  doc["intervals"] = std::move(intervals);
  doc["rationals"] = result.rationals;
  doc["diagnostics"] = result.diagnostics;
  doc["indices"] = result.indices;
  doc["checks"] = result.checks;
  if (!result.columns.empty()) {
    doc["series"] = json{{"columns", result.columns}, {"rows", result.rows}};
  }
  return doc.dump(2) + "\n";
}

RunResult parse_result_json(std::string_view text) {
  const json doc = json::parse(text);
  RunResult r;
  r.schema = doc.at("schema").get<std::string>();
  if (r.schema != kSchemaTag) throw std::invalid_argument("unknown result schema " + r.schema);
  const json& in = doc.at("input");
  r.input.command = in.at("command").get<std::string>();
  r.input.s = finite_number(in.at("s"), "s");
  r.input.mode = in.at("mode").get<std::string>();
  r.input.seed = in.at("seed").get<std::uint64_t>();
  r.input.data = in.at("data").get<Rows>();
  if (in.contains("alpha")) r.input.alpha = finite_number(in["alpha"], "alpha");
  if (in.contains("grid_check")) r.input.grid_check = in["grid_check"].get<int>();
  if (in.contains("sweep")) r.input.sweep = in["sweep"].get<std::string>();
  for (const auto& [k, v] : doc.at("intervals").items()) {
    r.intervals[k] = Interval(finite_number(v.at("lower"), "lower"),
                              finite_number(v.at("upper"), "upper"));
  }
  r.rationals = doc.at("rationals").get<std::map<std::string, std::string>>();
  r.diagnostics = doc.at("diagnostics").get<std::map<std::string, double>>();
  r.indices = doc.at("indices").get<std::map<std::string, std::vector<std::size_t>>>();
  r.checks = doc.at("checks").get<std::map<std::string, bool>>();
  if (doc.contains("series")) {
    r.columns = doc["series"].at("columns").get<std::vector<std::string>>();
    r.rows = doc["series"].at("rows").get<Rows>();
  }
  return r;
}

std::string emit_csv(const RunResult& result) {
  std::ostringstream out;
  if (!result.columns.empty()) {
    for (std::size_t i = 0; i < result.columns.size(); ++i) {
      out << (i ? "," : "") << csv_escape(result.columns[i]);
    }
    out << "\n";
    for (const auto& row : result.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt12(row[i]);
      out << "\n";
    }
    return out.str();
  }
  out << "kind,lower,upper\n";
  for (const auto& [k, iv] : result.intervals) {
    out << csv_escape(k) << "," << fmt12(iv.lower) << "," << fmt12(iv.upper) << "\n";
  }
  return out.str();
}

std::string emit_error_json(const CliError& error) {
  const json doc{{"schema", kSchemaTag},
                 {"error", {{"code", error_code_name(error.code())}, {"message", error.what()}}}};
  return doc.dump(2) + "\n";
}

int execute(const RunRequest& req, std::ostream& out, std::ostream& err) {
  auto report = [&](const CliError& e) {
    out << emit_error_json(e);
    err << "error " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  };
  try {
    const RunResult result = run(req);
    out << (req.format == OutputFormat::csv ? emit_csv(result) : emit_json(result));
    return 0;
  } catch (const CliError& e) {
    return report(e);
  } catch (const std::exception& e) {
    return report(CliError(ErrorCode::invalid_argument, e.what()));
  }
}

}  // namespace idm::cli
