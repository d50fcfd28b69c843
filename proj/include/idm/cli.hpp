#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "idm/simplex.hpp"

namespace idm::cli {

inline constexpr const char* kSchemaTag = "idm-result/1";

enum class Command { entropy, mutinfo, credible, sweep };
enum class Mode { exact, approx, both };
enum class OutputFormat { json, csv };

enum class ErrorCode {
  empty_input,
  parse_error,
  negative_count,
  non_finite,
  ragged_table,
  missing_alpha,
  invalid_sweep,
  invalid_argument,
  grid_too_large,
  io_error,
  domain_error,
};

/// Stable machine-readable name, e.g. "EMPTY_INPUT".
std::string_view error_code_name(ErrorCode code);

class CliError : public std::runtime_error {
public:
  CliError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

struct RunRequest {
  Command command = Command::entropy;
  std::optional<std::string> input_path;
  std::optional<std::string> inline_data;
  double s = 1.0;
  std::optional<double> alpha;
  Mode mode = Mode::both;
  /// Lattice resolution of the brute-force cross-check, if requested.
  std::optional<int> grid_check;
  OutputFormat format = OutputFormat::json;
  std::uint64_t seed = 0;
  /// "n:<min>:<max>[:<step>]" or "ratio:<n>[:<points>]".
  std::optional<std::string> sweep;
};

/// Inputs as understood by the run, echoed back in the result.
struct RunEcho {
  std::string command;
  double s = 1.0;
  std::string mode;
  std::optional<double> alpha;
  std::optional<int> grid_check;
  std::optional<std::string> sweep;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> data;

  friend bool operator==(const RunEcho&, const RunEcho&) = default;
};

struct RunResult {
  std::string schema = kSchemaTag;
  RunEcho input;
  std::map<std::string, Interval> intervals;
  /// Exact values as "num/den" strings where every ingredient is integral.
  std::map<std::string, std::string> rationals;
  std::map<std::string, double> diagnostics;
  /// Chosen vertices, cells and similar integer diagnostics.
  std::map<std::string, std::vector<std::size_t>> indices;
  std::map<std::string, bool> checks;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Parses comma-separated values (one table row per line, LF or CRLF) or a JSON
/// document {"counts": [...]} / {"table": [[...], ...]} into rows.
std::vector<std::vector<double>> parse_input(std::string_view text);

/// Reads the request's file or inline data.
std::string load_input(const RunRequest& req);

RunResult run_entropy(const RunRequest& req);
RunResult run_mutinfo(const RunRequest& req);
RunResult run_credible(const RunRequest& req);
RunResult run_sweep(const RunRequest& req);
RunResult run(const RunRequest& req);

std::string emit_json(const RunResult& result);
RunResult parse_result_json(std::string_view text);
std::string emit_csv(const RunResult& result);
std::string emit_error_json(const CliError& error);

/// Full command lifecycle: runs the request, writes the result to `out` and any
/// error to both `out` (as JSON) and `err`. Returns the process exit status.
int execute(const RunRequest& req, std::ostream& out, std::ostream& err);

/// Rounds to 12 significant digits, the precision of emitted reals.
double quantize(double x);

}  // namespace idm::cli
