#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bidiag/op_count.hpp"
#include "bidiag/trace.hpp"

namespace bidiag::cli {

enum class Format { json, csv };

/// Parsed command-line flags of the trace tool.
struct RunOptions {
  std::vector<std::string> inputs;
  int max_order = 2;
  std::optional<Variant> variant;  // empty: fast2 when max_order == 2, type1 otherwise
  bool both = false;               // run type1 and type2 side by side
  bool count_ops = false;
  bool oracle_check = false;
  bool prescale = false;
  bool permissive = false;
  bool dump_input = false;
  Format format = Format::json;
  double tol = 1e-9;
};

/// Process exit codes.
enum ExitCode : int { kOk = 0, kInputError = 1, kOverflow = 2, kOracleMismatch = 3 };

inline constexpr std::size_t kOracleMaxOrder = 512;

struct OracleDelta {
  std::vector<double> j_ref;
  double max_rel_err = 0.0;
  double sigma_min = 0.0;
};

/// Result for one input file.
struct RunReport {
  std::string input;
  std::size_t n = 0;
  std::string variant;  // "type1", "type2", "fast2" or "both" (J from type1, J_type2 from type2)
  int max_order = 0;
  std::vector<double> j;
  std::optional<std::vector<double>> j_type2;
  std::optional<double> variant_max_rel_diff;
  std::vector<double> theta;
  std::optional<double> rho;
  std::optional<double> upsilon;
  std::optional<OpCount> ops;
  std::optional<OracleDelta> oracle;
  std::optional<int> scale_log2;  // J values refer to 2^scale_log2 * B
  double wall_ms = 0.0;
  int exit_code = kOk;
  std::string status = "ok";
};

/// Parses argv-style arguments (without the program name). Returns the
/// exit code to use when parsing fails or help was requested.
std::variant<RunOptions, int> parse_args(const std::vector<std::string>& args, std::ostream& out,
                                         std::ostream& err);

/// Runs the selected kernels on one file. Input errors are reported on
/// `err` and yield std::nullopt.
std::optional<RunReport> run_one(const std::string& path, const RunOptions& opts, std::ostream& err);

std::string to_json(const RunReport& r);
/// CSV rows, one per (variant, order). The header comes from csv_header().
std::string to_csv(const RunReport& r);
std::string csv_header();

/// Full CLI: parse flags, process every input, print reports, return the exit code.
/// Exit precedence when inputs disagree: input error, then overflow, then oracle mismatch.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bidiag::cli
