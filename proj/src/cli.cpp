#include "bidiag/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <ostream>
#include <sstream>

#include "bidiag/bounds.hpp"
#include "bidiag/matrix_io.hpp"
#include "bidiag/oracle.hpp"

namespace bidiag::cli {

std::variant<RunOptions, int> parse_args(const std::vector<std::string>& args, std::ostream& out,
                                         std::ostream& err) {
  RunOptions o;
  std::string variant;
  std::string format = "json";

  CLI::App app{"Traces of inverse powers of B^T B and lower bounds on sigma_min(B)", "bidiag_trace"};
  app.add_option("--input", o.inputs, "Matrix file(s)")->required()->take_all();
  app.add_option("--max-order", o.max_order, "Highest trace order M")->check(CLI::Range(1, 100000));
  app.add_option("--variant", variant, "type1 | type2 | fast2 | both")
      ->check(CLI::IsMember({"type1", "type2", "fast2", "both"}));
  app.add_flag("--count-ops", o.count_ops, "Report arithmetic operation counts");
  app.add_flag("--oracle-check", o.oracle_check, "Compare against the dense reference (N <= 512)");
  app.add_flag("--prescale", o.prescale, "Scale B by a power of two so its largest entry is in [1, 2)");
  app.add_flag("--permissive", o.permissive, "Accept zero superdiagonal entries");
  app.add_flag("--dump-input", o.dump_input, "Echo the parsed matrix in file format and exit");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", o.tol, "Relative tolerance for --oracle-check")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  if (variant == "both") {
    o.both = true;
  } else if (!variant.empty()) {
    o.variant = parse_variant(variant);
  }
  o.format = format == "csv" ? Format::csv : Format::json;
  if (o.variant == Variant::fast2 && o.max_order > 2) {
    err << "error: fast2 computes orders 1 and 2 only; use --max-order 1 or 2\n";
    return kInputError;
  }
  return o;
}

namespace {

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[i]) / std::abs(b[i]));
  return worst;
}

// Runs a kernel; on overflow keeps the completed orders and flags the report.
std::vector<double> traces_or_partial(const Bidiagonal& b, int m, Variant v, OpCount* ops, RunReport& r) {
  try {
    return compute_traces(b, m, v, ops).values;
  } catch (const TraceOverflow& e) {
    r.exit_code = kOverflow;
    r.status = "overflow";
    return e.partial().values;
  }
}

void json_number(std::ostream& os, double v) {
  if (std::isfinite(v)) {
    os << format_double(v);
  } else {
    os << "null";
  }
}

void json_array(std::ostream& os, const std::vector<double>& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    json_number(os, v[i]);
  }
  os << ']';
}

void json_optional(std::ostream& os, const std::optional<double>& v) {
  if (v) {
    json_number(os, *v);
  } else {
    os << "null";
  }
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(ch)));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

}  // namespace

std::optional<RunReport> run_one(const std::string& path, const RunOptions& opts, std::ostream& err) {
  std::optional<Bidiagonal> parsed;
  try {
    parsed = parse_matrix_file(path, opts.permissive);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return std::nullopt;
  }
  if (opts.oracle_check && parsed->size() > kOracleMaxOrder) {
    err << "error: " << path << ": --oracle-check refuses N = " << parsed->size() << " > " << kOracleMaxOrder
        << '\n';
    return std::nullopt;
  }

  RunReport r;
  r.input = path;
  r.n = parsed->size();
  r.max_order = opts.max_order;

  Bidiagonal b = *parsed;
  int shift = 0;
  if (opts.prescale) {
    try {
      auto [scaled, alpha] = prescale(b);
      b = std::move(scaled);
      shift = alpha.log2_alpha;
      r.scale_log2 = shift;
    } catch (const InvalidMatrix& e) {
      err << "error: " << path << ": cannot prescale: " << e.what() << '\n';
      return std::nullopt;
    }
  }

  const Variant primary = opts.both ? Variant::type1
                                    : opts.variant.value_or(opts.max_order == 2 ? Variant::fast2 : Variant::type1);
  r.variant = opts.both ? "both" : std::string(to_string(primary));

  OpCount ops;
  OpCount* counter = opts.count_ops ? &ops : nullptr;
  const auto t0 = std::chrono::steady_clock::now();
  r.j = traces_or_partial(b, opts.max_order, primary, counter, r);
  if (opts.both) {
    r.j_type2 = traces_or_partial(b, opts.max_order, Variant::type2, counter, r);
    r.variant_max_rel_diff = max_rel_diff(*r.j_type2, r.j);
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (opts.count_ops) r.ops = ops;

  // Bounds refer to the input matrix: theta(B) = theta(2^s B) / 2^s.
  for (std::size_t p = 1; p <= r.j.size(); ++p) {
    r.theta.push_back(std::ldexp(theta_from_trace(r.j[p - 1], static_cast<int>(p)), -shift));
  }
  if (!r.theta.empty()) r.rho = r.theta[0];
  if (r.j.size() >= 2) {
    try {
      auto [rho, upsilon] = von_matt_bounds(r.j[0], r.j[1], r.n);
      r.rho = std::ldexp(rho, -shift);
      r.upsilon = std::ldexp(upsilon, -shift);
    } catch (const std::domain_error& e) {
      err << "warning: " << path << ": " << e.what() << '\n';
    }
  }

  if (opts.oracle_check) {
    OracleDelta d;
    d.j_ref = oracle::trace_inverse_powers_dense(b, opts.max_order).values;
    d.max_rel_err = max_rel_diff(r.j, d.j_ref);
    if (r.j_type2) d.max_rel_err = std::max(d.max_rel_err, max_rel_diff(*r.j_type2, d.j_ref));
    d.sigma_min = std::ldexp(oracle::sigma_min_dense(b), -shift);
    if (!(d.max_rel_err <= opts.tol) && r.exit_code == kOk) {
      r.exit_code = kOracleMismatch;
      r.status = "oracle_mismatch";
    }
    r.oracle = std::move(d);
  }
  return r;
}

std::string to_json(const RunReport& r) {
  std::ostringstream os;
  os << "{\"input\": " << json_string(r.input) << ", \"n\": " << r.n << ", \"variant\": " << json_string(r.variant)
     << ", \"max_order\": " << r.max_order << ", \"status\": " << json_string(r.status) << ", \"J\": ";
  json_array(os, r.j);
  if (r.j_type2) {
    os << ", \"J_type2\": ";
    json_array(os, *r.j_type2);
    os << ", \"variant_max_rel_diff\": ";
    json_optional(os, r.variant_max_rel_diff);
  }
  os << ", \"theta\": ";
  json_array(os, r.theta);
  os << ", \"rho\": ";
  json_optional(os, r.rho);
  os << ", \"upsilon\": ";
  json_optional(os, r.upsilon);
  if (r.ops) {
    os << ", \"ops\": {\"adds\": " << r.ops->adds << ", \"subs\": " << r.ops->subs << ", \"muls\": " << r.ops->muls
       << ", \"divs\": " << r.ops->divs << '}';
  }
  if (r.oracle) {
    os << ", \"oracle\": {\"J_ref\": ";
    json_array(os, r.oracle->j_ref);
    os << ", \"max_rel_err\": ";
    json_number(os, r.oracle->max_rel_err);
    os << ", \"sigma_min\": ";
    json_number(os, r.oracle->sigma_min);
    os << '}';
  }
  if (r.scale_log2) os << ", \"scale_log2\": " << *r.scale_log2;
  os << ", \"wall_ms\": ";
  json_number(os, r.wall_ms);
  os << '}';
  return os.str();
}

std::string csv_header() { return "input,n,variant,order,J,theta,rho,upsilon,scale_log2,J_ref,adds,subs,muls,divs\n"; }

std::string to_csv(const RunReport& r) {
  std::ostringstream os;
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  auto emit = [&](const std::string& variant, const std::vector<double>& j) {
    for (std::size_t p = 1; p <= j.size(); ++p) {
      os << r.input << ',' << r.n << ',' << variant << ',' << p << ',' << format_double(j[p - 1]) << ','
         << (p <= r.theta.size() ? format_double(r.theta[p - 1]) : "") << ',' << opt(r.rho) << ','
         << opt(r.upsilon) << ',' << (r.scale_log2 ? std::to_string(*r.scale_log2) : "") << ','
         << (r.oracle && p <= r.oracle->j_ref.size() ? format_double(r.oracle->j_ref[p - 1]) : "") << ',';
      if (r.ops) {
        os << r.ops->adds << ',' << r.ops->subs << ',' << r.ops->muls << ',' << r.ops->divs;
      } else {
        os << ",,,";
      }
      os << '\n';
    }
  };
  emit(r.j_type2 ? "type1" : r.variant, r.j);
  if (r.j_type2) emit("type2", *r.j_type2);
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto parsed = parse_args(args, out, err);
  if (auto* code = std::get_if<int>(&parsed)) return *code;
  const RunOptions& opts = std::get<RunOptions>(parsed);

  if (opts.dump_input) {
    int code = kOk;
    for (const auto& path : opts.inputs) {
      try {
        out << format_matrix(parse_matrix_file(path, opts.permissive));
      } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        code = kInputError;
      }
    }
    return code;
  }

  // Inputs are independent; each task writes diagnostics to its own buffer.
  struct Outcome {
    std::optional<RunReport> report;
    std::string diagnostics;
  };
  std::vector<std::future<Outcome>> tasks;
  for (const auto& path : opts.inputs) {
    tasks.push_back(std::async(std::launch::async, [&opts, path] {
      std::ostringstream diag;
      auto rep = run_one(path, opts, diag);
      return Outcome{std::move(rep), diag.str()};
    }));
  }

  std::vector<RunReport> reports;
  bool input_error = false, overflow = false, mismatch = false;
  for (auto& t : tasks) {
    Outcome o = t.get();
    err << o.diagnostics;
    if (!o.report) {
      input_error = true;
      continue;
    }
    overflow |= o.report->exit_code == kOverflow;
    mismatch |= o.report->exit_code == kOracleMismatch;
    reports.push_back(std::move(*o.report));
  }

  if (opts.format == Format::csv) {
    if (!reports.empty()) out << csv_header();
    for (const auto& r : reports) out << to_csv(r);
  } else if (opts.inputs.size() == 1) {
    if (!reports.empty()) out << to_json(reports.front()) << '\n';
  } else {
    out << "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) out << "  " << to_json(reports[i]) << (i + 1 < reports.size() ? ",\n" : "\n");
    out << "]\n";
  }

  if (input_error) return kInputError;
  if (overflow) return kOverflow;
  if (mismatch) return kOracleMismatch;
  return kOk;
}

}  // namespace bidiag::cli
