#include "bidiag/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace bidiag {

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, std::string token,
                       const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         message + (token.empty() ? "" : " '" + token + "'")),
      source_(std::move(source)),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

// Non-empty lines after comment stripping, each split into tokens.
std::vector<std::vector<Token>> tokenize(std::istream& in) {
  std::vector<std::vector<Token>> lines;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::vector<Token> toks;
    std::size_t pos = 0;
    while (pos < raw.size()) {
      while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
      if (pos >= raw.size()) break;
      const std::size_t start = pos;
      while (pos < raw.size() && !std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
      toks.push_back({raw.substr(start, pos - start), lineno, start + 1});
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

double parse_entry(const Token& t, const std::string& source) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(source, t.line, t.column, t.text, "number out of range");
  }
  if (ec != std::errc() || ptr != last) throw ParseError(source, t.line, t.column, t.text, "malformed number");
  return v;
}

}  // namespace

Bidiagonal parse_matrix(std::istream& in, const std::string& source, bool permissive) {
  const auto lines = tokenize(in);
  if (lines.empty()) throw ParseError(source, 1, 1, "", "missing matrix order");

  const Token& order_tok = lines[0][0];
  if (lines[0].size() != 1) {
    const Token& extra = lines[0][1];
    throw ParseError(source, extra.line, extra.column, extra.text, "unexpected token after matrix order");
  }
  long long n = 0;
  {
    const char* first = order_tok.text.data();
    const char* last = first + order_tok.text.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc() || ptr != last || n < 1) {
      throw ParseError(source, order_tok.line, order_tok.column, order_tok.text,
                       "matrix order must be a positive integer");
    }
  }
  const auto count = static_cast<std::size_t>(n);

  auto read_row = [&](std::size_t which, std::size_t expected, const char* what) {
    if (lines.size() <= which) {
      const std::size_t at = lines.back().back().line + 1;
      throw ParseError(source, at, 1, "", std::string("missing ") + what + " line");
    }
    const auto& row = lines[which];
    if (row.size() != expected) {
      const Token& t = row.size() > expected ? row[expected] : row.back();
      throw ParseError(source, t.line, t.column, row.size() > expected ? t.text : "",
                       std::string("expected ") + std::to_string(expected) + " " + what + " entries, found " +
                           std::to_string(row.size()));
    }
    std::vector<double> vals;
    vals.reserve(expected);
    for (const Token& t : row) vals.push_back(parse_entry(t, source));
    return vals;
  };

  std::vector<double> diag = read_row(1, count, "diagonal");
  std::vector<double> sup;
  std::size_t used = 2;
  if (count > 1) {
    sup = read_row(2, count - 1, "superdiagonal");
    used = 3;
  }
  if (lines.size() > used) {
    const Token& t = lines[used][0];
    throw ParseError(source, t.line, t.column, t.text, "unexpected trailing content");
  }

  try {
    return Bidiagonal(std::move(diag), std::move(sup), permissive);
  } catch (const InvalidMatrix& e) {
    const bool on_diag = e.reason() == InvalidMatrix::Reason::bad_diagonal;
    const Token& t = lines[on_diag ? 1 : 2][e.index()];
    const char* msg = on_diag ? "non-positive or non-finite diagonal entry"
                              : (permissive ? "negative or non-finite superdiagonal entry"
                                            : "non-positive or non-finite superdiagonal entry");
    throw ParseError(source, t.line, t.column, t.text, msg);
  }
}

Bidiagonal parse_matrix_file(const std::string& path, bool permissive) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, 0, "", "cannot open file");
  return parse_matrix(in, path, permissive);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_matrix(const Bidiagonal& b) {
  std::ostringstream os;
  os << b.size() << '\n';
  auto row = [&](std::span<const double> v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << format_double(v[i]);
    os << '\n';
  };
  row(b.diag());
  if (b.size() > 1) row(b.superdiag());
  return os.str();
}

}  // namespace bidiag
