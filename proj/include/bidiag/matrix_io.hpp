#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "bidiag/bidiagonal.hpp"

namespace bidiag {

/// Text-file parse failure with a 1-based position and the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, std::string token,
             const std::string& message);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

// Matrix file format:
//
//   N
//   b_1 ... b_N
//   c_1 ... c_{N-1}      (omitted when N = 1)
//
// '#' starts a comment that runs to the end of the line. Blank lines are
// ignored. Entries are decimal doubles.

/// Parses a matrix from `in`; `source` names the input in error messages.
Bidiagonal parse_matrix(std::istream& in, const std::string& source, bool permissive = false);

/// Opens and parses `path`. A file that cannot be opened is a ParseError at line 0.
Bidiagonal parse_matrix_file(const std::string& path, bool permissive = false);

/// Writes B in the file format with 17 significant digits, so that
/// parse_matrix reproduces it bit for bit.
std::string format_matrix(const Bidiagonal& b);

/// "%.17g" formatting of a double.
std::string format_double(double v);

}  // namespace bidiag
