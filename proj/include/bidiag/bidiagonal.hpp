#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bidiag {

/// Raised when entries do not describe a valid upper bidiagonal matrix.
class InvalidMatrix : public std::invalid_argument {
 public:
  enum class Reason { length_mismatch, empty, bad_diagonal, bad_superdiagonal };

  InvalidMatrix(Reason reason, std::size_t index, const std::string& what)
      : std::invalid_argument(what), reason_(reason), index_(index) {}

  Reason reason() const noexcept { return reason_; }
  /// Zero-based position of the offending entry (0 for length errors).
  std::size_t index() const noexcept { return index_; }

 private:
  Reason reason_;
  std::size_t index_;
};

/// Power-of-two scale factor alpha = 2^log2_alpha.
struct ScaleFactor {
  int log2_alpha = 0;

  double value() const;
  friend bool operator==(const ScaleFactor&, const ScaleFactor&) = default;
};

/// Upper bidiagonal matrix B of order n with diagonal b_i > 0 and
/// superdiagonal c_i > 0 (c_i >= 0 in permissive mode).
///
/// Entries are stored as given. The kernels work on the squares
/// q_i = b_i^2 and e_i = c_i^2, which they form themselves.
/// Instances are immutable.
class Bidiagonal {
 public:
  /// Validates and stores the entries. Throws InvalidMatrix.
  Bidiagonal(std::vector<double> diag, std::vector<double> superdiag, bool permissive = false);

  std::size_t size() const noexcept { return diag_.size(); }
  std::span<const double> diag() const noexcept { return diag_; }
  std::span<const double> superdiag() const noexcept { return super_; }
  bool permissive() const noexcept { return permissive_; }

  /// q_i = b_i^2, zero-based.
  double q(std::size_t i) const { return diag_[i] * diag_[i]; }
  /// e_i = c_i^2, zero-based, i < size()-1.
  double e(std::size_t i) const { return super_[i] * super_[i]; }

  /// Largest entry in absolute value over both diagonals.
  double max_entry() const noexcept;

  /// Entry-wise product 2^log2 * B. Exact unless an entry over/underflows.
  Bidiagonal scaled(int log2) const;

  friend bool operator==(const Bidiagonal&, const Bidiagonal&) = default;

 private:
  std::vector<double> diag_;
  std::vector<double> super_;
  bool permissive_ = false;
};

inline Bidiagonal make_bidiagonal(std::vector<double> diag, std::vector<double> superdiag,
                                  bool permissive = false) {
  return Bidiagonal(std::move(diag), std::move(superdiag), permissive);
}

/// Scales B by a power of two so that its largest entry lies in [1, 2).
///
/// Returns (alpha*B, alpha). The traces and bounds of the scaled matrix
/// satisfy J_p(alpha*B) = alpha^(-2p) J_p(B) and theta_p(alpha*B) = alpha theta_p(B).
std::pair<Bidiagonal, ScaleFactor> prescale(const Bidiagonal& b);

/// Inverse of prescale: returns alpha^-1 * B.
Bidiagonal unscale(const Bidiagonal& b, ScaleFactor alpha);

}  // namespace bidiag
