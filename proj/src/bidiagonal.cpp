#include "bidiag/bidiagonal.hpp"

#include <algorithm>
#include <cmath>

namespace bidiag {

double ScaleFactor::value() const { return std::ldexp(1.0, log2_alpha); }

Bidiagonal::Bidiagonal(std::vector<double> diag, std::vector<double> superdiag, bool permissive)
    : diag_(std::move(diag)), super_(std::move(superdiag)), permissive_(permissive) {
  using R = InvalidMatrix::Reason;
  if (diag_.empty()) throw InvalidMatrix(R::empty, 0, "matrix order must be at least 1");
  if (super_.size() + 1 != diag_.size()) {
    throw InvalidMatrix(R::length_mismatch, 0,
                        "expected " + std::to_string(diag_.size() - 1) +
                            " superdiagonal entries, got " + std::to_string(super_.size()));
  }
  for (std::size_t i = 0; i < diag_.size(); ++i) {
    const double v = diag_[i];
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw InvalidMatrix(R::bad_diagonal, i,
                          "diagonal entry " + std::to_string(i + 1) + " must be positive and finite");
    }
    if (!std::isfinite(v * v) || v * v == 0.0) {
      throw InvalidMatrix(R::bad_diagonal, i,
                          "square of diagonal entry " + std::to_string(i + 1) + " is out of range");
    }
  }
  for (std::size_t i = 0; i < super_.size(); ++i) {
    const double v = super_[i];
    const bool ok = std::isfinite(v) && (permissive_ ? v >= 0.0 : v > 0.0) && std::isfinite(v * v);
    if (!ok) {
      throw InvalidMatrix(R::bad_superdiagonal, i,
                          "superdiagonal entry " + std::to_string(i + 1) +
                              (permissive_ ? " must be non-negative and finite"
                                           : " must be positive and finite"));
    }
  }
}

double Bidiagonal::max_entry() const noexcept {
  double m = *std::max_element(diag_.begin(), diag_.end());
  for (double c : super_) m = std::max(m, c);
  return m;
}

Bidiagonal Bidiagonal::scaled(int log2) const {
  std::vector<double> d(diag_.size()), s(super_.size());
  std::transform(diag_.begin(), diag_.end(), d.begin(), [&](double v) { return std::ldexp(v, log2); });
  std::transform(super_.begin(), super_.end(), s.begin(), [&](double v) { return std::ldexp(v, log2); });
  return Bidiagonal(std::move(d), std::move(s), permissive_);
}

std::pair<Bidiagonal, ScaleFactor> prescale(const Bidiagonal& b) {
  // frexp gives max = m * 2^exp with m in [0.5, 1); 2^(1-exp) * max is in [1, 2).
  int exp = 0;
  std::frexp(b.max_entry(), &exp);
  const ScaleFactor alpha{1 - exp};
  return {b.scaled(alpha.log2_alpha), alpha};
}

Bidiagonal unscale(const Bidiagonal& b, ScaleFactor alpha) { return b.scaled(-alpha.log2_alpha); }

}  // namespace bidiag
