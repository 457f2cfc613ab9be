#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bidiag/bidiagonal.hpp"
#include "bidiag/trace.hpp"

// Dense brute-force reference used to check the recurrences. Everything
// here is O(n^3) and meant for matrices of a few hundred rows at most.
namespace bidiag::oracle {

/// Square dense matrix, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  double trace() const;
  double max_abs() const;
  double frobenius() const;
  DenseMatrix transposed() const;

  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y);
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Symmetric matrices are stored densely; symmetry is kept by construction.
using DenseSymmetric = DenseMatrix;

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// left: B B^T, right: B^T B.
enum class Side { left, right };

/// B as a dense upper triangular matrix.
DenseMatrix to_dense(const Bidiagonal& b);

/// Gram matrix of B built entry by entry (both triangles written from the same value).
DenseSymmetric gram(const Bidiagonal& b, Side side);

/// Gauss-Jordan inverse with partial pivoting; the result is symmetrized.
/// Throws SingularMatrix when a pivot falls below 1e-300.
DenseSymmetric dense_inverse(const DenseSymmetric& a);

/// B^{-1} by column-wise back substitution on the dense triangle.
DenseMatrix triangular_inverse(const Bidiagonal& b);

/// (B B^T)^{-1} = B^{-T} B^{-1} (left) or (B^T B)^{-1} = B^{-1} B^{-T} (right),
/// formed from the triangular inverse so that ill-conditioned Gram matrices
/// are never inverted directly.
DenseSymmetric inverse_gram(const Bidiagonal& b, Side side);

/// Tr((B^T B)^{-p}) for p = 1..M from successive dense powers of the inverse.
TraceSeries trace_inverse_powers_dense(const Bidiagonal& b, int max_order);

/// All eigenvalues by cyclic Jacobi rotations, ascending.
/// Throws NoConvergence after 100 sweeps.
std::vector<double> eigen_symmetric(const DenseSymmetric& a);

/// sigma_min(B) = 1 / sqrt(lambda_max((B^T B)^{-1})).
double sigma_min_dense(const Bidiagonal& b);

/// Diagonal of (B B^T)^{-1} (left) or (B^T B)^{-1} (right).
std::vector<double> inverse_diagonals(const Bidiagonal& b, Side side);

}  // namespace bidiag::oracle
