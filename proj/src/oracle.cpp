#include "bidiag/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace bidiag::oracle {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double DenseMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double DenseMatrix::frobenius() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.n_ != y.n_) throw std::invalid_argument("dimension mismatch");
  const std::size_t n = x.n_;
  DenseMatrix z(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) z(i, j) += xik * y(k, j);
    }
  return z;
}

DenseMatrix to_dense(const Bidiagonal& b) {
  const std::size_t n = b.size();
  DenseMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = b.diag()[i];
    if (i + 1 < n) d(i, i + 1) = b.superdiag()[i];
  }
  return d;
}

DenseSymmetric gram(const Bidiagonal& b, Side side) {
  const std::size_t n = b.size();
  const auto d = b.diag();
  const auto c = b.superdiag();
  DenseSymmetric g(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (side == Side::right) {
      // (B^T B)_ii = q_i + e_{i-1}, (B^T B)_{i,i+1} = b_i c_i
      g(i, i) = d[i] * d[i] + (i > 0 ? c[i - 1] * c[i - 1] : 0.0);
      if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = d[i] * c[i];
    } else {
      // (B B^T)_ii = q_i + e_i, (B B^T)_{i,i+1} = c_i b_{i+1}
      g(i, i) = d[i] * d[i] + (i + 1 < n ? c[i] * c[i] : 0.0);
      if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = c[i] * d[i + 1];
    }
  }
  return g;
}

DenseSymmetric dense_inverse(const DenseSymmetric& a) {
  const std::size_t n = a.size();
  DenseMatrix w = a;
  DenseMatrix inv = DenseMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(w(r, col)) > std::abs(w(piv, col))) piv = r;
    if (std::abs(w(piv, col)) < 1e-300) {
      throw SingularMatrix("pivot below 1e-300 in column " + std::to_string(col + 1));
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(w(col, j), w(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    }
    const double p = w(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      w(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = w(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        w(r, j) -= f * w(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) inv(i, j) = inv(j, i) = 0.5 * (inv(i, j) + inv(j, i));
  return inv;
}

DenseMatrix triangular_inverse(const Bidiagonal& b) {
  const DenseMatrix u = to_dense(b);
  const std::size_t n = u.size();
  DenseMatrix x(n);
  for (std::size_t col = 0; col < n; ++col) {
    // Solve U x = e_col from the bottom row up.
    for (std::size_t r = col + 1; r-- > 0;) {
      double s = (r == col) ? 1.0 : 0.0;
      for (std::size_t k = r + 1; k <= col; ++k) s -= u(r, k) * x(k, col);
      x(r, col) = s / u(r, r);
    }
  }
  return x;
}

DenseSymmetric inverse_gram(const Bidiagonal& b, Side side) {
  const DenseMatrix w = triangular_inverse(b);
  const std::size_t n = w.size();
  DenseSymmetric g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += (side == Side::right) ? w(i, k) * w(j, k) : w(k, i) * w(k, j);
      g(i, j) = g(j, i) = s;
    }
  return g;
}

TraceSeries trace_inverse_powers_dense(const Bidiagonal& b, int max_order) {
  if (max_order < 1) throw std::invalid_argument("max_order must be at least 1");
  const DenseSymmetric x = inverse_gram(b, Side::right);
  TraceSeries out{Variant::type1, {}};
  DenseMatrix power = x;
  out.values.push_back(power.trace());
  for (int p = 2; p <= max_order; ++p) {
    power = power * x;
    out.values.push_back(power.trace());
  }
  return out;
}

std::vector<double> eigen_symmetric(const DenseSymmetric& a_in) {
  DenseMatrix a = a_in;
  const std::size_t n = a.size();
  const double norm = a.frobenius();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  // Besides the normwise test, every pair must be negligible relative to
  // its own diagonal entries; for positive definite input this keeps small
  // eigenvalues accurate to working precision of the scaled matrix.
  auto pairs_negligible = [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (std::abs(a(i, j)) > 1e-16 * std::sqrt(std::abs(a(i, i) * a(j, j)))) return false;
    return true;
  };

  int sweeps = 0;
  while (off_norm() > 1e-14 * norm || !pairs_negligible()) {
    if (++sweeps > 100) throw NoConvergence("Jacobi iteration did not converge in 100 sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle from tan(2 phi) = 2 a_pq / (a_qq - a_pp), smaller root.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double sigma_min_dense(const Bidiagonal& b) {
  const auto ev = eigen_symmetric(inverse_gram(b, Side::right));
  return 1.0 / std::sqrt(ev.back());
}

std::vector<double> inverse_diagonals(const Bidiagonal& b, Side side) {
  const DenseMatrix w = triangular_inverse(b);
  const std::size_t n = w.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double v = (side == Side::right) ? w(i, k) : w(k, i);
      d[i] += v * v;
    }
  return d;
}

}  // namespace bidiag::oracle
