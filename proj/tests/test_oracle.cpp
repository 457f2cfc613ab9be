#include <gtest/gtest.h>

#include <cmath>

#include "bidiag/bench.hpp"
#include "bidiag/oracle.hpp"
#include "bidiag/trace.hpp"
#include "test_support.hpp"

using namespace bidiag;
using namespace bidiag::oracle;
using bidiag::test::rel_err;

namespace {
DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  DenseMatrix m(rows.size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}
}  // namespace

TEST(Gram, TwoByTwo) {
  EXPECT_EQ(gram(test::two_by_two(), Side::right), from_rows({{1, 1}, {1, 2}}));
  EXPECT_EQ(gram(test::two_by_two(), Side::left), from_rows({{2, 1}, {1, 1}}));
}

TEST(Gram, OneByOneAndAgreementWithDenseProduct) {
  const auto g = gram(test::one_by_one(), Side::left);
  EXPECT_DOUBLE_EQ(g(0, 0), 2.0);
  bench::Rng rng(1);
  const Bidiagonal b = bench::random_bidiagonal(9, 0.5, 2.0, rng);
  const DenseMatrix d = to_dense(b);
  const DenseMatrix right = d.transposed() * d, left = d * d.transposed();
  const auto gr = gram(b, Side::right), gl = gram(b, Side::left);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) {
      EXPECT_DOUBLE_EQ(gr(i, j), right(i, j));
      EXPECT_DOUBLE_EQ(gl(i, j), left(i, j));
      EXPECT_EQ(gr(i, j), gr(j, i));
    }
}

TEST(DenseInverse, Examples) {
  const auto inv = dense_inverse(from_rows({{1, 1}, {1, 2}}));
  EXPECT_EQ(inv, from_rows({{2, -1}, {-1, 1}}));
  EXPECT_EQ(dense_inverse(from_rows({{2}})), from_rows({{0.5}}));
  EXPECT_EQ(dense_inverse(DenseMatrix::identity(5)), DenseMatrix::identity(5));
  EXPECT_THROW(dense_inverse(from_rows({{1, 1}, {1, 1}})), SingularMatrix);
}

TEST(DenseInverse, ResidualBound) {
  bench::Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 15));
    const auto a = gram(bench::random_bidiagonal(n, 0.5, 2.0, rng), Side::right);
    const auto prod = a * dense_inverse(a);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)));
    EXPECT_LE(worst, 1e-12 * a.max_abs() * static_cast<double>(n));
  }
}

TEST(TraceDense, Examples) {
  const auto j = trace_inverse_powers_dense(test::two_by_two(), 2);
  EXPECT_NEAR(j[1], 3.0, 1e-14);
  EXPECT_NEAR(j[2], 7.0, 1e-13);
  const auto s = trace_inverse_powers_dense(test::one_by_one(), 3);
  EXPECT_LT(rel_err(s[1], 0.5), 1e-15);
  EXPECT_LT(rel_err(s[2], 0.25), 1e-15);
  EXPECT_LT(rel_err(s[3], 0.125), 1e-15);
  EXPECT_THROW(trace_inverse_powers_dense(test::two_by_two(), 0), std::invalid_argument);
}

TEST(TraceDense, RandomEightByEightMatchesRecurrence) {
  bench::Rng rng(3);
  const Bidiagonal b = bench::random_bidiagonal(8, 0.5, 2.0, rng);
  const auto dense = trace_inverse_powers_dense(b, 6);
  const auto rec = trace_type1(b, 6);
  for (int p = 1; p <= 6; ++p) EXPECT_LT(rel_err(rec[p], dense[p]), 1e-9);
}

TEST(Eigen, Examples) {
  const auto ev = eigen_symmetric(from_rows({{1, 1}, {1, 2}}));
  EXPECT_NEAR(ev[0], (3 - std::sqrt(5.0)) / 2, 1e-15);
  EXPECT_NEAR(ev[1], (3 + std::sqrt(5.0)) / 2, 1e-15);
  EXPECT_EQ(eigen_symmetric(from_rows({{9, 0, 0}, {0, 1, 0}, {0, 0, 4}})), (std::vector<double>{1, 4, 9}));
  EXPECT_EQ(eigen_symmetric(from_rows({{2}})), (std::vector<double>{2}));
}

TEST(SigmaMin, Examples) {
  EXPECT_LT(rel_err(sigma_min_dense(test::two_by_two()), std::sqrt((3 - std::sqrt(5.0)) / 2)), 1e-14);
  EXPECT_LT(rel_err(sigma_min_dense(test::one_by_one()), std::sqrt(2.0)), 1e-15);
  EXPECT_LT(rel_err(sigma_min_dense(Bidiagonal({3, 3}, {0.0}, true)), 3.0), 1e-15);
}

TEST(InverseDiagonals, Examples) {
  EXPECT_EQ(inverse_diagonals(test::two_by_two(), Side::right), (std::vector<double>{2, 1}));
  EXPECT_EQ(inverse_diagonals(test::two_by_two(), Side::left), (std::vector<double>{1, 2}));
  for (auto side : {Side::left, Side::right}) EXPECT_LT(rel_err(inverse_diagonals(test::one_by_one(), side)[0], 0.5), 1e-15);
}

TEST(OracleProperties, SelfConsistency) {
  bench::Rng rng(4);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 25));
    const Bidiagonal b = bench::random_bidiagonal(n, 0.5, 2.0, rng);

    // Trace identities between the oracle's inverse diagonals and the sweeps.
    const auto right = inverse_diagonals(b, Side::right);
    const auto left = inverse_diagonals(b, Side::left);
    double sr = 0, sl = 0;
    for (double v : right) sr += v;
    for (double v : left) sl += v;
    EXPECT_LT(rel_err(sr, trace_type2(b, 1)[1]), 1e-10);
    EXPECT_LT(rel_err(sl, trace_type1(b, 1)[1]), 1e-10);

    // Eigenvalues of the Gram matrix: sum = trace, product = prod q_i.
    const auto g = gram(b, Side::right);
    const auto ev = eigen_symmetric(g);
    double sum = 0, prod = 1, prod_q = 1;
    for (double l : ev) sum += l, prod *= l;
    for (std::size_t i = 0; i < n; ++i) prod_q *= b.q(i);
    EXPECT_LT(rel_err(sum, g.trace()), 1e-12);
    // Forming B^T B costs eps*||G|| absolutely, so lambda_min is only
    // good to about eps*kappa relatively, however accurate the eigensolver.
    const double kappa = ev.back() / ev.front();
    EXPECT_LT(rel_err(prod, prod_q), 4.0 * n * 2.2e-16 * kappa) << "n=" << n << " kappa=" << kappa;

    // Two independent routes to Tr((B^T B)^-p).
    const auto dense = trace_inverse_powers_dense(b, 5);
    for (int p = 1; p <= 5; ++p) {
      double s = 0;
      for (double l : ev) s += std::pow(l, -p);
      EXPECT_LT(rel_err(s, dense[p]), 1e-9);
    }
  }
}

TEST(OracleProperties, IllConditionedInverseStaysAccurate) {
  // kappa(B^T B) ~ 1e20: the triangular route keeps the traces exact to rounding.
  const Bidiagonal b({1e-10, 1.0, 1.0}, {1.0, 1.0});
  const auto dense = trace_inverse_powers_dense(b, 3);
  const auto rec = trace_type1(b, 3);
  for (int p = 1; p <= 3; ++p) EXPECT_LT(rel_err(rec[p], dense[p]), 1e-12);
}
