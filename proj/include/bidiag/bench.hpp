#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "bidiag/bidiagonal.hpp"
#include "bidiag/op_count.hpp"
#include "bidiag/trace.hpp"

namespace bidiag::bench {

/// Reproducible pseudo-random source.
///
/// std::mt19937_64 (whose output sequence is fixed by the C++ standard)
/// seeded with `seed`; each double is (x >> 11) * 2^-53, giving a value in
/// [0, 1) from the top 53 bits. The standard distributions are avoided
/// because their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double uniform();                         // [0, 1)
  double uniform(double lo, double hi);     // [lo, hi)
  int integer(int lo, int hi);              // [lo, hi], by scaling uniform()

 private:
  std::mt19937_64 engine_;
};

/// n x n bidiagonal with every entry drawn uniformly from [lo, hi).
Bidiagonal random_bidiagonal(std::size_t n, double lo, double hi, Rng& rng);

struct CostRecord {
  std::size_t n = 0;
  int m = 0;
  Variant variant = Variant::type1;
  OpCount ops;
  std::uint64_t wall_ns = 0;
  bool overflow = false;
};

/// Default seed for the sweep matrices.
inline constexpr std::uint64_t kDefaultSeed = 20130501;

/// Counts operations of every (N, M, variant) triple on a seeded matrix
/// with entries in [0.5, 2], passed through normalize_for_traces so that
/// high orders stay in range. The matrix for a given N depends only on
/// the seed and N. fast2 ignores M and is recorded with M = 2.
/// Overflowing runs are flagged and keep the operations counted so far.
std::vector<CostRecord> count_sweep(std::span<const std::size_t> ns, std::span<const int> ms,
                                    std::span<const Variant> variants,
                                    std::uint64_t seed = kDefaultSeed);

/// ops ~ c * M^a * N^b fitted by least squares on log(total ops).
struct CostFit {
  std::optional<double> a;  // empty when every record has the same M
  double b = 0.0;
  double log_c = 0.0;
  double residual = 0.0;    // root-mean-square log residual
};

/// Throws std::invalid_argument for a grid that does not determine the
/// exponents (fewer than two distinct N, or records that overflowed).
CostFit fit_cost_model(std::span<const CostRecord> records);

/// CSV with header N,M,variant,adds,subs,muls,divs,wall_ns.
void write_csv(std::ostream& os, std::span<const CostRecord> records);

}  // namespace bidiag::bench
