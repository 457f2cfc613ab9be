#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>

#include "bidiag/bench.hpp"
#include "bidiag/bidiagonal.hpp"

namespace bidiag::test {

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

/// Distance in units in the last place between two finite doubles of equal sign.
inline std::int64_t ulp_distance(double a, double b) {
  std::int64_t ia, ib;
  std::memcpy(&ia, &a, sizeof a);
  std::memcpy(&ib, &b, sizeof b);
  return ia > ib ? ia - ib : ib - ia;
}

inline bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

inline Bidiagonal two_by_two() { return Bidiagonal({1.0, 1.0}, {1.0}); }
inline Bidiagonal one_by_one() { return Bidiagonal({std::sqrt(2.0)}, {}); }

}  // namespace bidiag::test
