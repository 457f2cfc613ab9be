#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bidiag/bidiagonal.hpp"
#include "bidiag/op_count.hpp"

namespace bidiag {

/// Which recurrence produced a trace series.
///  - type1: forward sweep over B^T B, coefficients e_{i-1}/q_i.
///  - type2: backward sweep over B B^T, coefficients e_i/q_i.
///  - fast2: single-loop, array-free J_1/J_2 kernel.
enum class Variant { type1, type2, fast2 };

std::string_view to_string(Variant v) noexcept;
/// Parses "type1", "type2" or "fast2".
std::optional<Variant> parse_variant(std::string_view s) noexcept;

/// J_1..J_M with J_p = Tr((B^T B)^{-p}). values[p-1] holds J_p.
struct TraceSeries {
  Variant variant = Variant::type1;
  std::vector<double> values;

  int max_order() const noexcept { return static_cast<int>(values.size()); }
  double operator[](int p) const { return values.at(static_cast<std::size_t>(p - 1)); }
};

/// Thrown when an intermediate quantity leaves the finite positive range.
/// `partial()` holds every order that completed, so lower-order bounds stay usable.
class TraceOverflow : public std::range_error {
 public:
  TraceOverflow(TraceSeries partial, int failed_order);

  const TraceSeries& partial() const noexcept { return partial_; }
  /// Largest order whose trace is available (0 when none).
  int completed_order() const noexcept { return partial_.max_order(); }
  int failed_order() const noexcept { return failed_order_; }

 private:
  TraceSeries partial_;
  int failed_order_;
};

/// Binomial coefficients C(p, k) for k = 1..p as doubles (exact for p <= 52).
struct BinomialRow {
  int p = 0;
  std::vector<double> coeffs;  // coeffs[k-1] = C(p, k)

  double operator[](int k) const { return coeffs.at(static_cast<std::size_t>(k - 1)); }
};

/// Builds row p from row p-1 by Pascal's rule, or from scratch when `prev` is empty.
/// Throws std::invalid_argument if p < 2 or prev->p != p-1.
BinomialRow binomial_row(const std::optional<BinomialRow>& prev, int p);

/// Working state of one column of a sweep, after all orders are updated.
struct ColumnState {
  std::size_t index = 0;      // zero-based matrix index i
  int order = 0;              // number of live orders
  double coefficient = 0.0;   // e_{i-1}/q_i (type1) or e_i/q_i (type2); 0 on the first column
  double inv_q = 0.0;         // 1/q_i
  std::span<const double> h;  // h[p-1] = h_i^(p)
  std::span<const double> H;  // H[p-1] = H_i^(p)
};

using ColumnVisitor = std::function<void(const ColumnState&)>;

/// Type I traces J_1..J_M by the forward column sweep. If `counter` is
/// non-null every scalar operation is added to it. Throws TraceOverflow.
TraceSeries trace_type1(const Bidiagonal& b, int max_order, OpCount* counter = nullptr);

/// Type II traces J_1..J_M by the backward column sweep.
TraceSeries trace_type2(const Bidiagonal& b, int max_order, OpCount* counter = nullptr);

/// J_1 and J_2 with one loop, no arrays and one division per index.
/// The counter covers the J_2 recurrence only; J_1 is a by-product
/// summed outside the instrumented arithmetic.
TraceSeries trace2_fast(const Bidiagonal& b, OpCount* counter = nullptr);

/// Dispatches to the kernel for `v`; fast2 requires max_order <= 2.
TraceSeries compute_traces(const Bidiagonal& b, int max_order, Variant v, OpCount* counter = nullptr);

/// Runs the type1 or type2 sweep and calls `visit` after each column.
/// Columns arrive in sweep order (ascending for type1, descending for type2).
TraceSeries sweep_columns(const Bidiagonal& b, int max_order, Variant v, const ColumnVisitor& visit);

}  // namespace bidiag
