#include "bidiag/trace.hpp"

#include <cmath>
#include <limits>
#include <type_traits>

namespace bidiag {

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::type1: return "type1";
    case Variant::type2: return "type2";
    case Variant::fast2: return "fast2";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view s) noexcept {
  if (s == "type1") return Variant::type1;
  if (s == "type2") return Variant::type2;
  if (s == "fast2") return Variant::fast2;
  return std::nullopt;
}

TraceOverflow::TraceOverflow(TraceSeries partial, int failed_order)
    : std::range_error("trace of order " + std::to_string(failed_order) +
                       " left the finite positive range of double"),
      partial_(std::move(partial)),
      failed_order_(failed_order) {}

namespace {

template <class T>
bool finite_positive(T v) {
  const double d = to_double(v);
  return std::isfinite(d) && d > 0.0;
}

template <class T>
bool finite(T v) {
  return std::isfinite(to_double(v));
}

// rows[p][k] = C(p, k) for 1 <= k <= p, built with the scalar type so that
// its additions are tallied along with the rest of the kernel.
template <class T>
std::vector<std::vector<T>> binomial_table(int max_p) {
  std::vector<std::vector<T>> rows(static_cast<std::size_t>(max_p) + 1);
  if (max_p >= 1) rows[1] = {T(0.0), T(1.0)};
  for (int p = 2; p <= max_p; ++p) {
    auto& row = rows[p];
    const auto& prev = rows[p - 1];
    row.assign(static_cast<std::size_t>(p) + 1, T(0.0));
    row[1] = T(static_cast<double>(p));
    for (int k = 2; k <= p - 1; ++k) row[k] = prev[k - 1] + prev[k];
    row[p] = T(1.0);
  }
  return rows;
}

// Shared column sweep for both recurrence types. Column j of the sweep is
// matrix index i = j (forward) or i = n-1-j (backward); the coupling entry
// is c_{i-1} (forward) or c_i (backward), i.e. the superdiagonal entry
// between the current and the previous column of the sweep.
template <class T, class Visit>
TraceSeries sweep(const Bidiagonal& b, int max_order, Variant variant, Visit&& visit) {
  if (max_order < 1) throw std::invalid_argument("max_order must be at least 1");
  const bool backward = variant == Variant::type2;
  const std::size_t n = b.size();
  const auto diag = b.diag();
  const auto sup = b.superdiag();
  const int m = max_order;

  const auto binom = binomial_table<T>(m);

  // Slot 0 is unused so that h[p] reads as h^(p).
  std::vector<T> h_prev(static_cast<std::size_t>(m) + 1, T(0.0));
  std::vector<T> h(h_prev.size(), T(0.0));
  std::vector<T> big_h(h_prev.size(), T(0.0));
  std::vector<T> sums(h_prev.size(), T(0.0));
  std::vector<double> h_out, big_h_out;
  int live = m;

  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = backward ? n - 1 - j : j;
    const T bi(diag[i]);
    const T inv_q = T(1.0) / (bi * bi);
    T coeff(0.0);

    if (j == 0) {
      h[1] = inv_q;
      big_h[1] = h[1];
      for (int p = 2; p <= live; ++p) {
        h[p] = T(0.0);
        big_h[p] = binom[p - 1][1] * h[1] * big_h[p - 1];
      }
    } else {
      const T c(sup[backward ? i : i - 1]);
      coeff = c * c * inv_q;
      h[1] = coeff * h_prev[1] + inv_q;
      big_h[1] = h[1];
      for (int p = 2; p <= live; ++p) {
        const T pd(static_cast<double>(p));
        T val = coeff * (h_prev[p] + pd * h_prev[1] * h_prev[p - 1]);
        if (p > 2) {
          T acc = binom[p][1] * h_prev[1] * h[p - 1];
          for (int k = 2; k <= p - 2; ++k) acc = acc + binom[p][k] * h_prev[k] * h[p - k];
          val = val + acc;
        }
        h[p] = val;

        T acc = binom[p - 1][1] * h[1] * big_h[p - 1];
        for (int k = 2; k <= p - 1; ++k) acc = acc + binom[p - 1][k] * h[k] * big_h[p - k];
        big_h[p] = h[p] + acc;
      }
    }

    for (int p = 1; p <= live; ++p) sums[p] = (j == 0) ? big_h[p] : sums[p] + big_h[p];

    // Orders are coupled upward only, so the first non-finite order caps
    // every higher one; lower orders keep running.
    for (int p = 1; p <= live; ++p) {
      if (!finite(h[p]) || !finite(big_h[p]) || !finite(sums[p])) {
        live = p - 1;
        break;
      }
    }

    if constexpr (std::is_same_v<T, double>) {
      h_out.assign(h.begin() + 1, h.begin() + 1 + live);
      big_h_out.assign(big_h.begin() + 1, big_h.begin() + 1 + live);
      visit(ColumnState{i, live, coeff, inv_q, h_out, big_h_out});
    }
    std::swap(h_prev, h);
    if (live == 0) break;
  }

  // J_p = sums[p] / (p-1)!, with the factorial kept as a running product.
  TraceSeries out{variant, {}};
  out.values.reserve(static_cast<std::size_t>(live));
  T fact(1.0);
  for (int p = 1; p <= live; ++p) {
    if (p >= 3) fact = fact * T(static_cast<double>(p - 1));
    T jp = sums[p];
    if (p >= 3) {
      if (finite(fact)) {
        jp = jp / fact;
      } else {
        for (int k = 2; k <= p - 1; ++k) jp = jp / T(static_cast<double>(k));
      }
    }
    if (!finite_positive(jp)) {
      live = p - 1;
      break;
    }
    out.values.push_back(to_double(jp));
  }
  if (live < m) throw TraceOverflow(std::move(out), live + 1);
  return out;
}

template <class T>
TraceSeries fast2(const Bidiagonal& b) {
  const auto diag = b.diag();
  const auto sup = b.superdiag();
  const std::size_t n = b.size();

  T h1 = T(1.0) / (T(diag[0]) * T(diag[0]));
  T phi = h1 * h1;
  T h2 = phi;
  T j2 = h2;
  double j1 = to_double(h1);
  for (std::size_t i = 1; i < n; ++i) {
    const T bi(diag[i]);
    const T ci(sup[i - 1]);
    const T ib = T(1.0) / (bi * bi);
    const T f = ci * ci * ib;
    h2 = f * (h2 + phi);
    h1 = f * h1 + ib;
    phi = h1 * h1;
    h2 = h2 + phi;
    j2 = j2 + h2;
    j1 += to_double(h1);
  }

  TraceSeries out{Variant::fast2, {}};
  if (!finite_positive(j1)) throw TraceOverflow(std::move(out), 1);
  out.values.push_back(j1);
  if (!finite_positive(j2)) throw TraceOverflow(std::move(out), 2);
  out.values.push_back(to_double(j2));
  return out;
}

struct NoVisit {
  void operator()(const ColumnState&) const noexcept {}
};

TraceSeries run_sweep(const Bidiagonal& b, int max_order, Variant v, OpCount* counter) {
  if (counter == nullptr) return sweep<double>(b, max_order, v, NoVisit{});
  CountingScope scope(*counter);
  return sweep<Counted>(b, max_order, v, NoVisit{});
}

}  // namespace

BinomialRow binomial_row(const std::optional<BinomialRow>& prev, int p) {
  if (p < 2) throw std::invalid_argument("binomial row order must be at least 2");
  if (prev && prev->p != p - 1) {
    throw std::invalid_argument("previous binomial row has order " + std::to_string(prev->p) +
                                ", expected " + std::to_string(p - 1));
  }
  if (!prev) {
    BinomialRow row{1, {1.0}};
    for (int r = 2; r <= p; ++r) row = binomial_row(row, r);
    return row;
  }
  BinomialRow row{p, std::vector<double>(static_cast<std::size_t>(p), 0.0)};
  row.coeffs[0] = static_cast<double>(p);
  for (int k = 2; k <= p - 1; ++k) row.coeffs[k - 1] = (*prev)[k - 1] + (*prev)[k];
  row.coeffs[p - 1] = 1.0;
  return row;
}

TraceSeries trace_type1(const Bidiagonal& b, int max_order, OpCount* counter) {
  return run_sweep(b, max_order, Variant::type1, counter);
}

TraceSeries trace_type2(const Bidiagonal& b, int max_order, OpCount* counter) {
  return run_sweep(b, max_order, Variant::type2, counter);
}

TraceSeries trace2_fast(const Bidiagonal& b, OpCount* counter) {
  if (counter == nullptr) return fast2<double>(b);
  CountingScope scope(*counter);
  return fast2<Counted>(b);
}

TraceSeries compute_traces(const Bidiagonal& b, int max_order, Variant v, OpCount* counter) {
  if (max_order < 1) throw std::invalid_argument("max_order must be at least 1");
  switch (v) {
    case Variant::type1: return trace_type1(b, max_order, counter);
    case Variant::type2: return trace_type2(b, max_order, counter);
    case Variant::fast2: {
      if (max_order > 2) throw std::invalid_argument("fast2 computes orders 1 and 2 only");
      auto s = trace2_fast(b, counter);
      s.values.resize(static_cast<std::size_t>(max_order));
      return s;
    }
  }
  throw std::invalid_argument("unknown variant");
}

TraceSeries sweep_columns(const Bidiagonal& b, int max_order, Variant v, const ColumnVisitor& visit) {
  if (v == Variant::fast2) throw std::invalid_argument("fast2 has no column state");
  return sweep<double>(b, max_order, v, [&](const ColumnState& s) { visit(s); });
}

}  // namespace bidiag
