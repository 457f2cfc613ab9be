#include "bidiag/bench.hpp"

#include "bidiag/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace bidiag::bench {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::integer(int lo, int hi) {
  const int span = hi - lo + 1;
  return lo + std::min(span - 1, static_cast<int>(uniform() * span));
}

Bidiagonal random_bidiagonal(std::size_t n, double lo, double hi, Rng& rng) {
  std::vector<double> d(n), c(n > 0 ? n - 1 : 0);
  for (double& v : d) v = rng.uniform(lo, hi);
  for (double& v : c) v = rng.uniform(lo, hi);
  return Bidiagonal(std::move(d), std::move(c));
}

std::vector<CostRecord> count_sweep(std::span<const std::size_t> ns, std::span<const int> ms,
                                    std::span<const Variant> variants, std::uint64_t seed) {
  std::vector<CostRecord> out;
  for (std::size_t n : ns) {
    Rng rng(seed ^ (0x9E3779B97F4A7C15ull * n));
    const Bidiagonal b = normalize_for_traces(random_bidiagonal(n, 0.5, 2.0, rng)).first;
    for (Variant v : variants) {
      const std::size_t m_count = v == Variant::fast2 ? 1 : ms.size();
      for (std::size_t mi = 0; mi < m_count; ++mi) {
        CostRecord r;
        r.n = n;
        r.m = v == Variant::fast2 ? 2 : ms[mi];
        r.variant = v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
          compute_traces(b, r.m, v, &r.ops);
        } catch (const TraceOverflow&) {
          r.overflow = true;
        }
        r.wall_ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count());
        out.push_back(r);
      }
    }
  }
  return out;
}

CostFit fit_cost_model(std::span<const CostRecord> records) {
  std::set<std::size_t> distinct_n;
  std::set<int> distinct_m;
  for (const auto& r : records) {
    if (r.overflow) throw std::invalid_argument("cannot fit a record that overflowed");
    if (r.ops.total() == 0) throw std::invalid_argument("record with zero operations");
    distinct_n.insert(r.n);
    distinct_m.insert(r.m);
  }
  if (distinct_n.size() < 2) throw std::invalid_argument("degenerate grid: need at least two distinct N");
  const bool fit_m = distinct_m.size() >= 2;
  const std::size_t k = fit_m ? 3 : 2;
  if (records.size() < k + 1 && fit_m) throw std::invalid_argument("degenerate grid: too few records");

  // Normal equations for y = log_c + a log M + b log N.
  double ata[3][3] = {};
  double aty[3] = {};
  auto row_of = [&](const CostRecord& r, double* x) {
    x[0] = 1.0;
    x[1] = std::log(static_cast<double>(r.n));
    if (fit_m) x[2] = std::log(static_cast<double>(r.m));
  };
  for (const auto& r : records) {
    double x[3];
    row_of(r, x);
    const double y = std::log(static_cast<double>(r.ops.total()));
    for (std::size_t i = 0; i < k; ++i) {
      aty[i] += x[i] * y;
      for (std::size_t j = 0; j < k; ++j) ata[i][j] += x[i] * x[j];
    }
  }
  // Gaussian elimination with partial pivoting on the k x k system.
  double sol[3] = {};
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(ata[r][col]) > std::abs(ata[piv][col])) piv = r;
    if (std::abs(ata[piv][col]) < 1e-12) throw std::invalid_argument("degenerate grid: singular fit");
    std::swap(ata[piv], ata[col]);
    std::swap(aty[piv], aty[col]);
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = ata[r][col] / ata[col][col];
      for (std::size_t j = col; j < k; ++j) ata[r][j] -= f * ata[col][j];
      aty[r] -= f * aty[col];
    }
  }
  for (std::size_t i = k; i-- > 0;) {
    double s = aty[i];
    for (std::size_t j = i + 1; j < k; ++j) s -= ata[i][j] * sol[j];
    sol[i] = s / ata[i][i];
  }

  CostFit fit;
  fit.log_c = sol[0];
  fit.b = sol[1];
  if (fit_m) fit.a = sol[2];

  double ss = 0.0;
  for (const auto& r : records) {
    double x[3];
    row_of(r, x);
    double pred = 0.0;
    for (std::size_t i = 0; i < k; ++i) pred += sol[i] * x[i];
    const double d = std::log(static_cast<double>(r.ops.total())) - pred;
    ss += d * d;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(records.size()));
  return fit;
}

void write_csv(std::ostream& os, std::span<const CostRecord> records) {
  os << "N,M,variant,adds,subs,muls,divs,wall_ns\n";
  for (const auto& r : records) {
    os << r.n << ',' << r.m << ',' << to_string(r.variant) << ',' << r.ops.adds << ',' << r.ops.subs << ','
       << r.ops.muls << ',' << r.ops.divs << ',' << r.wall_ns << '\n';
  }
}

}  // namespace bidiag::bench
