#include "bidiag/bounds.hpp"

#include <cmath>
#include <string>

namespace bidiag {

double theta_from_trace(double j, int p) {
  if (!std::isfinite(j) || !(j > 0.0)) {
    throw std::domain_error("trace of order " + std::to_string(p) + " must be finite and positive");
  }
  return std::pow(j, -1.0 / (2.0 * p));
}

std::vector<double> theta_bounds(const TraceSeries& j) {
  std::vector<double> out;
  out.reserve(j.values.size());
  for (int p = 1; p <= j.max_order(); ++p) out.push_back(theta_from_trace(j[p], p));
  return out;
}

std::pair<double, double> von_matt_bounds(double j1, double j2, std::size_t n) {
  if (n < 1) throw std::domain_error("matrix order must be at least 1");
  const double rho = theta_from_trace(j1, 1);
  if (!std::isfinite(j2) || !(j2 > 0.0)) throw std::domain_error("J2 must be finite and positive");

  const double nd = static_cast<double>(n);
  double radicand = nd * j2 / (j1 * j1) - 1.0;
  if (radicand < 0.0) {
    if (radicand < -1e-12) {
      throw std::domain_error("inconsistent traces: n*J2 < J1^2");
    }
    radicand = 0.0;
  }
  const double upsilon = std::sqrt(1.0 / j1) * std::sqrt(nd / (1.0 + std::sqrt((nd - 1.0) * radicand)));
  return {rho, upsilon};
}

std::pair<Bidiagonal, ScaleFactor> normalize_for_traces(const Bidiagonal& b) {
  // Bring the entries near 1 first so that J_1 itself is in range, then
  // move theta_1 = 2^t * m (m in [0.5, 1)) into [1, 2).
  auto [pre, alpha] = prescale(b);
  const double theta1 = theta_from_trace(trace2_fast(pre)[1], 1);
  int t = 0;
  std::frexp(theta1, &t);
  const int s = alpha.log2_alpha + 1 - t;
  try {
    return {b.scaled(s), ScaleFactor{s}};
  } catch (const InvalidMatrix&) {
    return {b, ScaleFactor{0}};
  }
}

BoundReport lower_bounds(const Bidiagonal& b, int max_order, const BoundOptions& opts) {
  if (opts.variant == Variant::fast2) {
    max_order = 2;
  } else if (max_order < 2) {
    throw std::invalid_argument("lower_bounds needs at least two orders for upsilon");
  }

  BoundReport r;
  r.n = b.size();
  std::optional<Bidiagonal> scaled;
  if (opts.normalize) {
    auto [nb, alpha] = normalize_for_traces(b);
    if (alpha.log2_alpha != 0) {
      scaled = std::move(nb);
      r.scale = alpha;
    }
  }
  const TraceSeries j = compute_traces(scaled ? *scaled : b, max_order, opts.variant);

  r.theta = theta_bounds(j);
  auto [rho, upsilon] = von_matt_bounds(j[1], j[2], r.n);
  r.rho = rho;
  r.upsilon = upsilon;

  if (r.scale.log2_alpha != 0) {
    const int back = -r.scale.log2_alpha;
    for (double& t : r.theta) t = std::ldexp(t, back);
    r.rho = std::ldexp(r.rho, back);
    r.upsilon = std::ldexp(r.upsilon, back);
  }
  return r;
}

}  // namespace bidiag
