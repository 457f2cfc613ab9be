#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bidiag/bidiagonal.hpp"
#include "bidiag/trace.hpp"

namespace bidiag {

/// Lower bounds on sigma_min(B) derived from the inverse-power traces.
struct BoundReport {
  std::vector<double> theta;  // theta[p-1] = J_p^{-1/(2p)}
  double rho = 0.0;           // J_1^{-1/2}, identical to theta[0]
  double upsilon = 0.0;       // von Matt's two-trace bound
  std::size_t n = 0;
  ScaleFactor scale{};        // B was scaled by 2^scale before the sweep
  std::optional<double> sigma_min;  // filled in by callers that ran the oracle
};

/// J_p^{-1/(2p)}. Throws std::domain_error unless J_p is finite and positive.
double theta_from_trace(double j, int p);

/// theta_p for every order in the series.
std::vector<double> theta_bounds(const TraceSeries& j);

/// (rho, upsilon) from J_1, J_2 and the matrix order.
///
/// upsilon = sqrt(1/J1) * sqrt(n / (1 + sqrt((n-1)(n J2/J1^2 - 1)))).
/// The radicand n J2/J1^2 - 1 is non-negative by Cauchy-Schwarz; values in
/// [-1e-12, 0) are rounding and clamp to 0, anything lower throws.
std::pair<double, double> von_matt_bounds(double j1, double j2, std::size_t n);

/// Scales B by 2^s so that theta_1 = J_1^{-1/2} lies in [1, 2).
///
/// Afterwards lambda_min >= 1, hence every J_p <= n and the sweep
/// intermediates stay below (p-1)! n. Traces map back exactly through
/// J_p(B) = 2^{2ps} J_p(2^s B). Returns s = 0 and B unchanged when the
/// scaled entries would leave the double range.
std::pair<Bidiagonal, ScaleFactor> normalize_for_traces(const Bidiagonal& b);

/// Options for lower_bounds().
struct BoundOptions {
  Variant variant = Variant::type1;
  /// Run the sweep on normalize_for_traces(B); results are mapped back exactly.
  bool normalize = true;
};

/// theta_1..theta_M, rho and upsilon for B. max_order >= 2 unless the
/// variant is fast2 (which always yields two orders). Throws TraceOverflow.
BoundReport lower_bounds(const Bidiagonal& b, int max_order, const BoundOptions& opts = {});

}  // namespace bidiag
