// special_functions.hpp - regularized incomplete gamma and binary entropy.
#pragma once

#include <cmath>
#include <stdexcept>

namespace fhlink {

namespace detail {

// Series expansion of P(a,x); converges fast for x < a+1.
inline double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x) = 1 - P(a,x); modified Lentz algorithm,
// reliable for x >= a+1.
inline double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
// P(a, 0) = 0, P(a, inf) = 1; also the CDF of Gamma(shape a, scale 1) at x.
inline double regularized_lower_incomplete_gamma(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma_p: shape must be positive");
  if (x < 0.0) throw std::invalid_argument("gamma_p: x must be non-negative");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return detail::gamma_p_series(a, x);
  return 1.0 - detail::gamma_q_contfrac(a, x);
}

// CDF of Gamma(shape k, scale s) at x.
inline double gamma_cdf(double shape, double scale, double x) {
  if (!(scale > 0.0)) throw std::invalid_argument("gamma_cdf: scale must be positive");
  if (x <= 0.0) return 0.0;
  return regularized_lower_incomplete_gamma(shape, x / scale);
}

// Binary entropy H(p) in bits; H(0) = H(1) = 0.
inline double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("binary_entropy: p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

}  // namespace fhlink
