#pragma once

#include <cstdint>

// Scalar special functions used by the probit link and by p-value
// computation. All functions are pure; out-of-domain arguments throw
// binreg::DomainError rather than returning NaN.

namespace binreg::specfun {

/// ln Gamma(x) for x > 0. Upward recurrence to x >= 15 followed by the
/// Stirling series; absolute error stays within a few ulp of the result.
double log_gamma(double x);

/// ln C(n, k). Exact symmetry log_choose(n, k) == log_choose(n, n - k).
double log_choose(std::int64_t n, std::int64_t k);

/// Complementary error function (Cody's rational Chebyshev approximations).
double erfc(double x);

/// Standard normal CDF.
double norm_cdf(double z);

/// Standard normal density.
double norm_pdf(double z);

/// Inverse of norm_cdf on (0, 1). Rational initial guess plus Newton
/// refinement against norm_cdf.
double norm_quantile(double p);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), evaluated
/// directly in the tail so that small survival probabilities keep their
/// relative accuracy.
double gamma_q(double a, double x);

/// Upper tail of the chi-square distribution with `df` degrees of freedom.
double chisq_sf(double x, int df);

}  // namespace binreg::specfun
