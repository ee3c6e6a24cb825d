#pragma once

namespace panelid {

// Regularized lower incomplete gamma P(a, x), series for x < a + 1 and a
// continued fraction otherwise. Absolute error below 1e-12 over the range
// used by the chi-squared wrappers.
double regularized_gamma_p(double a, double x);

// Central chi-squared CDF with `dof` degrees of freedom: P(dof/2, x/2).
double chi2_cdf(double x, int dof);

// Inverse of chi2_cdf in its first argument, by bracketed bisection to an
// absolute tolerance of 1e-10. prob must lie strictly inside (0,1).
double chi2_quantile(double prob, int dof);

// Noncentral chi-squared CDF via the Poisson mixture
//   sum_j e^{-delta/2} (delta/2)^j / j! * chi2_cdf(x, dof + 2j),
// truncated once the remaining Poisson mass is negligible.
double noncentral_chi2_cdf(double x, int dof, double delta);

}  // namespace panelid
