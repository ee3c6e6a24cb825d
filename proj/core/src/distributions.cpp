#include "panelid/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "panelid/errors.hpp"

namespace panelid {

namespace {

// Lower-tail series: P(a,x) = x^a e^-x / Gamma(a+1) * sum_n x^n / prod(a+1..a+n).
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper-tail continued fraction (modified Lentz) for Q(a,x), x >= a + 1.
double gamma_q_contfrac(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0)) throw domain_error("regularized_gamma_p: a must be positive");
  if (x <= 0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

double chi2_cdf(double x, int dof) {
  if (dof < 1) throw domain_error("chi2_cdf: dof must be positive");
  if (x <= 0) return 0.0;
  return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

double chi2_quantile(double prob, int dof) {
  if (dof < 1) throw domain_error("chi2_quantile: dof must be positive");
  if (!(prob > 0.0) || !(prob < 1.0))
    throw domain_error("chi2_quantile: prob must lie in (0,1), got " +
                       std::to_string(prob));
  double lo = 0.0;
  double hi = std::max(8.0, dof + 10.0 * std::sqrt(2.0 * dof));
  while (chi2_cdf(hi, dof) < prob) {
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-10 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (chi2_cdf(mid, dof) < prob ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double noncentral_chi2_cdf(double x, int dof, double delta) {
  if (dof < 1) throw domain_error("noncentral_chi2_cdf: dof must be positive");
  if (delta < 0)
    throw domain_error("noncentral_chi2_cdf: delta must be non-negative");
  if (x <= 0) return 0.0;
  if (delta == 0.0) return chi2_cdf(x, dof);

  const double half = 0.5 * delta;
  double weight = std::exp(-half);  // Poisson(j; delta/2) mass at j = 0
  double used_mass = weight;
  double sum = weight * chi2_cdf(x, dof);
  for (int j = 1; j < 10000; ++j) {
    weight *= half / j;
    used_mass += weight;
    sum += weight * chi2_cdf(x, dof + 2 * j);
    // The CDF factors decrease in j, so once almost all Poisson mass
    // is spent the tail of the series is below 1e-12 relative.
    if (1.0 - used_mass < 1e-14 && j > half) break;
  }
  return std::min(sum, 1.0);
}

}  // namespace panelid
