#pragma once

namespace lpqb {

double normal_pdf(double x);
double normal_cdf(double x);

/// Inverse standard-normal CDF for p in (0, 1). Accurate to ~1e-15 via a
/// rational initial guess refined with Newton steps on the erfc-based CDF.
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Chi-square survival function P(X > x) with dof degrees of freedom.
double chi2_sf(double x, double dof);

}  // namespace lpqb
