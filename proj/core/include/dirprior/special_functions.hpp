#pragma once

#include <span>

namespace dirprior {

/// Log of the multivariate beta function, sum lgamma(a_i) - lgamma(sum a_i).
double log_multivariate_beta(std::span<const double> a);

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
/// Continued fraction (modified Lentz) on whichever side of
/// x = (a + 1)/(a + b + 2) converges fast, with I_x(a,b) = 1 - I_{1-x}(b,a).
double regularized_incomplete_beta(double a, double b, double x);

/// Density of beta(a, b) at x in [0, 1].
double beta_density(double a, double b, double x);

/// Survival function of the chi-square distribution.
double chi_squared_survival(double statistic, double degrees_of_freedom);

}  // namespace dirprior
