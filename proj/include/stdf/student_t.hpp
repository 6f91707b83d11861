#pragma once

namespace stdf {

/// CDF of Student's t with nu > 0 degrees of freedom, through the
/// regularized incomplete beta function I_{nu/(nu+z^2)}(nu/2, 1/2).
double student_t_cdf(double z, double nu);

/// Upper quantile: the z with P(T > z) = p, for p in (0, 1).
double student_t_upper_quantile(double p, double nu);

}  // namespace stdf
