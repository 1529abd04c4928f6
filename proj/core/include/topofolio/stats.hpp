#pragma once

namespace topofolio::stats {

/// Standard normal CDF.
double normal_cdf(double z);

/// Regularized incomplete beta function I_x(a, b), x in [0, 1].
double reg_incomplete_beta(double a, double b, double x);

/// CDF of the F distribution with (d1, d2) degrees of freedom.
double f_cdf(double x, double d1, double d2);

} // namespace topofolio::stats
