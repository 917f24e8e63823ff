// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace newscause {

/// Regularized incomplete beta I_x(a, b), evaluated with the standard
/// continued fraction (modified Lentz), symmetry-split at the usual
/// x < (a+1)/(a+b+2) boundary.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of the F distribution with (d1, d2) degrees of freedom.
double f_cdf(double x, int d1, int d2);

/// Inverse CDF, solved by bracketing bisection on f_cdf to ~1e-12 relative
/// width (well inside the 1e-8 contract). prob must be in (0, 1).
double f_quantile(double prob, int d1, int d2);

}  // namespace newscause
