#pragma once

namespace zebrasim {

/// Regularized incomplete beta function I_x(a, b), evaluated with the
/// continued-fraction expansion (modified Lentz), tolerance 1e-12.
double incomplete_beta(double a, double b, double x);

/// Student-t CDF with `df` degrees of freedom.
double student_t_cdf(double x, double df);

/// Two-sided p-value of a t statistic: P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);

/// Upper tail P(F >= f) of the F distribution with (d1, d2) degrees of freedom.
double f_tail_probability(double f, double d1, double d2);

}  // namespace zebrasim
