#pragma once

namespace akhs {

// Regularized incomplete beta function I_z(p, q) for z in [0,1], p,q > 0.
// Continued-fraction evaluation with the usual symmetry reduction.
double reg_inc_beta(double z, double p, double q);

// Lower incomplete gamma function gamma(s, x) = int_0^x t^{s-1} e^{-t} dt
// for s > 0, x >= 0. Series for x < s+1, continued fraction otherwise.
double lower_inc_gamma(double s, double x);

} // namespace akhs
