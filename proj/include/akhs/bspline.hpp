#pragma once

namespace akhs {

// Central B-spline M_n(x), the (n-1)-fold self-convolution of the indicator
// of [-1/2, 1/2], evaluated through its bounded-support alternating sum.
// n = 1 is the indicator itself, taking the value 1 at |x| = 1/2.
// Supported for 1 <= n <= 12 (catastrophic cancellation beyond that).
double bspline_central(int n, double x);

} // namespace akhs
