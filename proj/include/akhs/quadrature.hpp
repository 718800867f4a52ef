#pragma once

#include <functional>
#include <span>
#include <vector>

namespace akhs {

using RealFn = std::function<double(double)>;

// Gauss-Legendre rule on [-1,1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights of the n-point Gauss-Legendre rule, computed by Newton
// iteration on the Legendre recurrence and cached per order.
const GaussRule& gauss_legendre(int n);

// Fixed-order Gauss-Legendre quadrature of f over [lo, hi].
double integrate_fixed(const RealFn& f, double lo, double hi, int order);

// Adaptive Gauss-Legendre quadrature with absolute tolerance. Interior
// breakpoints (kinks, jumps) are honored as initial subdivision points.
// Throws NumericError carrying the achieved estimate if the interval
// budget is exhausted before the tolerance is met.
double integrate(const RealFn& f, double lo, double hi, double tol,
                 std::span<const double> breaks = {});

// Mean value of f over [lo, hi] with absolute tolerance tol on the mean.
double mean_value(const RealFn& f, double lo, double hi, double tol,
                  std::span<const double> breaks = {});

} // namespace akhs
