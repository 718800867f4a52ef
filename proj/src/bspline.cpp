#include "akhs/bspline.hpp"

#include "akhs/errors.hpp"

#include <cmath>

namespace akhs {

double bspline_central(int n, double x) {
    if (n < 1) throw ValidationError("bspline_central: order must be >= 1");
    if (n > 12) throw ValidationError("bspline_central: order must be <= 12");
    double ax = std::abs(x);
    if (n == 1) return ax <= 0.5 ? 1.0 : 0.0;
    double half = 0.5 * n;
    if (ax >= half) return 0.0;

    int kmax = (int)std::floor(half - ax);
    double factorial = 1.0;
    for (int k = 2; k < n; ++k) factorial *= k;

    double sum = 0.0;
    double binom = 1.0; // C(n, k), updated incrementally
    for (int k = 0; k <= kmax; ++k) {
        double base = half - ax - k;
        double term = binom * std::pow(base, n - 1);
        sum += (k % 2 == 0) ? term : -term;
        binom = binom * (n - k) / (k + 1);
    }
    return sum / factorial;
}

} // namespace akhs
