#include "akhs/special.hpp"

#include "akhs/errors.hpp"

#include <cmath>
#include <limits>

namespace akhs {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// Modified Lentz continued fraction for the incomplete beta.
double betacf(double p, double q, double z) {
    const double qab = p + q;
    const double qap = p + 1.0;
    const double qam = p - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * z / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        int m2 = 2 * m;
        double aa = m * (q - m) * z / ((qam + m2) * (p + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(p + m) * (qab + m) * z / ((p + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 10.0 * kEps) return h;
    }
    throw NumericError("reg_inc_beta: continued fraction did not converge");
}

// Series for the regularized lower gamma P(s, x), x < s+1.
double gamma_p_series(double s, double x) {
    double ap = s;
    double sum = 1.0 / s;
    double del = sum;
    for (int n = 1; n <= 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps)
            return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
    }
    throw NumericError("lower_inc_gamma: series did not converge");
}

// Continued fraction for the regularized upper gamma Q(s, x), x >= s+1.
double gamma_q_cf(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 10.0 * kEps)
            return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
    }
    throw NumericError("lower_inc_gamma: continued fraction did not converge");
}

} // namespace

double reg_inc_beta(double z, double p, double q) {
    if (!(p > 0.0) || !(q > 0.0))
        throw ValidationError("reg_inc_beta: p and q must be positive");
    if (!(z >= 0.0 && z <= 1.0))
        throw ValidationError("reg_inc_beta: z must lie in [0,1]");
    if (z == 0.0) return 0.0;
    if (z == 1.0) return 1.0;
    double front = std::exp(std::lgamma(p + q) - std::lgamma(p) - std::lgamma(q) +
                            p * std::log(z) + q * std::log1p(-z));
    if (z < (p + 1.0) / (p + q + 2.0))
        return front * betacf(p, q, z) / p;
    return 1.0 - front * betacf(q, p, 1.0 - z) / q;
}

double lower_inc_gamma(double s, double x) {
    if (!(s > 0.0)) throw ValidationError("lower_inc_gamma: s must be positive");
    if (!(x >= 0.0)) throw ValidationError("lower_inc_gamma: x must be nonnegative");
    if (x == 0.0) return 0.0;
    double p = (x < s + 1.0) ? gamma_p_series(s, x) : 1.0 - gamma_q_cf(s, x);
    return p * std::tgamma(s);
}

} // namespace akhs
