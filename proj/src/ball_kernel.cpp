#include "akhs/ball_kernel.hpp"

#include "akhs/errors.hpp"
#include "akhs/special.hpp"

#include <algorithm>
#include <cmath>

namespace akhs {

BallAveragedKernel::BallAveragedKernel(int dim, double radius, RadialProfile profile,
                                       double tolerance)
    : dim_(dim), radius_(radius), profile_(std::move(profile)), tol_(tolerance) {
    if (dim_ < 2 || dim_ > 10)
        throw ValidationError("BallAveragedKernel: supported dimensions are 2..10");
    if (!(radius_ > 0.0)) throw ValidationError("BallAveragedKernel: radius must be positive");
    if (!profile_.eval) throw ValidationError("BallAveragedKernel: profile not evaluable");
    if (!(tol_ > 0.0)) throw ValidationError("BallAveragedKernel: tolerance must be positive");
}

double BallAveragedKernel::averaged(const RealFn& phi, double r, double tol) const {
    const int d = dim_;
    const double a = radius_;
    const double ad = std::pow(a, d);

    auto radial = [&](double rho) { return phi(rho) * std::pow(rho, d - 1); };
    // Normalized area fraction of the spherical cap cut out by the ball at
    // distance r, as a function of the shell radius rho. The cosine of the
    // polar angle is clamped against roundoff at the geometric edges.
    auto cap = [&](double rho) {
        if (rho <= 0.0) return 0.0;
        double c = (rho * rho + r * r - a * a) / (2.0 * rho * r);
        c = std::clamp(c, -1.0, 1.0);
        double z = std::clamp(1.0 - c * c, 0.0, 1.0);
        return reg_inc_beta(z, 0.5 * (d - 1), 0.5);
    };

    if (r <= 1e-14 * a) {
        // Full shells only: alpha(0) = (d / a^d) int_0^a phi rho^{d-1}.
        double pref = d / ad;
        return pref * integrate(radial, 0.0, a, tol / pref);
    }
    if (r >= a) {
        double pref = 0.5 * d / ad;
        auto f = [&](double rho) { return radial(rho) * cap(rho); };
        return pref * integrate(f, r - a, r + a, tol / pref);
    }

    // 0 < r < a: full shells, then caps with polar angle beyond pi/2,
    // then caps with polar angle below pi/2.
    const double m = std::sqrt((a - r) * (a + r));
    const double pref_full = d / ad;
    const double pref_half = 0.5 * d / ad;
    double t1 = integrate(radial, 0.0, a - r, (tol / 3.0) / pref_full);
    auto f2 = [&](double rho) { return radial(rho) * (1.0 - 0.5 * cap(rho)); };
    double t2 = m > a - r ? integrate(f2, a - r, m, (tol / 3.0) / pref_full) : 0.0;
    auto f3 = [&](double rho) { return radial(rho) * cap(rho); };
    double t3 = a + r > m ? integrate(f3, m, a + r, (tol / 3.0) / pref_half) : 0.0;
    return pref_full * (t1 + t2) + pref_half * t3;
}

double BallAveragedKernel::alpha(double r) const {
    if (!(r >= 0.0)) throw ValidationError("BallAveragedKernel::alpha: r must be nonnegative");
    return averaged(profile_.eval, r, tol_);
}

double BallAveragedKernel::kappa(double r) const {
    if (!(r >= 0.0)) throw ValidationError("BallAveragedKernel::kappa: r must be nonnegative");
    // Re-average alpha over the ball; inner evaluations get a tighter budget.
    double inner_tol = 0.1 * tol_;
    auto alpha_fn = [&](double rho) { return averaged(profile_.eval, rho, inner_tol); };
    return averaged(alpha_fn, r, 10.0 * tol_);
}

} // namespace akhs
