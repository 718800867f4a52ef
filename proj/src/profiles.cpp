#include "akhs/profiles.hpp"

#include "akhs/errors.hpp"

#include <cmath>

namespace akhs {

namespace {

void require_shape(double shape) {
    if (!(shape > 0.0)) throw ValidationError("radial profile: shape must be positive");
}

} // namespace

RadialProfile matern_profile(double shape) {
    require_shape(shape);
    RadialProfile p;
    p.name = "matern";
    p.shape = shape;
    const double lam = shape;
    p.eval = [lam](double r) { return std::exp(-lam * std::abs(r)); };
    // Odd anti-derivative with I(0) = 0.
    p.anti1 = [lam](double x) {
        double v = (1.0 - std::exp(-lam * std::abs(x))) / lam;
        return x < 0.0 ? -v : v;
    };
    p.anti2 = [lam](double x) {
        double ax = std::abs(x);
        return ax / lam + std::exp(-lam * ax) / (lam * lam);
    };
    return p;
}

RadialProfile inverse_quadratic_profile(double shape) {
    require_shape(shape);
    RadialProfile p;
    p.name = "inverse-quadratic";
    p.shape = shape;
    const double lam = shape;
    p.eval = [lam](double r) {
        double u = lam * r;
        return 1.0 / (1.0 + u * u);
    };
    p.anti1 = [lam](double x) { return std::atan(lam * x) / lam; };
    p.anti2 = [lam](double x) {
        double u = lam * x;
        return x * std::atan(u) / lam - std::log1p(u * u) / (2.0 * lam * lam);
    };
    return p;
}

RadialProfile inverse_multiquadric_profile(double shape) {
    require_shape(shape);
    RadialProfile p;
    p.name = "inverse-multiquadric";
    p.shape = shape;
    const double lam = shape;
    p.eval = [lam](double r) {
        double u = lam * r;
        return 1.0 / std::sqrt(1.0 + u * u);
    };
    p.anti1 = [lam](double x) { return std::asinh(lam * x) / lam; };
    p.anti2 = [lam](double x) {
        double u = lam * x;
        return x * std::asinh(u) / lam - std::sqrt(1.0 + u * u) / (lam * lam);
    };
    return p;
}

RadialProfile mexican_hat_profile(double shape) {
    require_shape(shape);
    RadialProfile p;
    p.name = "mexican-hat";
    p.shape = shape;
    const double lam = shape;
    p.eval = [lam](double r) {
        double r2 = r * r;
        return (1.0 - 2.0 * lam * r2) * std::exp(-lam * r2);
    };
    p.anti1 = [lam](double x) { return x * std::exp(-lam * x * x); };
    p.anti2 = [lam](double x) { return -std::exp(-lam * x * x) / (2.0 * lam); };
    return p;
}

RadialProfile gauss_profile(double shape) {
    require_shape(shape);
    RadialProfile p;
    p.name = "gauss";
    p.shape = shape;
    const double lam = shape;
    p.eval = [lam](double r) { return std::exp(-lam * r * r); };
    return p;
}

RadialProfile profile_by_name(const std::string& name, double shape) {
    if (name == "matern") return matern_profile(shape);
    if (name == "inverse-quadratic") return inverse_quadratic_profile(shape);
    if (name == "inverse-multiquadric") return inverse_multiquadric_profile(shape);
    if (name == "mexican-hat") return mexican_hat_profile(shape);
    if (name == "gauss") return gauss_profile(shape);
    throw ValidationError("unknown radial profile: " + name);
}

} // namespace akhs
