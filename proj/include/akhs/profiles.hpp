#pragma once

#include "akhs/quadrature.hpp"

#include <string>

namespace akhs {

// Univariate generating function phi of a radial kernel, extended evenly to
// the real axis, together with its first and second anti-derivatives when
// they are available in closed form. shape is the dimensionless scale
// parameter lambda appearing inside phi.
struct RadialProfile {
    std::string name;
    double shape = 1.0;
    RealFn eval;  // phi(r), even
    RealFn anti1; // I_phi,  empty if unavailable
    RealFn anti2; // I_phi^2, empty if unavailable

    bool has_antiderivatives() const { return anti1 && anti2; }
};

RadialProfile matern_profile(double shape);
RadialProfile inverse_quadratic_profile(double shape);
RadialProfile inverse_multiquadric_profile(double shape);
RadialProfile mexican_hat_profile(double shape);
// Point evaluation only; the anti-derivative of the Gaussian is not
// elementary, so averaged kernels for it go through the quadrature path.
RadialProfile gauss_profile(double shape);

// Lookup by catalog name ("matern", "inverse-quadratic",
// "inverse-multiquadric", "mexican-hat", "gauss").
RadialProfile profile_by_name(const std::string& name, double shape);

} // namespace akhs
