#pragma once

#include "akhs/profiles.hpp"

namespace akhs {

// Radial averaged kernel over translates of the d-ball of radius a.
// alpha(r) is the mean of the radial profile phi over a ball at center
// distance r, computed from the spherical-cap integral with the regularized
// incomplete beta function. kappa re-applies the same averaging to alpha,
// so it is the associated reproducing-kernel profile.
class BallAveragedKernel {
public:
    BallAveragedKernel(int dim, double radius, RadialProfile profile,
                       double tolerance = 1e-10);

    int dim() const { return dim_; }
    double radius() const { return radius_; }
    const RadialProfile& profile() const { return profile_; }

    double alpha(double r) const;
    double kappa(double r) const;

private:
    double averaged(const RealFn& phi, double r, double tol) const;

    int dim_;
    double radius_;
    RadialProfile profile_;
    double tol_;
};

} // namespace akhs
