#pragma once

#include "akhs/profiles.hpp"
#include "akhs/quadrature.hpp"

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace akhs {

enum class PairSource { ClosedForm, Antiderivative, Quadrature };

// Averaging profile alpha and associated reproducing profile kappa for a
// fixed averaging width a (length of the 1D segment domain). Both functions
// are even; kappa is the width-a moving average of alpha.
struct AveragedKernelPair {
    std::string name;
    double width = 1.0; // a
    PairSource source = PairSource::ClosedForm;
    RealFn alpha;
    RealFn kappa;

    // Exact-overlap kernel: alpha is the normalized indicator, so the
    // reproducing kernel of arbitrary domains is |intersection|/(m1*m2).
    bool is_indicator = false;

    // Generating profile phi of the underlying native space, when known.
    // Required by the quadrature assembly path for non-uniform domains.
    std::optional<RadialProfile> base;

    // Anti-derivative of alpha (exact cell means), when available.
    RealFn alpha_anti;

    // Kink locations of alpha/kappa on [0, inf); quadrature split points.
    std::vector<double> alpha_breaks;
    std::vector<double> kappa_breaks;

    // Radius beyond which alpha vanishes (inf if not compactly supported).
    double support_radius = std::numeric_limits<double>::infinity();
    // Exponential decay rate hint of alpha (0 if unknown/slower).
    double decay_rate = 0.0;

    // Mean of alpha over [center - w/2, center + w/2]; exact through
    // alpha_anti when present, adaptive quadrature otherwise.
    double mean_alpha(double center, double w) const;
};

// Tensor-product kernel with one univariate averaged pair per axis.
struct TensorKernel {
    std::vector<AveragedKernelPair> factors;

    int dim() const { return (int)factors.size(); }
    double alpha(std::span<const double> delta) const;
    double kappa(std::span<const double> delta) const;
};

// --- catalog builders ------------------------------------------------------

// Pair (A_n, K_n) = ((1/a) M_{2n-1}(x/a), (1/a) M_{2n}(x/a)) of central
// B-spline kernels. n >= 1, a > 0.
AveragedKernelPair bspline_kernel_pair(int n, double a);

// Generic construction via symmetric finite differences of the first and
// second anti-derivative of the profile. Throws UnsupportedConstructionError
// when the profile lacks closed-form anti-derivatives.
AveragedKernelPair pair_from_antiderivatives(const RadialProfile& profile, double a);

AveragedKernelPair matern_pair(double shape, double a);
AveragedKernelPair inverse_quadratic_pair(double shape, double a);
AveragedKernelPair inverse_multiquadric_pair(double shape, double a);
AveragedKernelPair mexican_hat_pair(double shape, double a);
AveragedKernelPair indicator_pair(double a);

TensorKernel tensor(std::vector<AveragedKernelPair> factors);

// Catalog lookup: "matern", "inverse-quadratic", "inverse-multiquadric",
// "mexican-hat", "indicator", "bspline:<n>". shape is ignored by kernels
// without a shape parameter.
AveragedKernelPair pair_by_name(const std::string& name, double shape, double a);

} // namespace akhs
