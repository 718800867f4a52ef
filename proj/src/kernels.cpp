#include "akhs/kernels.hpp"

#include "akhs/bspline.hpp"
#include "akhs/errors.hpp"

#include <algorithm>
#include <cmath>

namespace akhs {

namespace {

void require_width(double a) {
    if (!(a > 0.0)) throw ValidationError("averaged kernel: width must be positive");
}

// Anti-derivative of alpha for a profile-backed pair:
// I_alpha(t) = (1/a) (I2(t + a/2) - I2(t - a/2)).
RealFn alpha_anti_from_profile(const RadialProfile& profile, double a) {
    RealFn anti2 = profile.anti2;
    return [anti2, a](double t) { return (anti2(t + 0.5 * a) - anti2(t - 0.5 * a)) / a; };
}

} // namespace

double AveragedKernelPair::mean_alpha(double center, double w) const {
    if (!(w > 0.0)) throw ValidationError("mean_alpha: window width must be positive");
    double lo = center - 0.5 * w;
    double hi = center + 0.5 * w;
    if (alpha_anti) return (alpha_anti(hi) - alpha_anti(lo)) / w;
    std::vector<double> cuts;
    for (double b : alpha_breaks) {
        cuts.push_back(b);
        cuts.push_back(-b);
    }
    return mean_value(alpha, lo, hi, 1e-12, cuts);
}

double TensorKernel::alpha(std::span<const double> delta) const {
    if ((int)delta.size() != dim())
        throw ValidationError("tensor kernel: dimension mismatch");
    double prod = 1.0;
    for (size_t i = 0; i < factors.size(); ++i) prod *= factors[i].alpha(delta[i]);
    return prod;
}

double TensorKernel::kappa(std::span<const double> delta) const {
    if ((int)delta.size() != dim())
        throw ValidationError("tensor kernel: dimension mismatch");
    double prod = 1.0;
    for (size_t i = 0; i < factors.size(); ++i) prod *= factors[i].kappa(delta[i]);
    return prod;
}

AveragedKernelPair bspline_kernel_pair(int n, double a) {
    if (n < 1) throw ValidationError("bspline_kernel_pair: order must be >= 1");
    if (2 * n > 12) throw ValidationError("bspline_kernel_pair: order must be <= 6");
    require_width(a);
    AveragedKernelPair pair;
    pair.name = "bspline:" + std::to_string(n);
    pair.width = a;
    pair.source = PairSource::ClosedForm;
    pair.alpha = [n, a](double x) { return bspline_central(2 * n - 1, x / a) / a; };
    pair.kappa = [n, a](double x) { return bspline_central(2 * n, x / a) / a; };
    pair.is_indicator = (n == 1);
    if (n >= 2) {
        // The generating kernel is the previous-order reproducing kernel.
        RadialProfile base;
        base.name = "bspline-base:" + std::to_string(n);
        base.eval = [n, a](double r) { return bspline_central(2 * n - 2, r / a) / a; };
        pair.base = base;
    }
    for (int j = 0; j < n; ++j) pair.alpha_breaks.push_back(a * (j + 0.5));
    for (int j = 1; j <= n; ++j) pair.kappa_breaks.push_back(a * j);
    pair.support_radius = a * (2 * n - 1) * 0.5;
    return pair;
}

AveragedKernelPair pair_from_antiderivatives(const RadialProfile& profile, double a) {
    require_width(a);
    if (!profile.has_antiderivatives())
        throw UnsupportedConstructionError(
            "pair_from_antiderivatives: profile '" + profile.name +
            "' has no closed-form anti-derivatives");
    AveragedKernelPair pair;
    pair.name = profile.name;
    pair.width = a;
    pair.source = PairSource::Antiderivative;
    RealFn anti1 = profile.anti1;
    RealFn anti2 = profile.anti2;
    pair.alpha = [anti1, a](double x) {
        return (anti1(x + 0.5 * a) - anti1(x - 0.5 * a)) / a;
    };
    pair.kappa = [anti2, a](double x) {
        return (anti2(x + a) + anti2(x - a) - 2.0 * anti2(x)) / (a * a);
    };
    pair.base = profile;
    pair.alpha_anti = alpha_anti_from_profile(profile, a);
    return pair;
}

AveragedKernelPair matern_pair(double shape, double a) {
    require_width(a);
    RadialProfile profile = matern_profile(shape);
    AveragedKernelPair pair;
    pair.name = "matern";
    pair.width = a;
    pair.source = PairSource::ClosedForm;
    const double lam = shape;
    pair.alpha = [lam, a](double x) {
        double ax = std::abs(x);
        if (ax <= 0.5 * a)
            return (2.0 - std::exp(lam * (ax - 0.5 * a)) - std::exp(-lam * (ax + 0.5 * a))) /
                   (lam * a);
        return (std::exp(-lam * (ax - 0.5 * a)) - std::exp(-lam * (ax + 0.5 * a))) / (lam * a);
    };
    pair.kappa = [lam, a](double x) {
        double ax = std::abs(x);
        double la2 = lam * lam * a * a;
        if (ax <= a)
            return (2.0 * lam * (a - ax) + std::exp(lam * (ax - a)) +
                    std::exp(-lam * (ax + a)) - 2.0 * std::exp(-lam * ax)) /
                   la2;
        return (std::exp(-lam * (ax - a)) + std::exp(-lam * (ax + a)) -
                2.0 * std::exp(-lam * ax)) /
               la2;
    };
    pair.base = profile;
    pair.alpha_anti = alpha_anti_from_profile(profile, a);
    pair.alpha_breaks = {0.5 * a};
    pair.kappa_breaks = {a};
    pair.decay_rate = lam;
    return pair;
}

AveragedKernelPair inverse_quadratic_pair(double shape, double a) {
    // The finite-difference-of-anti-derivative forms, used unconditionally.
    AveragedKernelPair pair = pair_from_antiderivatives(inverse_quadratic_profile(shape), a);
    pair.source = PairSource::ClosedForm;
    return pair;
}

AveragedKernelPair inverse_multiquadric_pair(double shape, double a) {
    AveragedKernelPair pair =
        pair_from_antiderivatives(inverse_multiquadric_profile(shape), a);
    pair.source = PairSource::ClosedForm;
    return pair;
}

AveragedKernelPair mexican_hat_pair(double shape, double a) {
    require_width(a);
    RadialProfile profile = mexican_hat_profile(shape);
    AveragedKernelPair pair;
    pair.name = "mexican-hat";
    pair.width = a;
    pair.source = PairSource::ClosedForm;
    const double lam = shape;
    pair.alpha = [lam, a](double x) {
        double up = x + 0.5 * a;
        double dn = x - 0.5 * a;
        return (0.5 + x / a) * std::exp(-lam * up * up) +
               (0.5 - x / a) * std::exp(-lam * dn * dn);
    };
    pair.kappa = [lam, a](double x) {
        double ax = std::abs(x); // keeps evenness exact in floating point
        double up = ax + a;
        double dn = ax - a;
        return (2.0 * std::exp(-lam * ax * ax) - std::exp(-lam * up * up) -
                std::exp(-lam * dn * dn)) /
               (2.0 * lam * a * a);
    };
    pair.base = profile;
    pair.alpha_anti = alpha_anti_from_profile(profile, a);
    pair.decay_rate = lam; // e^{-lam x^2} decays even faster
    return pair;
}

AveragedKernelPair indicator_pair(double a) {
    require_width(a);
    AveragedKernelPair pair;
    pair.name = "indicator";
    pair.width = a;
    pair.source = PairSource::ClosedForm;
    pair.alpha = [a](double x) { return std::abs(x) <= 0.5 * a ? 1.0 / a : 0.0; };
    pair.kappa = [a](double x) {
        return std::max(0.0, 1.0 - std::abs(x) / a) / a;
    };
    pair.is_indicator = true;
    pair.alpha_anti = [a](double t) {
        return (std::clamp(t, -0.5 * a, 0.5 * a) + 0.5 * a) / a;
    };
    pair.alpha_breaks = {0.5 * a};
    pair.kappa_breaks = {a};
    pair.support_radius = 0.5 * a;
    return pair;
}

TensorKernel tensor(std::vector<AveragedKernelPair> factors) {
    if (factors.empty()) throw ValidationError("tensor: at least one factor required");
    return TensorKernel{std::move(factors)};
}

AveragedKernelPair pair_by_name(const std::string& name, double shape, double a) {
    if (name == "matern") return matern_pair(shape, a);
    if (name == "inverse-quadratic") return inverse_quadratic_pair(shape, a);
    if (name == "inverse-multiquadric") return inverse_multiquadric_pair(shape, a);
    if (name == "mexican-hat") return mexican_hat_pair(shape, a);
    if (name == "indicator") return indicator_pair(a);
    if (name.rfind("bspline:", 0) == 0) {
        int n = 0;
        try {
            n = std::stoi(name.substr(8));
        } catch (const std::exception&) {
            throw ValidationError("malformed bspline kernel name: " + name);
        }
        return bspline_kernel_pair(n, a);
    }
    throw ValidationError("unknown kernel: " + name);
}

} // namespace akhs
