#pragma once

#include "akhs/kernels.hpp"
#include "akhs/quadrature.hpp"

#include <span>
#include <vector>

namespace akhs {

// Fourier transform samples of an even function, symmetric 1/sqrt(2*pi)
// normalization: f_hat(s) = (2/sqrt(2*pi)) int_0^R f(x) cos(s x) dx.
struct TransformSamples {
    std::vector<double> s;
    std::vector<double> value;
};

// Samples the transform at m uniform points in [0, s_max]. The integrand is
// truncated at radius R; splits at the given kink locations and panels
// shorter than the cosine half-period keep the oscillatory quadrature exact
// to roundoff for smooth pieces.
TransformSamples transform_samples(const RealFn& f, double s_max, int m, double radius,
                                   std::span<const double> breaks = {});

// Truncation radius for a catalog pair: exact support when compact,
// decay-based otherwise, falling back to fallback_radius.
double default_truncation(const AveragedKernelPair& pair, double fallback_radius = 60.0);

struct BandResult {
    int index = 0;
    double s_lo = 0.0, s_hi = 0.0;
    double min_value = 0.0, max_value = 0.0;
    int required_sign = +1; // +1: >= -delta, -1: <= +delta
    bool pass = false;
};

// Certificate of the alternating sign condition of alpha_hat on bands of
// width 2*pi/a. "certified" is sampling-based evidence, not a proof;
// "refuted" means a sampled value violated the required sign by more than
// the slack delta.
struct SpectralCertificate {
    double width = 0.0; // a
    double tolerance = 0.0;
    std::vector<BandResult> bands;
    bool certified = false;
};

// delta <= 0 picks the default slack 1e-9 * max |alpha_hat|.
SpectralCertificate certify_averaging(const RealFn& alpha, double a, double s_max,
                                      int m, double delta, double radius,
                                      std::span<const double> breaks = {});
// Pair overload with defaults s_max = 8 * (2*pi/a), m = 4096.
SpectralCertificate certify_averaging(const AveragedKernelPair& pair,
                                      double s_max = 0.0, int m = 4096,
                                      double delta = 0.0);

struct KappaHatResult {
    bool pass = false;      // min kappa_hat >= -delta
    double min_value = 0.0; // over the sample grid
    double tolerance = 0.0;
    // Largest |direct transform of kappa - alpha_hat * sinc factor|;
    // NaN when kappa was not available for the cross-check.
    double max_mismatch = 0.0;
};

// Checks nonnegativity of kappa_hat(s) = alpha_hat(s) * (2/(a s)) sin(a s/2)
// and cross-checks it against the direct transform of kappa.
KappaHatResult kappa_hat_check(const AveragedKernelPair& pair, double s_max = 0.0,
                               int m = 4096, double delta = 0.0);

} // namespace akhs
