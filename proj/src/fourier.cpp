#include "akhs/fourier.hpp"

#include "akhs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace akhs {

namespace {

double sinc_factor(double a, double s) {
    if (s == 0.0) return 1.0;
    return 2.0 / (a * s) * std::sin(0.5 * a * s);
}

double cosine_integral(const RealFn& f, double s, double radius,
                       std::span<const double> breaks) {
    // Pieces between kinks, each subdivided below the cosine half-period.
    std::vector<double> cuts{0.0};
    for (double b : breaks)
        if (b > 0.0 && b < radius) cuts.push_back(b);
    cuts.push_back(radius);
    std::sort(cuts.begin(), cuts.end());
    const GaussRule& gl = gauss_legendre(8);
    double total = 0.0;
    for (size_t p = 0; p + 1 < cuts.size(); ++p) {
        double lo = cuts[p], hi = cuts[p + 1];
        if (!(hi > lo)) continue;
        int panels = std::max(1, (int)std::ceil((hi - lo) * std::max(s, 1.0) /
                                                std::numbers::pi));
        double h = (hi - lo) / panels;
        for (int q = 0; q < panels; ++q) {
            double mid = lo + (q + 0.5) * h;
            double sum = 0.0;
            for (size_t i = 0; i < gl.nodes.size(); ++i) {
                double x = mid + 0.5 * h * gl.nodes[i];
                sum += gl.weights[i] * f(x) * std::cos(s * x);
            }
            total += 0.5 * h * sum;
        }
    }
    return total;
}

} // namespace

TransformSamples transform_samples(const RealFn& f, double s_max, int m, double radius,
                                   std::span<const double> breaks) {
    if (!(s_max > 0.0)) throw ValidationError("transform_samples: s_max must be positive");
    if (m < 2) throw ValidationError("transform_samples: need at least 2 samples");
    if (!(radius > 0.0))
        throw ValidationError("transform_samples: truncation radius must be positive");
    const double norm = 2.0 / std::sqrt(2.0 * std::numbers::pi);
    TransformSamples out;
    out.s.resize(m);
    out.value.resize(m);
    for (int j = 0; j < m; ++j) {
        double s = s_max * j / (m - 1);
        out.s[j] = s;
        out.value[j] = norm * cosine_integral(f, s, radius, breaks);
    }
    return out;
}

double default_truncation(const AveragedKernelPair& pair, double fallback_radius) {
    if (std::isfinite(pair.support_radius)) return pair.support_radius;
    if (pair.decay_rate > 0.0) return pair.width + 40.0 / pair.decay_rate;
    return fallback_radius;
}

SpectralCertificate certify_averaging(const RealFn& alpha, double a, double s_max,
                                      int m, double delta, double radius,
                                      std::span<const double> breaks) {
    if (!(a > 0.0)) throw ValidationError("certify_averaging: width must be positive");
    const double band_width = 2.0 * std::numbers::pi / a;
    const int n_bands = (int)std::floor(s_max / band_width + 1e-12);
    if (n_bands < 4)
        throw ValidationError("certify_averaging: s_max must cover at least 4 bands");
    if (m < 2 * n_bands)
        throw ValidationError("certify_averaging: too few samples for the band count");

    TransformSamples t = transform_samples(alpha, s_max, m, radius, breaks);
    double scale = 0.0;
    for (double v : t.value) scale = std::max(scale, std::abs(v));
    if (delta <= 0.0) delta = 1e-9 * scale;

    SpectralCertificate cert;
    cert.width = a;
    cert.tolerance = delta;
    cert.bands.resize(n_bands);
    for (int k = 0; k < n_bands; ++k) {
        cert.bands[k].index = k;
        cert.bands[k].s_lo = k * band_width;
        cert.bands[k].s_hi = (k + 1) * band_width;
        cert.bands[k].required_sign = (k % 2 == 0) ? +1 : -1;
        cert.bands[k].min_value = std::numeric_limits<double>::infinity();
        cert.bands[k].max_value = -std::numeric_limits<double>::infinity();
    }
    for (int j = 0; j < m; ++j) {
        int k = std::min((int)(t.s[j] / band_width), n_bands - 1);
        cert.bands[k].min_value = std::min(cert.bands[k].min_value, t.value[j]);
        cert.bands[k].max_value = std::max(cert.bands[k].max_value, t.value[j]);
    }
    cert.certified = true;
    for (BandResult& b : cert.bands) {
        b.pass = b.required_sign > 0 ? b.min_value >= -delta : b.max_value <= delta;
        cert.certified = cert.certified && b.pass;
    }
    return cert;
}

SpectralCertificate certify_averaging(const AveragedKernelPair& pair, double s_max,
                                      int m, double delta) {
    double a = pair.width;
    if (s_max <= 0.0) s_max = 8.0 * 2.0 * std::numbers::pi / a;
    return certify_averaging(pair.alpha, a, s_max, m, delta, default_truncation(pair),
                             pair.alpha_breaks);
}

KappaHatResult kappa_hat_check(const AveragedKernelPair& pair, double s_max, int m,
                               double delta) {
    const double a = pair.width;
    if (s_max <= 0.0) s_max = 8.0 * 2.0 * std::numbers::pi / a;
    double radius = default_truncation(pair);
    TransformSamples alpha_hat =
        transform_samples(pair.alpha, s_max, m, radius, pair.alpha_breaks);

    std::vector<double> kappa_hat(m);
    double scale = 0.0;
    for (int j = 0; j < m; ++j) {
        kappa_hat[j] = alpha_hat.value[j] * sinc_factor(a, alpha_hat.s[j]);
        scale = std::max(scale, std::abs(kappa_hat[j]));
    }
    if (delta <= 0.0) delta = 1e-9 * scale;

    KappaHatResult result;
    result.tolerance = delta;
    result.min_value = *std::min_element(kappa_hat.begin(), kappa_hat.end());
    result.pass = result.min_value >= -delta;

    result.max_mismatch = std::numeric_limits<double>::quiet_NaN();
    if (pair.kappa) {
        // kappa is one averaging wider than alpha.
        double kappa_radius = std::isfinite(pair.support_radius)
                                  ? pair.support_radius + 0.5 * a
                                  : radius + 0.5 * a;
        TransformSamples direct = transform_samples(pair.kappa, s_max, m, kappa_radius,
                                                    pair.kappa_breaks);
        double worst = 0.0;
        for (int j = 0; j < m; ++j)
            worst = std::max(worst, std::abs(direct.value[j] - kappa_hat[j]));
        result.max_mismatch = worst;
    }
    return result;
}

} // namespace akhs
