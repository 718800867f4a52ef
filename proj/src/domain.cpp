#include "akhs/domain.hpp"

#include "akhs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace akhs {

namespace {

double ball_volume(int d, double r) {
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0) *
           std::pow(r, d);
}

double sq(double x) { return x * x; }

// Area of the intersection of two disks (2D lens).
double lens_area_2d(double r1, double r2, double dist) {
    if (dist >= r1 + r2) return 0.0;
    if (dist <= std::abs(r1 - r2)) {
        double r = std::min(r1, r2);
        return std::numbers::pi * r * r;
    }
    double d1 = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
    double d2 = dist - d1;
    double a1 = r1 * r1 * std::acos(std::clamp(d1 / r1, -1.0, 1.0)) -
                d1 * std::sqrt(std::max(0.0, r1 * r1 - d1 * d1));
    double a2 = r2 * r2 * std::acos(std::clamp(d2 / r2, -1.0, 1.0)) -
                d2 * std::sqrt(std::max(0.0, r2 * r2 - d2 * d2));
    return a1 + a2;
}

// Volume of the intersection of two balls (3D lens).
double lens_volume_3d(double r1, double r2, double dist) {
    if (dist >= r1 + r2) return 0.0;
    if (dist <= std::abs(r1 - r2)) return ball_volume(3, std::min(r1, r2));
    double num = sq(r1 + r2 - dist) *
                 (dist * dist + 2.0 * dist * (r1 + r2) - 3.0 * sq(r1 - r2));
    return std::numbers::pi * num / (12.0 * dist);
}

double center_distance(const Domain& d1, const Domain& d2) {
    double s = 0.0;
    for (int i = 0; i < d1.dim(); ++i) s += sq(d1.center[i] - d2.center[i]);
    return std::sqrt(s);
}

// Monte-Carlo overlap for mixed kinds and high-dimensional balls.
// Fixed seed; only diagnostics rely on this path.
double overlap_monte_carlo(const Domain& d1, const Domain& d2) {
    const Domain& small = d1.measure() <= d2.measure() ? d1 : d2;
    const Domain& other = d1.measure() <= d2.measure() ? d2 : d1;
    auto [lo, hi] = small.bounding_box();
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const long total = 2'000'000;
    long in_small = 0, in_both = 0;
    std::vector<double> x(small.dim());
    for (long it = 0; it < total; ++it) {
        for (int i = 0; i < small.dim(); ++i) x[i] = lo[i] + (hi[i] - lo[i]) * unif(rng);
        if (!small.contains(x)) continue;
        ++in_small;
        if (other.contains(x)) ++in_both;
    }
    if (in_small == 0) return 0.0;
    return small.measure() * (double)in_both / (double)in_small;
}

} // namespace

Domain Domain::segment(double center, double half_width) {
    if (!(half_width > 0.0)) throw ValidationError("segment: half-width must be positive");
    Domain d;
    d.kind = DomainKind::Segment;
    d.center = {center};
    d.extent = {half_width};
    return d;
}

Domain Domain::box(std::vector<double> center, std::vector<double> half_widths) {
    if (center.empty() || center.size() != half_widths.size())
        throw ValidationError("box: center/half-width size mismatch");
    for (double h : half_widths)
        if (!(h > 0.0)) throw ValidationError("box: half-widths must be positive");
    Domain d;
    d.kind = DomainKind::Box;
    d.center = std::move(center);
    d.extent = std::move(half_widths);
    return d;
}

Domain Domain::ball(std::vector<double> center, double radius) {
    if (center.empty()) throw ValidationError("ball: empty center");
    if (!(radius > 0.0)) throw ValidationError("ball: radius must be positive");
    Domain d;
    d.kind = DomainKind::Ball;
    d.center = std::move(center);
    d.extent = {radius};
    return d;
}

double Domain::measure() const {
    switch (kind) {
    case DomainKind::Segment:
        return 2.0 * extent[0];
    case DomainKind::Box: {
        double m = 1.0;
        for (double h : extent) m *= 2.0 * h;
        return m;
    }
    case DomainKind::Ball:
        return ball_volume(dim(), extent[0]);
    }
    return 0.0;
}

bool Domain::contains(std::span<const double> x) const {
    if ((int)x.size() != dim()) throw ValidationError("contains: dimension mismatch");
    if (kind == DomainKind::Ball) {
        double s = 0.0;
        for (int i = 0; i < dim(); ++i) s += sq(x[i] - center[i]);
        return s <= sq(extent[0]);
    }
    for (int i = 0; i < dim(); ++i)
        if (std::abs(x[i] - center[i]) > extent[kind == DomainKind::Segment ? 0 : i])
            return false;
    return true;
}

double Domain::distance(std::span<const double> x) const {
    if ((int)x.size() != dim()) throw ValidationError("distance: dimension mismatch");
    if (kind == DomainKind::Ball) {
        double s = 0.0;
        for (int i = 0; i < dim(); ++i) s += sq(x[i] - center[i]);
        return std::max(0.0, std::sqrt(s) - extent[0]);
    }
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) {
        double h = extent[kind == DomainKind::Segment ? 0 : i];
        s += sq(std::max(0.0, std::abs(x[i] - center[i]) - h));
    }
    return std::sqrt(s);
}

double Domain::depth(std::span<const double> x) const {
    if ((int)x.size() != dim()) throw ValidationError("depth: dimension mismatch");
    if (kind == DomainKind::Ball) {
        double s = 0.0;
        for (int i = 0; i < dim(); ++i) s += sq(x[i] - center[i]);
        return extent[0] - std::sqrt(s);
    }
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim(); ++i) {
        double h = extent[kind == DomainKind::Segment ? 0 : i];
        d = std::min(d, h - std::abs(x[i] - center[i]));
    }
    return d;
}

std::pair<std::vector<double>, std::vector<double>> Domain::bounding_box() const {
    std::vector<double> lo(dim()), hi(dim());
    for (int i = 0; i < dim(); ++i) {
        double h = kind == DomainKind::Ball ? extent[0]
                                            : extent[kind == DomainKind::Segment ? 0 : i];
        lo[i] = center[i] - h;
        hi[i] = center[i] + h;
    }
    return {lo, hi};
}

bool Domain::operator==(const Domain& other) const {
    return kind == other.kind && center == other.center && extent == other.extent;
}

std::string to_string(DomainKind kind) {
    switch (kind) {
    case DomainKind::Segment: return "segment";
    case DomainKind::Box: return "box";
    case DomainKind::Ball: return "ball";
    }
    return "?";
}

std::vector<double> HistoProblem::values() const {
    std::vector<double> v(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) v[i] = samples[i].value;
    return v;
}

void HistoProblem::validate() const {
    if (samples.empty()) throw ValidationError("problem has no samples");
    int d = samples[0].domain.dim();
    for (size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].domain.dim() != d)
            throw ValidationError("sample " + std::to_string(i + 1) +
                                  ": inconsistent dimension");
        if (!(samples[i].domain.measure() > 0.0))
            throw ValidationError("sample " + std::to_string(i + 1) +
                                  ": domain has no positive measure");
        if (!std::isfinite(samples[i].value))
            throw ValidationError("sample " + std::to_string(i + 1) +
                                  ": value is not finite");
        for (size_t j = 0; j < i; ++j)
            if (samples[i].domain == samples[j].domain)
                throw ValidationError("samples " + std::to_string(j + 1) + " and " +
                                      std::to_string(i + 1) + " have identical domains");
    }
}

bool HistoProblem::uniform() const {
    if (samples.empty()) return false;
    const Domain& first = samples[0].domain;
    for (const AverageSample& s : samples) {
        if (s.domain.kind != first.kind || s.domain.dim() != first.dim()) return false;
        if (s.domain.extent != first.extent) return false;
    }
    return true;
}

double overlap_measure(const Domain& d1, const Domain& d2) {
    if (d1.dim() != d2.dim()) throw ValidationError("overlap_measure: dimension mismatch");
    bool boxes = d1.kind != DomainKind::Ball && d2.kind != DomainKind::Ball;
    if (boxes) {
        double m = 1.0;
        for (int i = 0; i < d1.dim(); ++i) {
            double h1 = d1.extent[d1.kind == DomainKind::Segment ? 0 : i];
            double h2 = d2.extent[d2.kind == DomainKind::Segment ? 0 : i];
            double lo = std::max(d1.center[i] - h1, d2.center[i] - h2);
            double hi = std::min(d1.center[i] + h1, d2.center[i] + h2);
            if (hi <= lo) return 0.0;
            m *= hi - lo;
        }
        return m;
    }
    if (d1.kind == DomainKind::Ball && d2.kind == DomainKind::Ball) {
        double dist = center_distance(d1, d2);
        if (d1.dim() == 1) {
            double lo = std::max(d1.center[0] - d1.extent[0], d2.center[0] - d2.extent[0]);
            double hi = std::min(d1.center[0] + d1.extent[0], d2.center[0] + d2.extent[0]);
            return std::max(0.0, hi - lo);
        }
        if (d1.dim() == 2) return lens_area_2d(d1.extent[0], d2.extent[0], dist);
        if (d1.dim() == 3) return lens_volume_3d(d1.extent[0], d2.extent[0], dist);
    }
    return overlap_monte_carlo(d1, d2);
}

namespace {

// Recursive tensorized mean over a box: integrate the innermost axis
// adaptively, then feed the result to the next axis out.
double box_mean(const PointFn& f, const Domain& dom, std::vector<double>& x, int axis,
                double tol) {
    double h = dom.extent[dom.kind == DomainKind::Segment ? 0 : axis];
    double lo = dom.center[axis] - h;
    double hi = dom.center[axis] + h;
    auto g = [&](double t) {
        x[axis] = t;
        if (axis + 1 == dom.dim()) return f(x);
        return box_mean(f, dom, x, axis + 1, 0.1 * tol);
    };
    return mean_value(g, lo, hi, 0.8 * tol);
}

} // namespace

double average_of(const PointFn& f, const Domain& domain, double tol) {
    if (!(tol > 0.0)) throw ValidationError("average_of: tolerance must be positive");
    const int d = domain.dim();
    if (domain.kind != DomainKind::Ball) {
        std::vector<double> x(d);
        return box_mean(f, domain, x, 0, tol);
    }
    const double r = domain.extent[0];
    if (d == 1) {
        auto g = [&](double t) {
            double p[1] = {t};
            return f(std::span<const double>(p, 1));
        };
        return mean_value(g, domain.center[0] - r, domain.center[0] + r, tol);
    }
    if (d == 2) {
        // Polar coordinates around the center; mean = (2/r^2) int_0^r t fbar(t) dt
        // with fbar the angular mean on the circle of radius t.
        const double two_pi = 2.0 * std::numbers::pi;
        auto radial = [&](double t) {
            auto ang = [&](double theta) {
                double p[2] = {domain.center[0] + t * std::cos(theta),
                               domain.center[1] + t * std::sin(theta)};
                return f(std::span<const double>(p, 2));
            };
            return t * integrate(ang, 0.0, two_pi, 0.05 * tol * r);
        };
        double total = integrate(radial, 0.0, r, 0.25 * tol * r * r * two_pi);
        return total / (std::numbers::pi * r * r);
    }
    if (d == 3) {
        const double pi = std::numbers::pi;
        auto radial = [&](double t) {
            auto polar = [&](double phi) {
                auto azim = [&](double theta) {
                    double p[3] = {domain.center[0] + t * std::sin(phi) * std::cos(theta),
                                   domain.center[1] + t * std::sin(phi) * std::sin(theta),
                                   domain.center[2] + t * std::cos(phi)};
                    return f(std::span<const double>(p, 3));
                };
                return std::sin(phi) * integrate(azim, 0.0, 2.0 * pi, 0.01 * tol);
            };
            return t * t * integrate(polar, 0.0, pi, 0.05 * tol);
        };
        double total = integrate(radial, 0.0, r, 0.25 * tol * domain.measure());
        return total / domain.measure();
    }
    throw ValidationError("average_of: ball averaging implemented for d <= 3");
}

double average_of(const RealFn& f, const Domain& domain, double tol) {
    if (domain.dim() != 1) throw ValidationError("average_of: univariate overload needs d=1");
    return average_of(
        [&f](std::span<const double> x) { return f(x[0]); }, domain, tol);
}

double fill_distance(const HistoProblem& problem, const Domain& region,
                     int points_per_axis) {
    if (problem.samples.empty()) throw ValidationError("fill_distance: empty problem");
    const int d = region.dim();
    if (problem.dim() != d) throw ValidationError("fill_distance: dimension mismatch");
    int m = points_per_axis;
    if (m <= 0) m = std::max(2, (int)std::llround(std::pow(1000.0, 1.0 / d)));
    auto [lo, hi] = region.bounding_box();
    std::vector<double> x(d);
    std::vector<int> idx(d, 0);
    double worst = 0.0;
    for (;;) {
        for (int i = 0; i < d; ++i)
            x[i] = m == 1 ? 0.5 * (lo[i] + hi[i])
                          : lo[i] + (hi[i] - lo[i]) * idx[i] / (m - 1);
        if (region.contains(x)) {
            double best = std::numeric_limits<double>::infinity();
            for (const AverageSample& s : problem.samples) {
                double dist2 = 0.0;
                for (int i = 0; i < d; ++i) dist2 += sq(x[i] - s.domain.center[i]);
                best = std::min(best, dist2);
            }
            worst = std::max(worst, std::sqrt(best));
        }
        int axis = 0;
        while (axis < d && ++idx[axis] == m) idx[axis++] = 0;
        if (axis == d) break;
    }
    return worst;
}

} // namespace akhs
