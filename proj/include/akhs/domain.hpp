#pragma once

#include "akhs/quadrature.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace akhs {

enum class DomainKind { Segment, Box, Ball };

// Averaging region: 1D segment, axis-aligned box, or d-ball.
// extent holds per-axis half-widths for segments and boxes, and the single
// radius for balls.
struct Domain {
    DomainKind kind = DomainKind::Segment;
    std::vector<double> center;
    std::vector<double> extent;

    static Domain segment(double center, double half_width);
    static Domain box(std::vector<double> center, std::vector<double> half_widths);
    static Domain ball(std::vector<double> center, double radius);

    int dim() const { return (int)center.size(); }
    double measure() const;
    bool contains(std::span<const double> x) const;
    // Euclidean distance from x to the domain (0 inside).
    double distance(std::span<const double> x) const;
    // Depth of x inside the domain (<= 0 outside); radius of the largest
    // ball around x contained in the domain.
    double depth(std::span<const double> x) const;
    std::pair<std::vector<double>, std::vector<double>> bounding_box() const;

    bool operator==(const Domain& other) const;
};

std::string to_string(DomainKind kind);

// One observed mean value over a domain.
struct AverageSample {
    Domain domain;
    double value = 0.0;
};

// A collection of average samples sharing one ambient dimension.
struct HistoProblem {
    std::vector<AverageSample> samples;

    int size() const { return (int)samples.size(); }
    int dim() const { return samples.empty() ? 0 : samples[0].domain.dim(); }
    std::vector<double> values() const;

    // Enforces the ingestion invariants: nonempty, consistent dimension,
    // positive measures, finite values, no two identical domains.
    void validate() const;

    // True when all domains are translates of a single one.
    bool uniform() const;
};

// Lebesgue measure of the intersection. Exact for segment/segment and
// box/box pairs and for ball/ball pairs in d <= 3; Monte-Carlo estimate
// (fixed seed, ~1e-3 accuracy) for other combinations.
double overlap_measure(const Domain& d1, const Domain& d2);

using PointFn = std::function<double(std::span<const double>)>;

// Mean of f over the domain with absolute tolerance tol, by adaptive
// Gauss-Legendre quadrature (tensorized over boxes, polar over balls).
double average_of(const PointFn& f, const Domain& domain, double tol);

// Convenience overload for univariate functions over 1D domains.
double average_of(const RealFn& f, const Domain& domain, double tol);

// Fill distance of the sample centers with respect to a bounding region:
// max over a dense grid of the region of the distance to the nearest
// center. points_per_axis <= 0 picks ~1000 grid points total.
double fill_distance(const HistoProblem& problem, const Domain& region,
                     int points_per_axis = 0);

} // namespace akhs
