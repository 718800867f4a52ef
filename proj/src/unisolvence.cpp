#include "akhs/unisolvence.hpp"

#include "akhs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace akhs {

namespace {

constexpr double kMinRadius = 1e-12;

// Largest ball around c inside own and away from every domain in rest.
double witness_radius(std::span<const double> c, const Domain& own,
                      const std::vector<const Domain*>& rest) {
    double r = own.depth(c);
    for (const Domain* d : rest) r = std::min(r, d->distance(c));
    return r;
}

struct Candidate {
    std::vector<double> center;
    double radius = -1.0;
};

// Grid search for the best witness ball inside own avoiding rest.
Candidate best_ball(const Domain& own, const std::vector<const Domain*>& rest,
                    int grid) {
    auto [lo, hi] = own.bounding_box();
    const int d = own.dim();
    std::vector<int> idx(d, 0);
    std::vector<double> x(d);
    Candidate best;
    for (;;) {
        for (int i = 0; i < d; ++i)
            x[i] = grid == 1 ? 0.5 * (lo[i] + hi[i])
                             : lo[i] + (hi[i] - lo[i]) * (idx[i] + 0.5) / grid;
        double r = witness_radius(x, own, rest);
        if (r > best.radius) best = Candidate{x, r};
        int axis = 0;
        while (axis < d && ++idx[axis] == grid) idx[axis++] = 0;
        if (axis == d) break;
    }
    return best;
}

// Exact construction for 1D uniform segments with strictly increasing
// centers: the left sliver of each segment avoids all later ones.
std::optional<UnisolvenceWitness> uniform_segments_1d(const HistoProblem& problem) {
    const int n = problem.size();
    const double half = problem.samples[0].domain.extent[0];
    for (const AverageSample& s : problem.samples) {
        if (s.domain.kind != DomainKind::Segment) return std::nullopt;
        if (s.domain.extent[0] != half) return std::nullopt;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return problem.samples[i].domain.center[0] < problem.samples[j].domain.center[0];
    });
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n; ++i) {
        double gap = problem.samples[order[i + 1]].domain.center[0] -
                     problem.samples[order[i]].domain.center[0];
        if (gap <= 0.0) return std::nullopt; // duplicate centers
        min_gap = std::min(min_gap, gap);
    }
    double eps = 0.5 * std::min(min_gap, 2.0 * half);
    UnisolvenceWitness w;
    w.order = order;
    for (int i = 0; i < n; ++i) {
        double left = problem.samples[order[i]].domain.center[0] - half;
        w.ball_centers.push_back({left + eps});
        // Slightly shrunk so the geometric checks survive rounding.
        w.ball_radii.push_back(eps * (1.0 - 1e-9));
    }
    return w;
}

} // namespace

UnisolvenceResult unisolvence_precheck(const HistoProblem& problem, int grid_per_axis) {
    if (problem.samples.empty())
        throw ValidationError("unisolvence_precheck: empty problem");
    if (grid_per_axis < 1)
        throw ValidationError("unisolvence_precheck: grid resolution must be >= 1");
    UnisolvenceResult result;

    if (problem.dim() == 1 && problem.uniform()) {
        if (auto w = uniform_segments_1d(problem)) {
            result.witness = std::move(*w);
            return result;
        }
    }

    // Greedy ordering: repeatedly place a domain owning a ball that avoids
    // every other domain still unplaced. Placing such a domain first never
    // invalidates orderings of the remainder.
    const int n = problem.size();
    std::vector<int> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    UnisolvenceWitness witness;
    while (!remaining.empty()) {
        int pick = -1;
        Candidate pick_ball;
        for (size_t ri = 0; ri < remaining.size(); ++ri) {
            std::vector<const Domain*> rest;
            for (size_t rj = 0; rj < remaining.size(); ++rj)
                if (rj != ri) rest.push_back(&problem.samples[remaining[rj]].domain);
            Candidate c =
                best_ball(problem.samples[remaining[ri]].domain, rest, grid_per_axis);
            if (c.radius > pick_ball.radius) {
                pick_ball = c;
                pick = (int)ri;
            }
        }
        if (pick < 0 || pick_ball.radius < kMinRadius) {
            result.failed_position = (int)witness.order.size() + 1;
            result.irreducible = remaining;
            result.note = "no witness ball found at position " +
                          std::to_string(result.failed_position) +
                          " (grid search inconclusive)";
            return result;
        }
        witness.order.push_back(remaining[pick]);
        witness.ball_centers.push_back(pick_ball.center);
        witness.ball_radii.push_back(pick_ball.radius);
        remaining.erase(remaining.begin() + pick);
    }
    result.witness = std::move(witness);
    return result;
}

bool verify_witness(const HistoProblem& problem, const UnisolvenceWitness& witness) {
    const int n = problem.size();
    if ((int)witness.order.size() != n) return false;
    for (int i = 0; i < n; ++i) {
        const Domain& own = problem.samples[witness.order[i]].domain;
        std::span<const double> c(witness.ball_centers[i]);
        double r = witness.ball_radii[i];
        if (!(r > 0.0)) return false;
        if (own.depth(c) < r) return false; // open ball must fit inside
        for (int j = i + 1; j < n; ++j) {
            const Domain& later = problem.samples[witness.order[j]].domain;
            if (later.distance(c) < r) return false;
        }
    }
    return true;
}

} // namespace akhs
