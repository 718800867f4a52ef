#pragma once

#include "akhs/domain.hpp"

#include <optional>
#include <string>
#include <vector>

namespace akhs {

// Witness of linear independence of the characteristic functions: an
// ordering of the domains together with, per position, an open ball inside
// that domain which avoids every later domain.
struct UnisolvenceWitness {
    std::vector<int> order; // permutation of 0..n-1
    std::vector<std::vector<double>> ball_centers;
    std::vector<double> ball_radii;
};

struct UnisolvenceResult {
    std::optional<UnisolvenceWitness> witness;
    // Valid when no witness was found: 1-based position at which the greedy
    // search got stuck, and the indices of the domains still unplaced.
    int failed_position = 0;
    std::vector<int> irreducible;
    std::string note;

    bool ok() const { return witness.has_value(); }
};

// Searches for an ordering satisfying the open-ball criterion. For 1D
// uniform-length segments with distinct centers the ascending-center
// ordering is constructed exactly; otherwise a grid search over candidate
// ball centers (resolution: grid_per_axis points per axis of each domain's
// bounding box) feeds a greedy ordering. A failed grid search is
// inconclusive, not a proof of dependence.
UnisolvenceResult unisolvence_precheck(const HistoProblem& problem,
                                       int grid_per_axis = 12);

// Direct geometric verification of a witness against the problem.
bool verify_witness(const HistoProblem& problem, const UnisolvenceWitness& witness);

} // namespace akhs
