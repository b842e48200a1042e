#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sepcomp/dataset.hpp"

namespace sepcomp {

enum class SeparabilityCertificate {
    feasible_point,     // a hyperplane with functional margin >= 1 - 1e-9 was found
    hull_intersection,  // convex weights with sum l+ x - sum l- x = 0 were found
    inconclusive,       // neither certificate verified numerically
};

std::string_view to_string(SeparabilityCertificate c);

struct SeparabilityResult {
    bool separable = false;
    SeparabilityCertificate certificate = SeparabilityCertificate::inconclusive;
    std::optional<Hyperplane> hyperplane;
    /// Phase-I optimum; zero exactly when the class hulls intersect.
    double phase1_objective = 0.0;
    /// For hull_intersection: per-row convex weights (positives sum to 1, negatives sum to 1).
    std::vector<double> intersection_weights;
    std::size_t pivots = 0;
};

/// Decides whether some (w, b) satisfies y(<w,x> + b) >= 1 on every point.
///
/// Solves the phase-I simplex problem for "conv(X+) and conv(X-) share a
/// point" (weights l >= 0, sum over each class = 1, sum l+ x - sum l- x = 0).
/// Feasibility certifies non-separability; otherwise the optimal dual
/// multipliers give a separating direction, which is rescaled to functional
/// margin 1 and checked on the data.
SeparabilityResult is_separable_lp(const SupportSet& set);

}  // namespace sepcomp
