#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sepcomp/dataset.hpp"
#include "sepcomp/errors.hpp"
#include "sepcomp/projection.hpp"

namespace sepcomp {

/// Nearest pair of points between conv(X+) and conv(X-), as convex
/// combinations of the class points, with a Frank-Wolfe duality-gap
/// certificate on delta^2.
struct HullWitness {
    Vector x_plus;
    Vector x_minus;
    double delta = 0.0;
    /// Weights over the positive (negative) points, in set order.
    std::vector<double> coeffs_plus;
    std::vector<double> coeffs_minus;
    /// Set row of each weight.
    std::vector<std::size_t> plus_rows;
    std::vector<std::size_t> minus_rows;
    /// Upper bound on delta^2 (returned) - delta^2 (optimal).
    double certified_gap = 0.0;
    std::size_t iterations = 0;
};

struct NearestPointOptions {
    /// Accepted duality gap on delta^2. Defaults to 1e-10 * max(1, max ||x||^2).
    std::optional<double> tol;
    /// The solver keeps refining until gap <= target_rel_gap * delta^2, and
    /// stops early only on numerical stagnation (then `tol` must hold).
    double target_rel_gap = 1e-13;
    std::size_t max_iters = 200'000;
};

class NotSeparable : public ContractError {
public:
    NotSeparable(double delta_sq, double floor);
    double delta_sq() const { return delta_sq_; }
    double floor() const { return floor_; }

private:
    double delta_sq_;
    double floor_;
};

class IterationLimit : public std::runtime_error {
public:
    explicit IterationLimit(HullWitness best);
    const HullWitness& best() const { return best_; }

private:
    HullWitness best_;
};

/// Separation floor: delta^2 at or below this counts as intersecting hulls.
double separation_floor(const SupportSet& set);

HullWitness nearest_hull_points(const SupportSet& set, const NearestPointOptions& opts = {});

/// w* = 2(x+ - x-)/||x+ - x-||^2, b* = 1 - 2<x+ - x-, x+>/||x+ - x-||^2.
Hyperplane construct_hyperplane(const HullWitness& witness);

/// min over points of y(<w, x> + b).
double functional_margin(const Hyperplane& h, const SupportSet& set);

struct CompatibilityReport {
    /// max_x |<Qw,Qx> - <w,x>| / eta; +inf when eta = 0 but the deviation is not.
    double c_measured = 0.0;
    /// ||w||^2, the compatibility guaranteed for the hull-SVM normal.
    double c_bound = 0.0;
    double max_deviation = 0.0;
    std::size_t argmax_index = 0;
    bool unbounded = false;
};

CompatibilityReport compatibility_constant(const ProjectionMatrix& q, std::span<const double> w,
                                           const SupportSet& set, double eta);

}  // namespace sepcomp
