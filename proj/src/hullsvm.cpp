#include "sepcomp/hullsvm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sepcomp/kernels.hpp"

namespace sepcomp {

NotSeparable::NotSeparable(double delta_sq, double floor)
    : ContractError("NotSeparable: class hulls intersect or nearly intersect (delta^2 = " +
                    std::to_string(delta_sq) + " <= floor " + std::to_string(floor) + ")"),
      delta_sq_(delta_sq),
      floor_(floor) {}

IterationLimit::IterationLimit(HullWitness best)
    : std::runtime_error("IterationLimit: duality gap " + std::to_string(best.certified_gap) +
                         " above tolerance after " + std::to_string(best.iterations) + " iterations"),
      best_(std::move(best)) {}

double separation_floor(const SupportSet& set) {
    const double r = set.radius();
    return 1e-12 * r * r;
}

namespace {

// Wolfe's minimum-norm-point method on the difference polytope
// conv(X+) - conv(X-), whose vertices are pairs (i, j) -> p_i - q_j. The
// linear minimization oracle splits into an argmin over X+ and an argmax
// over X-, so the |X+||X-| vertices are never materialized.
class DifferencePolytopeSolver {
public:
    DifferencePolytopeSolver(const std::vector<Vector>& pos, const std::vector<Vector>& neg)
        : pos_(pos), neg_(neg), dim_(pos.front().size()) {
        pos_rows_.resize(pos.size());
        neg_rows_.resize(neg.size());
        std::iota(pos_rows_.begin(), pos_rows_.end(), std::size_t{0});
        std::iota(neg_rows_.begin(), neg_rows_.end(), std::size_t{0});
    }

    struct Vertex {
        std::size_t i;
        std::size_t j;
        bool operator==(const Vertex&) const = default;
    };

    // p_argmin<d,p> - q_argmax<d,q>; also returns the two oracle values.
    Vertex oracle(std::span<const double> d, double& min_pos, double& max_neg) const {
        const auto a = kernels::parallel::argmin_projection(pos_, pos_rows_, d);
        const auto b = kernels::parallel::argmax_projection(neg_, neg_rows_, d);
        min_pos = a.value;
        max_neg = b.value;
        return {a.index, b.index};
    }

    Vector vertex_point(const Vertex& v) const { return subtract(pos_[v.i], neg_[v.j]); }

    // u = sum lambda_k p_{i_k}, v = sum lambda_k q_{j_k}
    void endpoints(const std::vector<Vertex>& corral, const std::vector<double>& lambda, Vector& u,
                   Vector& v) const {
        u.assign(dim_, 0.0);
        v.assign(dim_, 0.0);
        for (std::size_t k = 0; k < corral.size(); ++k) {
            const auto& p = pos_[corral[k].i];
            const auto& q = neg_[corral[k].j];
            for (std::size_t c = 0; c < dim_; ++c) {
                u[c] += lambda[k] * p[c];
                v[c] += lambda[k] * q[c];
            }
        }
    }

    // Affine combination of the corral points with minimum norm.
    std::vector<double> affine_minimizer(const std::vector<Vertex>& corral) const {
        const std::size_t k = corral.size();
        if (k == 1) return {1.0};
        const Vector z0 = vertex_point(corral[0]);
        Eigen::MatrixXd d(dim_, k - 1);
        for (std::size_t c = 1; c < k; ++c) {
            const Vector zc = vertex_point(corral[c]);
            for (std::size_t r = 0; r < dim_; ++r) d(r, c - 1) = zc[r] - z0[r];
        }
        Eigen::VectorXd rhs(dim_);
        for (std::size_t r = 0; r < dim_; ++r) rhs(r) = -z0[r];
        const Eigen::VectorXd coef = d.colPivHouseholderQr().solve(rhs);
        std::vector<double> mu(k);
        double rest = 0.0;
        for (std::size_t c = 1; c < k; ++c) {
            mu[c] = coef(c - 1);
            rest += mu[c];
        }
        mu[0] = 1.0 - rest;
        return mu;
    }

    std::size_t pos_count() const { return pos_.size(); }
    std::size_t neg_count() const { return neg_.size(); }
    const std::vector<Vector>& pos() const { return pos_; }
    const std::vector<Vector>& neg() const { return neg_; }

private:
    const std::vector<Vector>& pos_;
    const std::vector<Vector>& neg_;
    std::size_t dim_;
    std::vector<std::size_t> pos_rows_;
    std::vector<std::size_t> neg_rows_;
};

Vector centroid(const std::vector<Vector>& pts) {
    Vector c(pts.front().size(), 0.0);
    for (const auto& p : pts)
        for (std::size_t k = 0; k < c.size(); ++k) c[k] += p[k];
    for (auto& v : c) v /= static_cast<double>(pts.size());
    return c;
}

// Collapses corral weights onto the class points, prunes weights below 1e-14,
// renormalizes, and recomputes the endpoints and certificate from the result.
HullWitness make_witness(const DifferencePolytopeSolver& solver, const SupportSet& set,
                         const std::vector<DifferencePolytopeSolver::Vertex>& corral,
                         const std::vector<double>& lambda, std::size_t iterations) {
    HullWitness w;
    w.plus_rows = set.positive_indices();
    w.minus_rows = set.negative_indices();
    w.coeffs_plus.assign(solver.pos_count(), 0.0);
    w.coeffs_minus.assign(solver.neg_count(), 0.0);
    for (std::size_t k = 0; k < corral.size(); ++k) {
        w.coeffs_plus[corral[k].i] += lambda[k];
        w.coeffs_minus[corral[k].j] += lambda[k];
    }
    auto prune = [](std::vector<double>& c) {
        double total = 0.0;
        for (auto& v : c) {
            if (v < 1e-14) v = 0.0;
            total += v;
        }
        for (auto& v : c) v /= total;
    };
    prune(w.coeffs_plus);
    prune(w.coeffs_minus);

    const std::size_t n = set.dim();
    w.x_plus.assign(n, 0.0);
    w.x_minus.assign(n, 0.0);
    for (std::size_t i = 0; i < solver.pos_count(); ++i)
        if (w.coeffs_plus[i] != 0.0)
            for (std::size_t c = 0; c < n; ++c) w.x_plus[c] += w.coeffs_plus[i] * solver.pos()[i][c];
    for (std::size_t j = 0; j < solver.neg_count(); ++j)
        if (w.coeffs_minus[j] != 0.0)
            for (std::size_t c = 0; c < n; ++c) w.x_minus[c] += w.coeffs_minus[j] * solver.neg()[j][c];

    const Vector d = subtract(w.x_plus, w.x_minus);
    w.delta = norm(d);
    double min_pos = 0.0, max_neg = 0.0;
    solver.oracle(d, min_pos, max_neg);
    const double gap = 2.0 * ((dot(d, w.x_plus) - min_pos) + (max_neg - dot(d, w.x_minus)));
    w.certified_gap = std::max(gap, 0.0);
    w.iterations = iterations;
    return w;
}

}  // namespace

HullWitness nearest_hull_points(const SupportSet& set, const NearestPointOptions& opts) {
    const auto pos = set.positives();
    const auto neg = set.negatives();
    if (pos.empty() || neg.empty()) throw ContractError("nearest_hull_points: both classes must be nonempty");

    const double r = set.radius();
    const double floor = separation_floor(set);
    const double tol = opts.tol.value_or(1e-10 * std::max(1.0, r * r));

    DifferencePolytopeSolver solver(pos, neg);
    using Vertex = DifferencePolytopeSolver::Vertex;

    double min_pos = 0.0, max_neg = 0.0;
    const Vector c0 = subtract(centroid(pos), centroid(neg));
    std::vector<Vertex> corral{solver.oracle(c0, min_pos, max_neg)};
    std::vector<double> lambda{1.0};

    Vector u, v;
    std::size_t iter = 0;
    for (;;) {
        solver.endpoints(corral, lambda, u, v);
        const Vector x = subtract(u, v);
        const double xsq = squared_norm(x);
        if (xsq <= floor) throw NotSeparable(xsq, floor);

        const Vertex s = solver.oracle(x, min_pos, max_neg);
        const double gap = 2.0 * ((dot(x, u) - min_pos) + (max_neg - dot(x, v)));
        if (gap <= opts.target_rel_gap * xsq) break;
        const bool stagnant = std::find(corral.begin(), corral.end(), s) != corral.end();
        if (stagnant || iter >= opts.max_iters) {
            if (gap <= tol) break;
            throw IterationLimit(make_witness(solver, set, corral, lambda, iter));
        }
        ++iter;

        corral.push_back(s);
        lambda.push_back(0.0);
        // Minor cycle: move toward the affine minimizer until it lies inside
        // the corral's convex hull, dropping vertices that hit zero weight.
        for (;;) {
            const auto mu = solver.affine_minimizer(corral);
            const bool interior = std::all_of(mu.begin(), mu.end(), [](double t) { return t > 1e-15; });
            if (interior) {
                lambda = mu;
                break;
            }
            double theta = 1.0;
            std::size_t drop = corral.size();
            for (std::size_t k = 0; k < corral.size(); ++k) {
                if (mu[k] <= 1e-15) {
                    const double t = lambda[k] / (lambda[k] - mu[k]);
                    if (t < theta) {
                        theta = t;
                        drop = k;
                    }
                }
            }
            for (std::size_t k = 0; k < corral.size(); ++k) lambda[k] = theta * mu[k] + (1.0 - theta) * lambda[k];
            if (drop < corral.size()) lambda[drop] = 0.0;
            std::vector<Vertex> kept;
            std::vector<double> kept_lambda;
            for (std::size_t k = 0; k < corral.size(); ++k) {
                if (lambda[k] > 1e-15) {
                    kept.push_back(corral[k]);
                    kept_lambda.push_back(lambda[k]);
                }
            }
            corral = std::move(kept);
            lambda = std::move(kept_lambda);
            const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
            for (auto& t : lambda) t /= total;
            if (corral.size() == 1) break;
        }
    }

    auto witness = make_witness(solver, set, corral, lambda, iter);
    if (witness.delta * witness.delta <= floor) throw NotSeparable(witness.delta * witness.delta, floor);
    if (witness.certified_gap > tol) throw IterationLimit(std::move(witness));
    return witness;
}

Hyperplane construct_hyperplane(const HullWitness& witness) {
    const Vector d = subtract(witness.x_plus, witness.x_minus);
    const double dsq = squared_norm(d);
    if (!(dsq > 0.0)) throw ContractError("construct_hyperplane: witness has zero hull distance");
    Vector w = scaled(d, 2.0 / dsq);
    const double b = 1.0 - 2.0 * dot(d, witness.x_plus) / dsq;
    return Hyperplane(std::move(w), b);
}

double functional_margin(const Hyperplane& h, const SupportSet& set) {
    if (h.w.size() != set.dim())
        throw ContractError("functional_margin: hyperplane has dimension " + std::to_string(h.w.size()) +
                            ", set has " + std::to_string(set.dim()));
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : set.points()) best = std::min(best, p.y * h.value(p.x));
    return best;
}

CompatibilityReport compatibility_constant(const ProjectionMatrix& q, std::span<const double> w,
                                           const SupportSet& set, double eta) {
    if (w.size() != q.n() || set.dim() != q.n())
        throw ContractError("compatibility_constant: dimensions of Q, w and the set must agree");
    if (!(eta >= 0.0)) throw ContractError("compatibility_constant: eta must be >= 0");
    const Vector qw = sepcomp::apply(q, w);
    const auto feats = set.features();
    const auto projected = kernels::parallel::project(q.entries(), feats);

    CompatibilityReport rep;
    rep.max_deviation = -1.0;
    for (std::size_t i = 0; i < feats.size(); ++i) {
        const double dev = std::abs(dot(qw, projected[i]) - dot(w, feats[i]));
        if (dev > rep.max_deviation) {
            rep.max_deviation = dev;
            rep.argmax_index = i;
        }
    }
    rep.c_bound = squared_norm(w);
    if (eta > 0.0) {
        rep.c_measured = rep.max_deviation / eta;
    } else if (rep.max_deviation == 0.0) {
        rep.c_measured = 0.0;
    } else {
        rep.c_measured = std::numeric_limits<double>::infinity();
        rep.unbounded = true;
    }
    return rep;
}

}  // namespace sepcomp
