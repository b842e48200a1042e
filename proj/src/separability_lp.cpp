#include "sepcomp/separability_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sepcomp/errors.hpp"
#include "sepcomp/hullsvm.hpp"

namespace sepcomp {

std::string_view to_string(SeparabilityCertificate c) {
    switch (c) {
        case SeparabilityCertificate::feasible_point: return "feasible_point";
        case SeparabilityCertificate::hull_intersection: return "hull_intersection";
        case SeparabilityCertificate::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;
constexpr std::size_t kMaxPivots = 200'000;
constexpr std::size_t kDegenerateSwitch = 50;

// Dense tableau for min 1^T a  s.t.  A l + a = rhs, l, a >= 0.
// Rows 0..rows-1 are constraints, row `rows` holds reduced costs; the last
// column holds the right-hand side (and minus the objective in the cost row).
struct PhaseOne {
    std::size_t rows;
    std::size_t structural;
    Matrix t;
    std::vector<std::size_t> basis;
    std::size_t pivots = 0;

    PhaseOne(const Matrix& a, const std::vector<double>& rhs)
        : rows(a.rows()), structural(a.cols()), t(a.rows() + 1, a.cols() + a.rows() + 1), basis(a.rows()) {
        const std::size_t rhs_col = t.cols() - 1;
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < structural; ++c) t(r, c) = a(r, c);
            t(r, structural + r) = 1.0;
            t(r, rhs_col) = rhs[r];
            basis[r] = structural + r;
        }
        for (std::size_t c = 0; c < structural; ++c) {
            double s = 0.0;
            for (std::size_t r = 0; r < rows; ++r) s += a(r, c);
            t(rows, c) = -s;
        }
        double obj = 0.0;
        for (double b : rhs) obj += b;
        t(rows, rhs_col) = -obj;
    }

    void pivot(std::size_t pr, std::size_t pc) {
        const double inv = 1.0 / t(pr, pc);
        for (std::size_t c = 0; c < t.cols(); ++c) t(pr, c) *= inv;
        t(pr, pc) = 1.0;
        for (std::size_t r = 0; r <= rows; ++r) {
            if (r == pr) continue;
            const double f = t(r, pc);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < t.cols(); ++c) t(r, c) -= f * t(pr, c);
            t(r, pc) = 0.0;
        }
        basis[pr] = pc;
        ++pivots;
    }

    // Dantzig pricing, falling back to Bland's rule after a run of degenerate pivots.
    bool solve() {
        const std::size_t rhs_col = t.cols() - 1;
        std::size_t degenerate_run = 0;
        while (pivots < kMaxPivots) {
            const bool bland = degenerate_run >= kDegenerateSwitch;
            std::size_t enter = t.cols();
            double best = -kCostTol;
            for (std::size_t c = 0; c < rhs_col; ++c) {
                const double rc = t(rows, c);
                if (rc < best) {
                    enter = c;
                    if (bland) break;
                    best = rc;
                }
            }
            if (enter == t.cols()) return true;

            std::size_t leave = rows;
            double ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < rows; ++r) {
                const double e = t(r, enter);
                if (e <= kPivotTol) continue;
                const double q = t(r, rhs_col) / e;
                if (q < ratio || (q == ratio && basis[r] < basis[leave])) {
                    ratio = q;
                    leave = r;
                }
            }
            if (leave == rows) return true;  // unbounded ray; cannot happen for phase I
            degenerate_run = ratio <= 0.0 ? degenerate_run + 1 : 0;
            pivot(leave, enter);
        }
        return false;
    }

    double objective() const { return -t(rows, t.cols() - 1); }

    // Dual multiplier of constraint r: artificial r has cost 1 and column e_r.
    double dual(std::size_t r) const { return 1.0 - t(rows, structural + r); }

    std::vector<double> primal() const {
        std::vector<double> x(structural, 0.0);
        for (std::size_t r = 0; r < rows; ++r)
            if (basis[r] < structural) x[basis[r]] = std::max(0.0, t(r, t.cols() - 1));
        return x;
    }
};

}  // namespace

SeparabilityResult is_separable_lp(const SupportSet& set) {
    const auto pos_rows = set.positive_indices();
    const auto neg_rows = set.negative_indices();
    if (pos_rows.empty() || neg_rows.empty()) throw ContractError("is_separable_lp: both classes must be nonempty");

    const std::size_t n = set.dim();
    const std::size_t count = set.size();
    const double scale = std::max(1.0, set.radius());

    // Columns follow set order. Rows: n feature rows (rhs 0), then the two
    // class-sum rows (rhs 1). Features are divided by `scale` for conditioning.
    Matrix a(n + 2, count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto& p = set[k];
        const double sign = p.y > 0 ? 1.0 : -1.0;
        for (std::size_t r = 0; r < n; ++r) a(r, k) = sign * p.x[r] / scale;
        a(p.y > 0 ? n : n + 1, k) = 1.0;
    }
    std::vector<double> rhs(n + 2, 0.0);
    rhs[n] = 1.0;
    rhs[n + 1] = 1.0;

    PhaseOne lp(a, rhs);
    const bool finished = lp.solve();

    SeparabilityResult res;
    res.pivots = lp.pivots;
    res.phase1_objective = lp.objective();

    // Candidate hyperplane from the duals: -pi_w separates the classes when the
    // phase-I optimum pi_+ + pi_- is positive.
    Vector w(n);
    for (std::size_t r = 0; r < n; ++r) w[r] = -lp.dual(r);
    if (finished && squared_norm(w) > 0.0) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (auto k : pos_rows) lo = std::min(lo, dot(w, set[k].x));
        for (auto k : neg_rows) hi = std::max(hi, dot(w, set[k].x));
        if (lo > hi) {
            const double s = 2.0 / (lo - hi);
            Hyperplane h(scaled(w, s), -(lo + hi) / 2.0 * s);
            if (functional_margin(h, set) >= 1.0 - 1e-9) {
                res.separable = true;
                res.certificate = SeparabilityCertificate::feasible_point;
                res.hyperplane = std::move(h);
                return res;
            }
        }
    }

    // Otherwise check the primal point as an intersection certificate.
    if (finished && res.phase1_objective <= 1e-9) {
        res.intersection_weights = lp.primal();
        Vector gap(n, 0.0);
        double sum_pos = 0.0, sum_neg = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            const double l = res.intersection_weights[k];
            const double sign = set[k].y > 0 ? 1.0 : -1.0;
            (set[k].y > 0 ? sum_pos : sum_neg) += l;
            for (std::size_t r = 0; r < n; ++r) gap[r] += sign * l * set[k].x[r];
        }
        if (std::abs(sum_pos - 1.0) <= 1e-9 && std::abs(sum_neg - 1.0) <= 1e-9 && norm(gap) <= 1e-8 * scale) {
            res.certificate = SeparabilityCertificate::hull_intersection;
            return res;
        }
    }
    res.certificate = SeparabilityCertificate::inconclusive;
    return res;
}

}  // namespace sepcomp
