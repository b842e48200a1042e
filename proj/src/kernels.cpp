#include "sepcomp/kernels.hpp"

#include <omp.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sepcomp::kernels {

namespace {

inline bool better_pair(double v, std::size_t i, std::size_t j, const PairMax& best) {
    if (v != best.value) return v > best.value;
    return std::pair(i, j) < std::pair(best.i, best.j);
}

inline double ip_deviation(const std::vector<Vector>& x, const std::vector<Vector>& p, std::size_t i,
                           std::size_t j) {
    return std::abs(dot(p[i], p[j]) - dot(x[i], x[j]));
}

inline double sd_deviation(const std::vector<Vector>& x, const std::vector<Vector>& p, std::size_t i,
                           std::size_t j) {
    double dp = 0.0, dx = 0.0;
    for (std::size_t k = 0; k < p[i].size(); ++k) {
        const double t = p[i][k] - p[j][k];
        dp += t * t;
    }
    for (std::size_t k = 0; k < x[i].size(); ++k) {
        const double t = x[i][k] - x[j][k];
        dx += t * t;
    }
    return std::abs(dp - dx);
}

// Lexicographic successor of a k-combination of {0..n-1}; false after the last.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// The combination of lexicographic rank `rank` among k-subsets of {0..n-1}.
std::vector<std::size_t> unrank_combination(std::uint64_t rank, std::size_t n, std::size_t k) {
    std::vector<std::size_t> c;
    c.reserve(k);
    std::size_t x = 0;
    for (std::size_t slot = 0; slot < k; ++slot) {
        for (;; ++x) {
            const std::uint64_t with_x = binomial(n - x - 1, k - slot - 1);
            if (rank < with_x) break;
            rank -= with_x;
        }
        c.push_back(x++);
    }
    return c;
}

SupportMax scan_supports(const Matrix& q, std::size_t s, std::uint64_t lo, std::uint64_t hi) {
    SupportMax best;
    best.value = -1.0;
    if (lo >= hi) return best;
    auto c = unrank_combination(lo, q.cols(), s);
    for (std::uint64_t r = lo; r < hi; ++r) {
        const double v = support_deviation(q, c);
        ++best.examined;
        if (v > best.value) {
            best.value = v;
            best.support = c;
        }
        if (r + 1 < hi) next_combination(c, q.cols());
    }
    return best;
}

}  // namespace

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        if (r > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
        r = r * num / i;
    }
    return r;
}

double support_deviation(const Matrix& q, std::span<const std::size_t> support) {
    const std::size_t s = support.size();
    if (s == 1) {
        double acc = 0.0;
        for (std::size_t r = 0; r < q.rows(); ++r) acc += q(r, support[0]) * q(r, support[0]);
        return std::abs(acc - 1.0);
    }
    Eigen::MatrixXd g(s, s);
    for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t b = a; b < s; ++b) {
            double acc = 0.0;
            for (std::size_t r = 0; r < q.rows(); ++r) acc += q(r, support[a]) * q(r, support[b]);
            if (a == b) acc -= 1.0;
            g(a, b) = acc;
            g(b, a) = acc;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

namespace serial {

std::vector<Vector> project(const Matrix& q, const std::vector<Vector>& points) {
    std::vector<Vector> out(points.size(), Vector(q.rows()));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t r = 0; r < q.rows(); ++r) out[i][r] = dot(q.row(r), points[i]);
    return out;
}

PairMax max_inner_product_deviation(const std::vector<Vector>& x, const std::vector<Vector>& p) {
    PairMax best{-1.0, 0, 0};
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i; j < x.size(); ++j) {
            const double v = ip_deviation(x, p, i, j);
            if (v > best.value) best = {v, i, j};
        }
    if (best.value < 0) best.value = 0;
    return best;
}

PairMax max_squared_distance_deviation(const std::vector<Vector>& x, const std::vector<Vector>& p) {
    PairMax best{0.0, 0, 0};
    bool any = false;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const double v = sd_deviation(x, p, i, j);
            if (!any || v > best.value) best = {v, i, j};
            any = true;
        }
    return best;
}

IndexedValue argmin_projection(const std::vector<Vector>& points, std::span<const std::size_t> subset,
                               std::span<const double> direction) {
    IndexedValue best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < subset.size(); ++k) {
        const double v = dot(points[subset[k]], direction);
        if (v < best.value) best = {k, v};
    }
    return best;
}

IndexedValue argmax_projection(const std::vector<Vector>& points, std::span<const std::size_t> subset,
                               std::span<const double> direction) {
    IndexedValue best{0, -std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < subset.size(); ++k) {
        const double v = dot(points[subset[k]], direction);
        if (v > best.value) best = {k, v};
    }
    return best;
}

SupportMax max_support_deviation(const Matrix& q, std::size_t s) {
    auto best = scan_supports(q, s, 0, binomial(q.cols(), s));
    best.value = std::max(best.value, 0.0);
    return best;
}

}  // namespace serial

namespace parallel {

std::vector<Vector> project(const Matrix& q, const std::vector<Vector>& points) {
    std::vector<Vector> out(points.size(), Vector(q.rows()));
    const auto count = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i)
        for (std::size_t r = 0; r < q.rows(); ++r) out[i][r] = dot(q.row(r), points[i]);
    return out;
}

PairMax max_inner_product_deviation(const std::vector<Vector>& x, const std::vector<Vector>& p) {
    PairMax best{-1.0, 0, 0};
    const auto count = static_cast<std::int64_t>(x.size());
#pragma omp parallel
    {
        PairMax local{-1.0, 0, 0};
#pragma omp for schedule(dynamic, 8) nowait
        for (std::int64_t ii = 0; ii < count; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            for (std::size_t j = i; j < x.size(); ++j) {
                const double v = ip_deviation(x, p, i, j);
                if (better_pair(v, i, j, local)) local = {v, i, j};
            }
        }
#pragma omp critical
        if (better_pair(local.value, local.i, local.j, best)) best = local;
    }
    if (best.value < 0) best = {0.0, 0, 0};
    return best;
}

PairMax max_squared_distance_deviation(const std::vector<Vector>& x, const std::vector<Vector>& p) {
    if (x.size() < 2) return {0.0, 0, 0};
    PairMax best{-1.0, 0, 0};
    const auto count = static_cast<std::int64_t>(x.size());
#pragma omp parallel
    {
        PairMax local{-1.0, 0, 0};
#pragma omp for schedule(dynamic, 8) nowait
        for (std::int64_t ii = 0; ii < count; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            for (std::size_t j = i + 1; j < x.size(); ++j) {
                const double v = sd_deviation(x, p, i, j);
                if (better_pair(v, i, j, local)) local = {v, i, j};
            }
        }
#pragma omp critical
        if (better_pair(local.value, local.i, local.j, best)) best = local;
    }
    return best;
}

namespace {
template <class Better>
IndexedValue arg_extreme(const std::vector<Vector>& points, std::span<const std::size_t> subset,
                         std::span<const double> direction, double init, Better better) {
    IndexedValue best{0, init};
    const auto count = static_cast<std::int64_t>(subset.size());
    // Small scans are not worth a parallel region.
    if (count * static_cast<std::int64_t>(direction.size()) < 20000) {
        for (std::size_t k = 0; k < subset.size(); ++k) {
            const double v = dot(points[subset[k]], direction);
            if (better(v, best.value)) best = {k, v};
        }
        return best;
    }
#pragma omp parallel
    {
        IndexedValue local{0, init};
#pragma omp for schedule(static) nowait
        for (std::int64_t kk = 0; kk < count; ++kk) {
            const auto k = static_cast<std::size_t>(kk);
            const double v = dot(points[subset[k]], direction);
            if (better(v, local.value)) local = {k, v};
        }
#pragma omp critical
        if (better(local.value, best.value) || (local.value == best.value && local.index < best.index))
            best = local;
    }
    return best;
}
}  // namespace

IndexedValue argmin_projection(const std::vector<Vector>& points, std::span<const std::size_t> subset,
                               std::span<const double> direction) {
    return arg_extreme(points, subset, direction, std::numeric_limits<double>::infinity(),
                       [](double a, double b) { return a < b; });
}

IndexedValue argmax_projection(const std::vector<Vector>& points, std::span<const std::size_t> subset,
                               std::span<const double> direction) {
    return arg_extreme(points, subset, direction, -std::numeric_limits<double>::infinity(),
                       [](double a, double b) { return a > b; });
}

SupportMax max_support_deviation(const Matrix& q, std::size_t s) {
    const std::uint64_t total = binomial(q.cols(), s);
    SupportMax best;
    best.value = -1.0;
    std::uint64_t examined = 0;
    std::uint64_t best_rank = 0;
#pragma omp parallel reduction(+ : examined)
    {
        const auto threads = static_cast<std::uint64_t>(omp_get_num_threads());
        const auto tid = static_cast<std::uint64_t>(omp_get_thread_num());
        const std::uint64_t chunk = (total + threads - 1) / threads;
        const std::uint64_t lo = std::min(total, tid * chunk);
        const std::uint64_t hi = std::min(total, lo + chunk);
        auto local = scan_supports(q, s, lo, hi);
        examined += local.examined;
#pragma omp critical
        // Chunks are contiguous rank ranges, so the lowest-rank winner is the one
        // with the smallest starting rank among equal values.
        if (local.value > best.value || (local.value == best.value && local.value >= 0 && lo < best_rank)) {
            best.value = local.value;
            best.support = std::move(local.support);
            best_rank = lo;
        }
    }
    best.examined = examined;
    best.value = std::max(best.value, 0.0);
    return best;
}

}  // namespace parallel

}  // namespace sepcomp::kernels
