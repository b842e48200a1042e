#pragma once

// Test-only oracles and instance generators. Nothing here calls the library's
// numerical routines: each oracle recomputes its quantity from scratch with
// the plainest possible loop so a shared bug cannot hide on both sides.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "sepcomp/dataset.hpp"
#include "sepcomp/linalg.hpp"
#include "sepcomp/projection.hpp"

namespace oracle {

using sepcomp::Matrix;
using sepcomp::Vector;

inline double dot_plain(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline Vector multiply(const Matrix& q, const Vector& x) {
    Vector out(q.rows(), 0.0);
    for (std::size_t r = 0; r < q.rows(); ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < q.cols(); ++c) s += q(r, c) * x[c];
        out[r] = s;
    }
    return out;
}

inline double sq_dist(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return s;
}

struct PairResult {
    double value = 0.0;
    std::size_t i = 0, j = 0;
};

// max over i <= j of |<Qx_i,Qx_j> - <x_i,x_j>|, first pair in row-major order.
inline PairResult brute_inner_product(const Matrix& q, const std::vector<Vector>& a) {
    std::vector<Vector> p;
    for (const auto& x : a) p.push_back(multiply(q, x));
    PairResult best;
    bool first = true;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j) {
            const double d = std::abs(dot_plain(p[i], p[j]) - dot_plain(a[i], a[j]));
            if (first || d > best.value) best = {d, i, j};
            first = false;
        }
    return best;
}

// max over i < j of | ||Qx_i - Qx_j||^2 - ||x_i - x_j||^2 |, differencing the
// projected points as the library does so the two agree bit for bit.
inline PairResult brute_squared_distance(const Matrix& q, const std::vector<Vector>& a) {
    std::vector<Vector> p;
    for (const auto& x : a) p.push_back(multiply(q, x));
    PairResult best;
    bool first = true;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const double d = std::abs(sq_dist(p[i], p[j]) - sq_dist(a[i], a[j]));
            if (first || d > best.value) best = {d, i, j};
            first = false;
        }
    return best;
}

// Lower bound on the s-restricted isometry constant by random search over
// unit s-sparse vectors.
inline double rip_lower_bound(const Matrix& q, std::size_t s, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    const std::size_t n = q.cols();
    std::vector<std::size_t> idx(n);
    double best = 0.0;
    for (std::size_t t = 0; t < samples; ++t) {
        for (std::size_t k = 0; k < n; ++k) idx[k] = k;
        std::shuffle(idx.begin(), idx.end(), gen);
        Vector x(n, 0.0);
        double nrm = 0.0;
        for (std::size_t k = 0; k < s; ++k) {
            x[idx[k]] = normal(gen);
            nrm += x[idx[k]] * x[idx[k]];
        }
        nrm = std::sqrt(nrm);
        for (auto& v : x) v /= nrm;
        const Vector qx = multiply(q, x);
        best = std::max(best, std::abs(dot_plain(qx, qx) - 1.0));
    }
    return best;
}

// Enumerates barycentric grid points of a simplex with `k` vertices at
// resolution 1/steps, calling f(weights).
template <class F>
void simplex_grid(std::size_t k, std::size_t steps, F&& f) {
    std::vector<std::size_t> c(k, 0);
    std::vector<double> w(k);
    auto rec = [&](auto& self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == k) {
            c[pos] = left;
            for (std::size_t i = 0; i < k; ++i) w[i] = static_cast<double>(c[i]) / static_cast<double>(steps);
            f(w);
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            c[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, steps);
}

inline Vector combine(const std::vector<Vector>& pts, const std::vector<double>& w) {
    Vector out(pts[0].size(), 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += w[i] * pts[i][k];
    return out;
}

// Distance between conv(P) and conv(N): grid scan over the negative hull,
// and for each grid point the exact distance to conv(P) found by a second
// grid scan refined with projected coordinate descent on the weights.
// Accurate to well below 1e-4 for the tiny instances it is used on.
inline double hull_distance_grid(const std::vector<Vector>& pos, const std::vector<Vector>& neg, std::size_t steps) {
    std::vector<Vector> pos_grid, neg_grid;
    simplex_grid(pos.size(), steps, [&](const std::vector<double>& w) { pos_grid.push_back(combine(pos, w)); });
    simplex_grid(neg.size(), steps, [&](const std::vector<double>& w) { neg_grid.push_back(combine(neg, w)); });
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> bp, bn;
    std::size_t ip = 0, in = 0;
    for (std::size_t a = 0; a < pos_grid.size(); ++a)
        for (std::size_t b = 0; b < neg_grid.size(); ++b) {
            const double d = sq_dist(pos_grid[a], neg_grid[b]);
            if (d < best) {
                best = d;
                ip = a;
                in = b;
            }
        }
    // Refine: pairwise weight transfers between vertices, shrinking step.
    simplex_grid(pos.size(), steps, [&, k = std::size_t{0}](const std::vector<double>& w) mutable {
        if (k++ == ip) bp = w;
    });
    simplex_grid(neg.size(), steps, [&, k = std::size_t{0}](const std::vector<double>& w) mutable {
        if (k++ == in) bn = w;
    });
    double step = 1.0 / static_cast<double>(steps);
    auto dist = [&] { return sq_dist(combine(pos, bp), combine(neg, bn)); };
    double cur = dist();
    while (step > 1e-12) {
        bool improved = false;
        for (auto* w : {&bp, &bn}) {
            for (std::size_t i = 0; i < w->size(); ++i)
                for (std::size_t j = 0; j < w->size(); ++j) {
                    if (i == j) continue;
                    const double t = std::min(step, (*w)[j]);
                    if (t <= 0.0) continue;
                    (*w)[i] += t;
                    (*w)[j] -= t;
                    const double d = dist();
                    if (d < cur - 1e-18) {
                        cur = d;
                        improved = true;
                    } else {
                        (*w)[i] -= t;
                        (*w)[j] += t;
                    }
                }
        }
        if (!improved) step *= 0.5;
    }
    return std::sqrt(std::min(cur, best));
}

inline double min_functional_margin(const Vector& w, double b, const sepcomp::SupportSet& set) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : set.points()) best = std::min(best, p.y * (dot_plain(w, p.x) + b));
    return best;
}

}  // namespace oracle

namespace gen {

using sepcomp::LabeledPoint;
using sepcomp::SupportSet;
using sepcomp::Vector;

// Two Gaussian blobs around +-c, labels by side. May or may not be separable.
inline SupportSet blobs(std::mt19937_64& g, std::size_t n, std::size_t per_class, double offset, double spread) {
    std::normal_distribution<double> normal;
    Vector dir(n);
    double nrm = 0.0;
    for (auto& v : dir) {
        v = normal(g);
        nrm += v * v;
    }
    nrm = std::sqrt(nrm);
    for (auto& v : dir) v /= nrm;
    std::vector<LabeledPoint> pts;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const int y = (i % 2 == 0) ? 1 : -1;
        Vector x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = y * offset * dir[k] + spread * normal(g);
        pts.push_back({x, y});
    }
    return SupportSet(std::move(pts));
}

inline std::size_t uniform_int(std::mt19937_64& g, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

inline double uniform_real(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline sepcomp::Matrix gaussian_matrix(std::mt19937_64& g, std::size_t m, std::size_t n, double scale) {
    std::normal_distribution<double> normal;
    sepcomp::Matrix q(m, n);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) q(r, c) = scale * normal(g);
    return q;
}

// I + eps * G / sqrt(n): a near-isometry whose distortion is controlled by eps.
inline sepcomp::Matrix near_identity(std::mt19937_64& g, std::size_t n, double eps) {
    auto q = gaussian_matrix(g, n, n, eps / std::sqrt(static_cast<double>(n)));
    for (std::size_t k = 0; k < n; ++k) q(k, k) += 1.0;
    return q;
}

}  // namespace gen
