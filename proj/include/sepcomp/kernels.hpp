#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP
// variant with identical per-element arithmetic; the parallel reductions
// break ties by lowest index so both variants return bit-identical results
// for any thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "sepcomp/linalg.hpp"

namespace sepcomp::kernels {

/// Largest pair deviation and the lexicographically smallest pair attaining it.
struct PairMax {
    double value = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
};

struct IndexedValue {
    std::size_t index = 0;
    double value = 0.0;
};

/// Largest ||Q_S^T Q_S - I|| over supports S of one fixed size.
struct SupportMax {
    double value = 0.0;
    std::vector<std::size_t> support;
    std::uint64_t examined = 0;
};

std::uint64_t binomial(std::size_t n, std::size_t k);
/// Spectral norm of Q_S^T Q_S - I for one support.
double support_deviation(const Matrix& q, std::span<const std::size_t> support);

namespace serial {
std::vector<Vector> project(const Matrix& q, const std::vector<Vector>& points);
/// max over i <= j of |<P_i, P_j> - <X_i, X_j>|.
PairMax max_inner_product_deviation(const std::vector<Vector>& original, const std::vector<Vector>& projected);
/// max over i < j of | ||P_i - P_j||^2 - ||X_i - X_j||^2 |.
PairMax max_squared_distance_deviation(const std::vector<Vector>& original, const std::vector<Vector>& projected);
/// Lowest-index argmin / argmax of <x, direction> over the rows listed in `subset`.
IndexedValue argmin_projection(const std::vector<Vector>& points, std::span<const std::size_t> subset,
                               std::span<const double> direction);
IndexedValue argmax_projection(const std::vector<Vector>& points, std::span<const std::size_t> subset,
                               std::span<const double> direction);
SupportMax max_support_deviation(const Matrix& q, std::size_t s);
}  // namespace serial

namespace parallel {
std::vector<Vector> project(const Matrix& q, const std::vector<Vector>& points);
PairMax max_inner_product_deviation(const std::vector<Vector>& original, const std::vector<Vector>& projected);
PairMax max_squared_distance_deviation(const std::vector<Vector>& original, const std::vector<Vector>& projected);
IndexedValue argmin_projection(const std::vector<Vector>& points, std::span<const std::size_t> subset,
                               std::span<const double> direction);
IndexedValue argmax_projection(const std::vector<Vector>& points, std::span<const std::size_t> subset,
                               std::span<const double> direction);
SupportMax max_support_deviation(const Matrix& q, std::size_t s);
}  // namespace parallel

}  // namespace sepcomp::kernels
