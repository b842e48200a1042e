#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "sepcomp/dataset.hpp"
#include "sepcomp/linalg.hpp"

namespace sepcomp {

enum class Ensemble { gaussian, rademacher, uniform, explicit_matrix };

std::string_view to_string(Ensemble e);
/// Accepts "gaussian", "rademacher", "uniform", "explicit". Throws ContractError otherwise.
Ensemble parse_ensemble(std::string_view tag);

/// Compression matrix Q (m x n) together with how it was produced.
class ProjectionMatrix {
public:
    /// Wraps a user-supplied matrix (ensemble = explicit).
    explicit ProjectionMatrix(Matrix entries, bool scaled = false);
    ProjectionMatrix(Matrix entries, Ensemble ensemble, std::uint64_t seed, bool scaled);

    std::size_t m() const { return entries_.rows(); }
    std::size_t n() const { return entries_.cols(); }
    const Matrix& entries() const { return entries_; }
    Ensemble ensemble() const { return ensemble_; }
    std::uint64_t seed() const { return seed_; }
    bool scaled() const { return scaled_; }

    double operator()(std::size_t r, std::size_t c) const { return entries_(r, c); }

private:
    Matrix entries_;
    Ensemble ensemble_ = Ensemble::explicit_matrix;
    std::uint64_t seed_ = 0;
    bool scaled_ = false;
};

/// i.i.d. entries: gaussian N(0,1), rademacher +-1, uniform on [-sqrt3, sqrt3].
/// With `scaled`, each entry is divided by sqrt(m).
ProjectionMatrix generate_projection(std::size_t m, std::size_t n, Ensemble ensemble, std::uint64_t seed,
                                     bool scaled);

Vector apply(const ProjectionMatrix& q, std::span<const double> x);
// Exact match for vectors, so unqualified calls do not resolve to std::apply.
inline Vector apply(const ProjectionMatrix& q, const Vector& x) { return apply(q, std::span<const double>(x)); }
SupportSet apply_set(const ProjectionMatrix& q, const SupportSet& set);

/// Headerless row-major CSV, m rows of n values.
ProjectionMatrix load_matrix_csv(const std::filesystem::path& path);
void save_matrix_csv(const ProjectionMatrix& q, const std::filesystem::path& path);

}  // namespace sepcomp
