#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "sepcomp/linalg.hpp"

namespace sepcomp {

struct LabeledPoint {
    Vector x;
    int y = 1;  // +1 or -1
};

/// Finite, nonempty labeled point set standing in for the support of the
/// data distribution. Every statement the toolkit makes about "the support"
/// is a statement about all points in one of these.
class SupportSet {
public:
    /// Throws ContractError if empty, ragged, non-finite, or labels not in {+1,-1}.
    explicit SupportSet(std::vector<LabeledPoint> points);

    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<LabeledPoint>& points() const { return points_; }
    const LabeledPoint& operator[](std::size_t i) const { return points_[i]; }

    std::vector<Vector> positives() const;
    std::vector<Vector> negatives() const;
    /// Row indices of the positive / negative points, in set order.
    std::vector<std::size_t> positive_indices() const;
    std::vector<std::size_t> negative_indices() const;
    /// Feature vectors only, in set order.
    std::vector<Vector> features() const;

    double radius() const;
    std::size_t sparsity() const;

    bool operator==(const SupportSet&) const;

private:
    std::vector<LabeledPoint> points_;
    std::size_t dim_ = 0;
};

/// Hyperplane {x : <w, x> + b = 0}. With functional margin 1 on the data its
/// geometric margin is 1/||w||.
struct Hyperplane {
    Vector w;
    double b = 0.0;

    Hyperplane() = default;
    Hyperplane(Vector w_, double b_);

    double margin() const { return 1.0 / norm(w); }
    double value(std::span<const double> x) const { return dot(w, x) + b; }
};

struct GenConfig {
    std::size_t n = 2;
    std::size_t count_per_class = 1;
    double margin = 1.0;  // gamma; ||w0|| = 1/gamma
    double radius = 2.0;  // R
    std::optional<std::size_t> sparsity;
    double bias = 0.0;  // b0
    std::uint64_t seed = 0;
    /// Candidate draws allowed before giving up on rejection sampling.
    std::uint64_t max_draws = 50'000'000;

    void validate() const;
};

SupportSet load_csv(const std::filesystem::path& path);
void save_csv(const SupportSet& set, const std::filesystem::path& path);

/// Returns the sampled set and the hyperplane (w0, b0) that separates it with
/// functional margin at least 1.
std::pair<SupportSet, Hyperplane> generate_separable(const GenConfig& cfg);

/// Decimal rendering with 17 significant digits, the CSV cell format.
std::string format_double(double v);

}  // namespace sepcomp
