#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sepcomp/linalg.hpp"
#include "sepcomp/projection.hpp"

namespace sepcomp {

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Exact supremum of a pairwise deviation over a finite set, with the
/// lexicographically smallest pair attaining it.
struct DistortionMeasure {
    double eta = 0.0;
    IndexPair argmax{0, 0};
};

struct DistortionReport {
    double eta_ip = 0.0;
    double eta_sd = 0.0;
    IndexPair argmax_ip{0, 0};
    IndexPair argmax_sd{0, 0};
    std::size_t set_size = 0;
    std::size_t n = 0;
    std::size_t m = 0;
};

struct RipEstimate {
    std::size_t s = 0;
    double delta_s = 0.0;
    std::string method = "exact-enumeration";
    std::uint64_t supports_examined = 0;
    std::vector<std::size_t> worst_support;
};

struct GaussianWidthEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

/// Largest number of supports rip_constant_exact will enumerate.
inline constexpr std::uint64_t kMaxRipSupports = 1'000'000;

/// sup over x, x' in A (x = x' included) of |<Qx,Qx'> - <x,x'>|.
DistortionMeasure eta_inner_product(const ProjectionMatrix& q, const std::vector<Vector>& a);
/// sup over x != x' in A of | ||Qx-Qx'||^2 - ||x-x'||^2 |.
DistortionMeasure eta_squared_distance(const ProjectionMatrix& q, const std::vector<Vector>& a);
/// Both measures in one report.
DistortionReport audit(const ProjectionMatrix& q, const std::vector<Vector>& a);

/// An eta-inner-product-preserving map is 4*eta-squared-distance-preserving.
double ip_to_sd_bound(double eta);
/// When 0 is in A, an eta-squared-distance-preserving map is 1.5*eta-inner-product-preserving.
/// Throws ContractError("origin required") if no point of A is exactly zero.
double sd_to_ip_bound(double eta, const std::vector<Vector>& a);

/// Exact s-restricted isometry constant by enumerating all C(n, s) supports.
RipEstimate rip_constant_exact(const ProjectionMatrix& q, std::size_t s);

/// Inner-product distortion bound delta_2s * R^2 over s-sparse points of norm <= R.
double sparse_ip_bound(double delta_2s, double radius);

/// Monte Carlo estimate of E sup_{x in A} <g, x>, g ~ N(0, I_n).
GaussianWidthEstimate gaussian_width_mc(const std::vector<Vector>& a, std::size_t trials, std::uint64_t seed);

}  // namespace sepcomp
