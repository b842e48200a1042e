#include "sepcomp/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sepcomp/errors.hpp"

namespace sepcomp::bounds {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

std::uint64_t ceil_to_count(double v) {
    require(std::isfinite(v) && v < 1.8e19, "bound exceeds the representable range");
    return static_cast<std::uint64_t>(std::ceil(v));
}

}  // namespace

void BoundsConfig::validate() const {
    require(C > 0.0 && std::isfinite(C), "C must be positive");
    require(K > 0.0 && std::isfinite(K), "K must be positive");
    require(in_open_unit(epsilon), "epsilon must lie in (0, 1)");
    require(in_open_unit(delta_conf), "delta_conf must lie in (0, 1)");
}

double rip_sample_rhs(std::size_t s, std::size_t n, double delta, double epsilon, double C) {
    require(s >= 1 && s <= n, "rip_sample_bound: need 1 <= s <= n");
    require(in_open_unit(delta) || delta == 1.0, "rip_sample_bound: delta must lie in (0, 1]");
    require(in_open_unit(epsilon), "rip_sample_bound: epsilon must lie in (0, 1)");
    require(C > 0.0, "rip_sample_bound: C must be positive");
    const double sd = static_cast<double>(s);
    const double nd = static_cast<double>(n);
    return C / (delta * delta) * (sd * std::log(std::numbers::e * nd / sd) + std::log(2.0 / epsilon));
}

std::uint64_t rip_sample_bound(std::size_t s, std::size_t n, double delta, double epsilon, double C) {
    return ceil_to_count(rip_sample_rhs(s, n, delta, epsilon, C));
}

double sparse_compression_rhs(double radius, double w0_norm, std::size_t s, std::size_t n, double epsilon,
                              double C) {
    require(radius > 0.0, "sparse_compression_length: R must be positive");
    require(w0_norm > 0.0, "sparse_compression_length: ||w0|| must be positive");
    require(s >= 1 && 2 * s <= n, "sparse_compression_length: need 1 <= 2s <= n");
    require(in_open_unit(epsilon), "sparse_compression_length: epsilon must lie in (0, 1)");
    require(C > 0.0, "sparse_compression_length: C must be positive");
    const double two_s = 2.0 * static_cast<double>(s);
    const double rw = radius * w0_norm;
    return C * rw * rw * rw * rw *
           (two_s * std::log(std::numbers::e * static_cast<double>(n) / two_s) + std::log(2.0 / epsilon));
}

std::uint64_t sparse_compression_length(double radius, double w0_norm, std::size_t s, std::size_t n,
                                        double epsilon, double C) {
    const double rhs = sparse_compression_rhs(radius, w0_norm, s, n, epsilon, C);
    require(std::isfinite(rhs) && rhs < 1.8e19, "bound exceeds the representable range");
    // Strict inequality: the smallest integer above rhs.
    return static_cast<std::uint64_t>(std::floor(rhs)) + 1;
}

double jl_distortion_bound(std::uint64_t m, double width, double radius, double epsilon, double K) {
    require(m >= 1, "jl_distortion_bound: m must be >= 1");
    require(width >= 0.0, "jl_distortion_bound: width must be >= 0");
    require(radius >= 0.0, "jl_distortion_bound: radius must be >= 0");
    require(in_open_unit(epsilon), "jl_distortion_bound: epsilon must lie in (0, 1)");
    require(K > 0.0, "jl_distortion_bound: K must be positive");
    const double md = static_cast<double>(m);
    const double t = width + std::log(2.0 / epsilon) * radius;
    return (K * K * t * t + 2.0 * std::sqrt(md) * K * t * radius) / md;
}

bool general_compression_check(std::uint64_t m, double width, double radius, double epsilon, double K,
                               double w0_norm) {
    require(w0_norm > 0.0, "general_compression_check: ||w0|| must be positive");
    return 1.5 * jl_distortion_bound(m, width, radius, epsilon, K) < 1.0 / (w0_norm * w0_norm);
}

std::optional<std::uint64_t> min_general_compression_length(double width, double radius, double epsilon,
                                                            double K, double w0_norm, std::uint64_t m_cap) {
    require(m_cap >= 1, "min_general_compression_length: m_cap must be >= 1");
    auto ok = [&](std::uint64_t m) { return general_compression_check(m, width, radius, epsilon, K, w0_norm); };
    if (!ok(m_cap)) return std::nullopt;
    if (ok(1)) return 1;
    // Invariant: ok(hi), !ok(lo). The bound is decreasing in m.
    std::uint64_t lo = 1, hi = m_cap;
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

double gen_bound_L(double radius, double z, double delta_conf, std::uint64_t sample_size) {
    require(radius > 0.0, "gen_bound_L: R must be positive");
    require(z > 1.0, "gen_bound_L: argument outside bound's domain (z must exceed 1)");
    require(in_open_unit(delta_conf), "gen_bound_L: delta must lie in (0, 1)");
    require(sample_size >= 1, "gen_bound_L: sample size must be >= 1");
    const double log_arg = 4.0 / delta_conf * std::log2(z);
    require(log_arg >= 1.0, "gen_bound_L: argument outside bound's domain (ln of value below 1)");
    return (8.0 * radius * z + 2.0 + std::sqrt(std::log(log_arg))) / std::sqrt(static_cast<double>(sample_size));
}

double compressed_gen_bound(double L_value, double eta, double ws_norm) {
    require(L_value >= 0.0, "compressed_gen_bound: L must be >= 0");
    require(eta >= 0.0, "compressed_gen_bound: eta must be >= 0");
    require(ws_norm >= 0.0, "compressed_gen_bound: ||w_S|| must be >= 0");
    const double load = eta * ws_norm * ws_norm;
    require(load < 1.0, "compressed_gen_bound: compression threshold violated (eta ||w_S||^2 >= 1)");
    return L_value / std::sqrt(1.0 - load);
}

}  // namespace sepcomp::bounds
