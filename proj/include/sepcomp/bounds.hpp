#pragma once

#include <cstdint>
#include <optional>

namespace sepcomp::bounds {

/// Constants the sub-Gaussian results leave unnamed. C belongs to the RIP
/// sample bound, K to the Gaussian-width JL bound; neither is fixed by theory
/// for a given ensemble, so the defaults of 1.0 are placeholders. Calibrate
/// them empirically (see harness::calibrate) before trusting predicted m.
struct BoundsConfig {
    double C = 1.0;
    double K = 1.0;
    double epsilon = 0.05;     // failure probability
    double delta_conf = 0.05;  // confidence parameter of the generalization bound

    void validate() const;
};

/// Smallest integer m with m >= C delta^-2 (s ln(en/s) + ln(2/eps)).
std::uint64_t rip_sample_bound(std::size_t s, std::size_t n, double delta, double epsilon, double C);
/// The real-valued right-hand side of rip_sample_bound.
double rip_sample_rhs(std::size_t s, std::size_t n, double delta, double epsilon, double C);

/// Smallest integer m with m > C R^4 ||w0||^4 (2s ln(en/(2s)) + ln(2/eps)).
std::uint64_t sparse_compression_length(double radius, double w0_norm, std::size_t s, std::size_t n,
                                        double epsilon, double C);
double sparse_compression_rhs(double radius, double w0_norm, std::size_t s, std::size_t n, double epsilon,
                              double C);

/// Squared-distance distortion of Q/sqrt(m) over a set of Gaussian width
/// `width` and radius `radius`, holding with probability 1 - eps:
/// (K^2 t^2 + 2 sqrt(m) K t r) / m,  t = width + ln(2/eps) r.
double jl_distortion_bound(std::uint64_t m, double width, double radius, double epsilon, double K);

/// True iff 1.5 * jl_distortion_bound(...) < 1 / ||w0||^2.
bool general_compression_check(std::uint64_t m, double width, double radius, double epsilon, double K,
                               double w0_norm);

/// Smallest m <= m_cap passing general_compression_check, by bisection.
std::optional<std::uint64_t> min_general_compression_length(double width, double radius, double epsilon,
                                                            double K, double w0_norm, std::uint64_t m_cap);

/// Hard-SVM generalization bound L(z) = (8Rz + 2 + sqrt(ln(4 log2(z) / delta))) / sqrt(|S|).
double gen_bound_L(double radius, double z, double delta_conf, std::uint64_t sample_size);

/// L / sqrt(1 - eta ||w_S||^2); requires eta ||w_S||^2 < 1.
double compressed_gen_bound(double L_value, double eta, double ws_norm);

}  // namespace sepcomp::bounds
