#include "sepcomp/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sepcomp/errors.hpp"
#include "sepcomp/kernels.hpp"
#include "sepcomp/rng.hpp"

namespace sepcomp {

namespace {

void check_point_set(const ProjectionMatrix& q, const std::vector<Vector>& a, const char* what) {
    if (a.empty()) throw ContractError(std::string(what) + ": point set must be nonempty");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].size() != q.n())
            throw ContractError(std::string(what) + ": point " + std::to_string(i) + " has dimension " +
                                std::to_string(a[i].size()) + ", matrix expects " + std::to_string(q.n()));
}

}  // namespace

DistortionMeasure eta_inner_product(const ProjectionMatrix& q, const std::vector<Vector>& a) {
    check_point_set(q, a, "eta_inner_product");
    const auto projected = kernels::parallel::project(q.entries(), a);
    const auto best = kernels::parallel::max_inner_product_deviation(a, projected);
    return {best.value, {best.i, best.j}};
}

DistortionMeasure eta_squared_distance(const ProjectionMatrix& q, const std::vector<Vector>& a) {
    check_point_set(q, a, "eta_squared_distance");
    const auto projected = kernels::parallel::project(q.entries(), a);
    const auto best = kernels::parallel::max_squared_distance_deviation(a, projected);
    return {best.value, {best.i, best.j}};
}

DistortionReport audit(const ProjectionMatrix& q, const std::vector<Vector>& a) {
    check_point_set(q, a, "audit");
    const auto projected = kernels::parallel::project(q.entries(), a);
    const auto ip = kernels::parallel::max_inner_product_deviation(a, projected);
    const auto sd = kernels::parallel::max_squared_distance_deviation(a, projected);
    DistortionReport r;
    r.eta_ip = ip.value;
    r.argmax_ip = {ip.i, ip.j};
    r.eta_sd = sd.value;
    r.argmax_sd = {sd.i, sd.j};
    r.set_size = a.size();
    r.n = q.n();
    r.m = q.m();
    return r;
}

double ip_to_sd_bound(double eta) {
    if (!(eta >= 0.0)) throw ContractError("ip_to_sd_bound: eta must be >= 0");
    return 4.0 * eta;
}

double sd_to_ip_bound(double eta, const std::vector<Vector>& a) {
    if (!(eta >= 0.0)) throw ContractError("sd_to_ip_bound: eta must be >= 0");
    const bool has_origin =
        std::any_of(a.begin(), a.end(), [](const Vector& x) { return squared_norm(x) == 0.0; });
    if (!has_origin) throw ContractError("sd_to_ip_bound: origin required (0 must belong to the set)");
    return 1.5 * eta;
}

RipEstimate rip_constant_exact(const ProjectionMatrix& q, std::size_t s) {
    if (s == 0 || s > q.n())
        throw ContractError("rip_constant_exact: need 1 <= s <= n (s = " + std::to_string(s) +
                            ", n = " + std::to_string(q.n()) + ")");
    const auto supports = kernels::binomial(q.n(), s);
    if (supports > kMaxRipSupports)
        throw ContractError("rip_constant_exact: C(" + std::to_string(q.n()) + ", " + std::to_string(s) +
                            ") supports exceeds the enumeration cap of 1e6; reduce n or s");
    const auto best = kernels::parallel::max_support_deviation(q.entries(), s);
    RipEstimate est;
    est.s = s;
    est.delta_s = best.value;
    est.supports_examined = best.examined;
    est.worst_support = best.support;
    return est;
}

double sparse_ip_bound(double delta_2s, double radius) {
    if (!(delta_2s >= 0.0) || !(radius >= 0.0)) throw ContractError("sparse_ip_bound: inputs must be >= 0");
    return delta_2s * radius * radius;
}

GaussianWidthEstimate gaussian_width_mc(const std::vector<Vector>& a, std::size_t trials, std::uint64_t seed) {
    if (a.empty()) throw ContractError("gaussian_width_mc: set must be nonempty");
    if (trials == 0) throw ContractError("gaussian_width_mc: trials must be >= 1");
    const std::size_t n = a.front().size();
    for (const auto& x : a)
        if (x.size() != n) throw ContractError("gaussian_width_mc: ragged point set");

    Rng rng(seed);
    Vector g(n);
    std::vector<double> sup(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        for (auto& c : g) c = rng.normal();
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& x : a) best = std::max(best, dot(g, x));
        sup[t] = best;
    }
    double mean = 0.0;
    for (double v : sup) mean += v;
    mean /= static_cast<double>(trials);
    double var = 0.0;
    if (trials > 1) {
        for (double v : sup) var += (v - mean) * (v - mean);
        var /= static_cast<double>(trials - 1);
    }
    return {mean, std::sqrt(var / static_cast<double>(trials)), trials, seed};
}

}  // namespace sepcomp
