#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "sepcomp/bounds.hpp"
#include "sepcomp/dataset.hpp"
#include "sepcomp/distortion.hpp"
#include "sepcomp/hullsvm.hpp"
#include "sepcomp/projection.hpp"
#include "sepcomp/separability_lp.hpp"

namespace sepcomp::harness {

/// Slack allowed on every margin inequality the verifier audits.
inline constexpr double kMarginSlack = 1e-9;

enum class Verdict {
    preserved,           // eta < 1/||w*||^2 and (w_bar, b_bar) separates Q(X) with margin >= 1
    threshold_exceeded,  // eta >= 1/||w*||^2; the sufficient condition does not apply
    counterexample,      // an audited inequality failed; should never happen
};

std::string_view to_string(Verdict v);

struct PriorCheck {
    Hyperplane prior;
    double prior_norm = 0.0;
    double prior_functional_margin = 0.0;
    double threshold = 0.0;  // 1 / ||w0||^2
    /// Prior checks apply only when the prior really separates (margin >= 1).
    bool applicable = false;
    bool norm_ok = true;   // ||w*|| <= ||w0||
    bool delta_ok = true;  // delta >= 2 / ||w0||
};

struct VerificationReport {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t set_size = 0;

    double eta_ip = 0.0;
    IndexPair eta_argmax{0, 0};

    Hyperplane svm;  // (w*, b*)
    double delta = 0.0;
    double w_star_norm = 0.0;
    double certified_gap = 0.0;
    double threshold = 0.0;  // 1 / ||w*||^2

    double margin_before = 0.0;     // min y(<w*,x> + b*)
    double margin_after_qw = 0.0;   // min y(<Qw*,Qx> + b*)
    double margin_after_bound = 0.0;  // 1 - eta ||w*||^2
    std::optional<Hyperplane> compressed;  // (Qw*, b*) / (1 - eta ||w*||^2)
    std::optional<double> margin_after_bar;

    CompatibilityReport compatibility;
    bool lp_separable = false;
    SeparabilityCertificate lp_certificate = SeparabilityCertificate::inconclusive;
    std::optional<PriorCheck> prior;

    Verdict verdict = Verdict::threshold_exceeded;
    /// Human-readable reasons when verdict == counterexample.
    std::vector<std::string> violations;
};

/// Builds (w*, b*) from the class hulls, measures eta_ip of Q over the set,
/// forms the compressed hyperplane and audits both margin inequalities.
VerificationReport verify(const SupportSet& set, const ProjectionMatrix& q,
                          const std::optional<Hyperplane>& prior = std::nullopt,
                          const NearestPointOptions& opts = {});
/// Same, reusing a witness already computed for `set`.
VerificationReport verify_with_witness(const SupportSet& set, const ProjectionMatrix& q, const HullWitness& witness,
                                       const std::optional<Hyperplane>& prior = std::nullopt);

using MatrixFactory = std::function<ProjectionMatrix(std::size_t m, std::size_t n, std::uint64_t seed)>;

/// Q / sqrt(m) drawn from a random ensemble.
MatrixFactory ensemble_factory(Ensemble e);

struct SweepOptions {
    bounds::BoundsConfig bounds;
    std::size_t width_trials = 2000;
    std::uint64_t m_cap = 1'000'000'000;
    /// Skip the LP oracle (it dominates runtime on large sets).
    bool run_lp = true;
};

struct SweepRow {
    std::size_t m = 0;
    std::size_t repetitions = 0;
    double frac_below_threshold = 0.0;
    double frac_lp_separable = 0.0;
    double mean_eta = 0.0;
    double max_eta = 0.0;
    std::size_t counterexamples = 0;
};

struct SweepResult {
    std::string ensemble;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t set_size = 0;
    double radius = 0.0;
    double w_star_norm = 0.0;
    double threshold = 0.0;
    GaussianWidthEstimate width;
    bounds::BoundsConfig bounds;
    std::optional<std::uint64_t> predicted_m_general;
    std::optional<std::uint64_t> predicted_m_sparse;
    std::vector<SweepRow> rows;
};

SweepResult sweep(const SupportSet& set, const MatrixFactory& factory, std::string_view ensemble_name,
                  const std::vector<std::size_t>& m_list, std::size_t repetitions, std::uint64_t seed,
                  const SweepOptions& opts = {});
SweepResult sweep(const GenConfig& gen, Ensemble ensemble, const std::vector<std::size_t>& m_list,
                  std::size_t repetitions, std::uint64_t seed, const SweepOptions& opts = {});

/// Constants C and K fitted so the predicted compression length equals the
/// smallest swept m whose threshold fraction reaches 1 - epsilon.
struct Calibration {
    std::optional<std::size_t> m_observed;
    std::optional<double> K_fit;
    std::optional<double> C_fit;
};

Calibration calibrate(const SweepResult& result, std::optional<std::size_t> sparsity);

}  // namespace sepcomp::harness
