#include "sepcomp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "sepcomp/errors.hpp"
#include "sepcomp/rng.hpp"

namespace sepcomp::harness {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::preserved: return "preserved";
        case Verdict::threshold_exceeded: return "threshold exceeded";
        case Verdict::counterexample: return "counterexample";
    }
    return "counterexample";
}

VerificationReport verify(const SupportSet& set, const ProjectionMatrix& q, const std::optional<Hyperplane>& prior,
                          const NearestPointOptions& opts) {
    return verify_with_witness(set, q, nearest_hull_points(set, opts), prior);
}

VerificationReport verify_with_witness(const SupportSet& set, const ProjectionMatrix& q, const HullWitness& witness,
                                       const std::optional<Hyperplane>& prior) {
    if (set.dim() != q.n())
        throw ContractError("verify: set has dimension " + std::to_string(set.dim()) + ", Q expects " +
                            std::to_string(q.n()));
    VerificationReport rep;
    rep.n = q.n();
    rep.m = q.m();
    rep.set_size = set.size();

    rep.svm = construct_hyperplane(witness);
    rep.delta = witness.delta;
    rep.certified_gap = witness.certified_gap;
    rep.w_star_norm = norm(rep.svm.w);
    const double w_sq = rep.w_star_norm * rep.w_star_norm;
    rep.threshold = 1.0 / w_sq;
    rep.margin_before = functional_margin(rep.svm, set);

    const auto eta = eta_inner_product(q, set.features());
    rep.eta_ip = eta.eta;
    rep.eta_argmax = eta.argmax;

    const SupportSet compressed = apply_set(q, set);
    const Vector qw = sepcomp::apply(q, rep.svm.w);
    rep.margin_after_qw = functional_margin(Hyperplane(qw, rep.svm.b), compressed);
    rep.margin_after_bound = 1.0 - rep.eta_ip * w_sq;
    if (rep.margin_after_qw < rep.margin_after_bound - kMarginSlack)
        rep.violations.push_back("margin under (Qw*, b*) below 1 - eta ||w*||^2");

    if (rep.margin_after_bound > 0.0) {
        Hyperplane bar(scaled(qw, 1.0 / rep.margin_after_bound), rep.svm.b / rep.margin_after_bound);
        rep.margin_after_bar = functional_margin(bar, compressed);
        rep.compressed = std::move(bar);
    }

    rep.compatibility = compatibility_constant(q, rep.svm.w, set, rep.eta_ip);

    const auto lp = is_separable_lp(compressed);
    rep.lp_separable = lp.separable;
    rep.lp_certificate = lp.certificate;

    if (prior) {
        PriorCheck pc;
        pc.prior = *prior;
        pc.prior_norm = norm(prior->w);
        pc.prior_functional_margin = functional_margin(*prior, set);
        pc.threshold = 1.0 / (pc.prior_norm * pc.prior_norm);
        pc.applicable = pc.prior_functional_margin >= 1.0;
        if (pc.applicable) {
            pc.norm_ok = rep.w_star_norm <= pc.prior_norm + kMarginSlack;
            pc.delta_ok = rep.delta >= 2.0 / pc.prior_norm - kMarginSlack;
            if (!pc.norm_ok) rep.violations.push_back("||w*|| exceeds ||w0||");
            if (!pc.delta_ok) rep.violations.push_back("hull distance below 2/||w0||");
        }
        rep.prior = std::move(pc);
    }

    const bool below = rep.eta_ip < rep.threshold;
    if (below && !(rep.margin_after_bar && *rep.margin_after_bar >= 1.0 - kMarginSlack))
        rep.violations.push_back("compressed hyperplane margin below 1 although eta < 1/||w*||^2");

    if (!rep.violations.empty()) rep.verdict = Verdict::counterexample;
    else rep.verdict = below ? Verdict::preserved : Verdict::threshold_exceeded;
    return rep;
}

MatrixFactory ensemble_factory(Ensemble e) {
    return [e](std::size_t m, std::size_t n, std::uint64_t seed) { return generate_projection(m, n, e, seed, true); };
}

namespace {

struct Trial {
    double eta = 0.0;
    bool below = false;
    bool lp_separable = false;
    bool counterexample = false;
};

}  // namespace

SweepResult sweep(const SupportSet& set, const MatrixFactory& factory, std::string_view ensemble_name,
                  const std::vector<std::size_t>& m_list, std::size_t repetitions, std::uint64_t seed,
                  const SweepOptions& opts) {
    if (m_list.empty()) throw ContractError("sweep: m list must be nonempty");
    if (repetitions == 0) throw ContractError("sweep: repetitions must be >= 1");
    for (auto m : m_list)
        if (m == 0) throw ContractError("sweep: every m must be >= 1");
    opts.bounds.validate();

    SweepResult res;
    res.ensemble = std::string(ensemble_name);
    res.seed = seed;
    res.n = set.dim();
    res.set_size = set.size();
    res.radius = set.radius();
    res.bounds = opts.bounds;

    const auto witness = nearest_hull_points(set);
    const Hyperplane svm = construct_hyperplane(witness);
    res.w_star_norm = norm(svm.w);
    res.threshold = 1.0 / (res.w_star_norm * res.w_star_norm);

    const auto feats = set.features();
    res.width = gaussian_width_mc(feats, opts.width_trials, derive_seed(seed, 0xffffffffULL, 0));
    res.predicted_m_general = bounds::min_general_compression_length(
        std::max(res.width.mean, 0.0), res.radius, opts.bounds.epsilon, opts.bounds.K, res.w_star_norm, opts.m_cap);
    const std::size_t s = set.sparsity();
    if (2 * s <= res.n)
        res.predicted_m_sparse =
            bounds::sparse_compression_length(res.radius, res.w_star_norm, s, res.n, opts.bounds.epsilon, opts.bounds.C);

    // Tasks are keyed by (m index, repetition) and written to fixed slots, so
    // the reduction below sees the same data whatever the schedule.
    const std::size_t tasks = m_list.size() * repetitions;
    std::vector<Trial> trials(tasks);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks); ++t) {
        try {
            const std::size_t mi = static_cast<std::size_t>(t) / repetitions;
            const std::size_t rep = static_cast<std::size_t>(t) % repetitions;
            const auto q = factory(m_list[mi], set.dim(), derive_seed(seed, m_list[mi], rep));
            Trial tr;
            if (opts.run_lp) {
                const auto report = verify_with_witness(set, q, witness);
                tr.eta = report.eta_ip;
                tr.below = report.eta_ip < report.threshold;
                tr.lp_separable = report.lp_separable;
                tr.counterexample = report.verdict == Verdict::counterexample;
            } else {
                tr.eta = eta_inner_product(q, feats).eta;
                tr.below = tr.eta < res.threshold;
            }
            trials[static_cast<std::size_t>(t)] = tr;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
        SweepRow row;
        row.m = m_list[mi];
        row.repetitions = repetitions;
        double sum = 0.0;
        std::size_t below = 0, sep = 0;
        for (std::size_t r = 0; r < repetitions; ++r) {
            const auto& tr = trials[mi * repetitions + r];
            sum += tr.eta;
            row.max_eta = std::max(row.max_eta, tr.eta);
            below += tr.below;
            sep += tr.lp_separable;
            row.counterexamples += tr.counterexample;
        }
        const double reps = static_cast<double>(repetitions);
        row.mean_eta = sum / reps;
        row.frac_below_threshold = static_cast<double>(below) / reps;
        row.frac_lp_separable = opts.run_lp ? static_cast<double>(sep) / reps : 0.0;
        res.rows.push_back(row);
    }
    return res;
}

SweepResult sweep(const GenConfig& gen, Ensemble ensemble, const std::vector<std::size_t>& m_list,
                  std::size_t repetitions, std::uint64_t seed, const SweepOptions& opts) {
    const auto [set, prior] = generate_separable(gen);
    return sweep(set, ensemble_factory(ensemble), to_string(ensemble), m_list, repetitions, seed, opts);
}

Calibration calibrate(const SweepResult& result, std::optional<std::size_t> sparsity) {
    Calibration cal;
    const double target = 1.0 - result.bounds.epsilon;
    for (const auto& row : result.rows) {
        if (row.frac_below_threshold >= target && (!cal.m_observed || row.m < *cal.m_observed)) cal.m_observed = row.m;
    }
    if (!cal.m_observed) return cal;
    const double m = static_cast<double>(*cal.m_observed);
    const double w0 = result.w_star_norm;
    const double r = result.radius;
    const double t = std::max(result.width.mean, 0.0) + std::log(2.0 / result.bounds.epsilon) * r;

    // Boundary K of 1.5 (K^2 t^2 + 2 sqrt(m) K t r) / m = 1/||w0||^2.
    const double qa = 1.5 * t * t / m;
    const double qb = 3.0 * t * r / std::sqrt(m);
    const double qc = -1.0 / (w0 * w0);
    if (qa > 0.0) cal.K_fit = (-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);

    if (sparsity && *sparsity >= 1 && 2 * *sparsity <= result.n) {
        const double unit = bounds::sparse_compression_rhs(r, w0, *sparsity, result.n, result.bounds.epsilon, 1.0);
        if (unit > 0.0) cal.C_fit = m / unit;
    }
    return cal;
}

}  // namespace sepcomp::harness
