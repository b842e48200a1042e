// sepcomp: command-line front end for margin-preservation experiments.
//
// Exit codes: 0 success, 1 contract / input errors, 2 a verification
// counterexample (an audited margin inequality failed).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sepcomp/bounds.hpp"
#include "sepcomp/dataset.hpp"
#include "sepcomp/distortion.hpp"
#include "sepcomp/errors.hpp"
#include "sepcomp/harness.hpp"
#include "sepcomp/hullsvm.hpp"
#include "sepcomp/projection.hpp"
#include "sepcomp/report.hpp"

using namespace sepcomp;
using report::Json;

namespace {

constexpr int kExitContract = 1;
constexpr int kExitCounterexample = 2;

struct Globals {
    std::uint64_t seed = 0;
    std::string out = "-";
    std::string format = "json";
};

struct MatrixSource {
    std::string path;
    std::size_t m = 0;
    std::string ensemble = "gaussian";
    bool unscaled = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--matrix", path, "explicit Q as headerless row-major CSV");
        cmd->add_option("--m", m, "compressed dimension for a random Q");
        cmd->add_option("--ensemble", ensemble, "gaussian | rademacher | uniform")
            ->check(CLI::IsMember({"gaussian", "rademacher", "uniform"}));
        cmd->add_flag("--unscaled", unscaled, "omit the 1/sqrt(m) factor");
    }

    ProjectionMatrix resolve(std::size_t n, std::uint64_t seed) const {
        if (!path.empty()) return load_matrix_csv(path);
        if (m == 0) throw ContractError("provide --matrix FILE or --m M for a random matrix");
        return generate_projection(m, n, parse_ensemble(ensemble), seed, !unscaled);
    }
};

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<std::size_t> parse_m_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(tok, &used);
            if (used != tok.size() || v == 0) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ContractError("--m-list entries must be positive integers, got '" + tok + "'");
        }
    }
    if (out.empty()) throw ContractError("--m-list must be nonempty");
    return out;
}

// Evaluates one bound, recording domain errors in place of a value.
template <class F>
Json guarded(F&& f) {
    try {
        return Json(f());
    } catch (const ContractError& e) {
        return Json{{"error", e.what()}};
    }
}

Json run_bounds(const Json& cfg) {
    auto get = [&](const char* k) -> std::optional<double> {
        if (!cfg.contains(k) || cfg[k].is_null()) return std::nullopt;
        if (!cfg[k].is_number()) throw ParseError(std::string("bounds config key '") + k + "' must be numeric");
        return cfg[k].get<double>();
    };
    bounds::BoundsConfig bc;
    bc.C = get("C").value_or(bc.C);
    bc.K = get("K").value_or(bc.K);
    bc.epsilon = get("epsilon").value_or(bc.epsilon);
    bc.delta_conf = get("delta_conf").value_or(bc.delta_conf);
    bc.validate();

    const auto R = get("R");
    const auto s = get("s");
    const auto n = get("n");
    const auto w0 = get("w0_norm");
    const auto width = get("width");
    const auto radius = get("radius").has_value() ? get("radius") : R;
    const auto sample = get("sample_size");
    const auto m_cap = get("m_cap");
    const auto rip_delta = get("delta");
    const auto m = get("m");
    const auto eta = get("eta");
    const auto ws = get("ws_norm").has_value() ? get("ws_norm") : w0;

    auto count = [](double v) { return static_cast<std::uint64_t>(v); };
    Json out;
    out["config"] = Json{{"C", bc.C}, {"K", bc.K}, {"epsilon", bc.epsilon}, {"delta_conf", bc.delta_conf}};
    out["note"] = "C and K are unnamed constants of the sub-Gaussian results; defaults of 1.0 are placeholders";
    if (s && n && rip_delta)
        out["rip_sample_bound"] = guarded([&] { return bounds::rip_sample_bound(count(*s), count(*n), *rip_delta, bc.epsilon, bc.C); });
    if (R && w0 && s && n)
        out["sparse_compression_length"] =
            guarded([&] { return bounds::sparse_compression_length(*R, *w0, count(*s), count(*n), bc.epsilon, bc.C); });
    if (m && width && radius)
        out["jl_distortion_bound"] = guarded([&] { return bounds::jl_distortion_bound(count(*m), *width, *radius, bc.epsilon, bc.K); });
    if (m && width && radius && w0)
        out["general_compression_check"] =
            guarded([&] { return bounds::general_compression_check(count(*m), *width, *radius, bc.epsilon, bc.K, *w0); });
    if (width && radius && w0) {
        out["min_general_compression_length"] = guarded([&]() -> Json {
            auto v = bounds::min_general_compression_length(*width, *radius, bc.epsilon, bc.K, *w0,
                                                            m_cap ? count(*m_cap) : 1'000'000'000ULL);
            return v ? Json(*v) : Json(nullptr);
        });
    }
    if (R && ws && sample) {
        out["gen_bound_L"] = guarded([&] { return bounds::gen_bound_L(*R, *ws, bc.delta_conf, count(*sample)); });
        if (eta)
            out["compressed_gen_bound"] = guarded([&] {
                return bounds::compressed_gen_bound(bounds::gen_bound_L(*R, *ws, bc.delta_conf, count(*sample)), *eta, *ws);
            });
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sepcomp: linear separability under linear compression"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "64-bit seed (decimal)");
    app.add_option("--out", g.out, "output path, '-' for stdout");
    app.add_option("--format", g.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    // gen
    auto* gen = app.add_subcommand("gen", "sample a separable labeled set (CSV)");
    GenConfig gc;
    std::optional<std::size_t> sparsity;
    std::string prior_out;
    gen->add_option("--n", gc.n, "ambient dimension")->required();
    gen->add_option("--count", gc.count_per_class, "points per class")->required();
    gen->add_option("--margin", gc.margin, "target margin gamma")->required();
    gen->add_option("--radius", gc.radius, "radius cap R (>= 1/gamma)")->required();
    gen->add_option("--sparsity", sparsity, "max nonzeros per point");
    gen->add_option("--bias", gc.bias, "offset b0 of the generating hyperplane");
    gen->add_option("--prior-out", prior_out, "write (w0, b0) as JSON");

    // fit
    auto* fit = app.add_subcommand("fit", "hard-SVM hyperplane from nearest hull points");
    std::string data;
    std::optional<double> tol;
    std::size_t max_iters = 200'000;
    fit->add_option("--data", data, "labeled CSV")->required();
    fit->add_option("--tol", tol, "accepted duality gap on delta^2");
    fit->add_option("--max-iters", max_iters, "iteration cap");

    // compress
    auto* compress = app.add_subcommand("compress", "apply Q to a labeled set (CSV)");
    MatrixSource compress_src;
    std::string matrix_out;
    compress->add_option("--data", data, "labeled CSV")->required();
    compress_src.add_to(compress);
    compress->add_option("--matrix-out", matrix_out, "save the matrix used");

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "distortion report of Q over a set");
    MatrixSource audit_src;
    std::optional<std::size_t> rip_s;
    std::optional<std::size_t> width_trials;
    audit_cmd->add_option("--data", data, "labeled CSV")->required();
    audit_src.add_to(audit_cmd);
    audit_cmd->add_option("--rip", rip_s, "also compute the exact s-restricted isometry constant");
    audit_cmd->add_option("--width-trials", width_trials, "also estimate the Gaussian width");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "end-to-end margin preservation check");
    MatrixSource verify_src;
    std::string prior_path;
    verify_cmd->add_option("--data", data, "labeled CSV")->required();
    verify_src.add_to(verify_cmd);
    verify_cmd->add_option("--prior", prior_path, "prior hyperplane JSON {w, b}");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "preservation frequency over a grid of m");
    std::string m_list_text;
    std::size_t reps = 10;
    std::string sweep_ensemble = "gaussian";
    harness::SweepOptions sweep_opts;
    bool no_lp = false;
    bool calibrate = false;
    GenConfig sweep_gen;
    std::optional<std::size_t> sweep_sparsity;
    sweep_cmd->add_option("--data", data, "labeled CSV (otherwise generated from --n ...)");
    sweep_cmd->add_option("--n", sweep_gen.n);
    sweep_cmd->add_option("--count", sweep_gen.count_per_class);
    sweep_cmd->add_option("--margin", sweep_gen.margin);
    sweep_cmd->add_option("--radius", sweep_gen.radius);
    sweep_cmd->add_option("--sparsity", sweep_sparsity);
    sweep_cmd->add_option("--m-list", m_list_text, "comma-separated compressed dimensions")->required();
    sweep_cmd->add_option("--reps", reps, "repetitions per m");
    sweep_cmd->add_option("--ensemble", sweep_ensemble)->check(CLI::IsMember({"gaussian", "rademacher", "uniform"}));
    sweep_cmd->add_option("--C", sweep_opts.bounds.C);
    sweep_cmd->add_option("--K", sweep_opts.bounds.K);
    sweep_cmd->add_option("--epsilon", sweep_opts.bounds.epsilon);
    sweep_cmd->add_option("--width-trials", sweep_opts.width_trials);
    sweep_cmd->add_flag("--no-lp", no_lp, "skip the LP separability oracle");
    sweep_cmd->add_flag("--calibrate", calibrate, "fit C and K to the observed preservation frequency (JSON only)");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate compression-length and generalization bounds");
    std::string config_path;
    bounds_cmd->add_option("--config", config_path, "JSON config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitContract;
    }

    try {
        const auto fmt = report::parse_format(g.format);
        if (*gen) {
            gc.seed = g.seed;
            gc.sparsity = sparsity;
            const auto [set, prior] = generate_separable(gc);
            save_csv(set, g.out == "-" ? std::filesystem::path("/dev/stdout") : std::filesystem::path(g.out));
            if (!prior_out.empty()) report::write_text(report::dump(report::to_json(prior)), prior_out);
        } else if (*fit) {
            const auto set = load_csv(data);
            NearestPointOptions opts;
            opts.tol = tol;
            opts.max_iters = max_iters;
            const auto witness = nearest_hull_points(set, opts);
            report::write_text(report::dump(report::fit_json(witness, set.size())), g.out);
        } else if (*compress) {
            const auto set = load_csv(data);
            const auto q = compress_src.resolve(set.dim(), g.seed);
            if (!matrix_out.empty()) save_matrix_csv(q, matrix_out);
            const auto out = apply_set(q, set);
            if (g.out == "-") throw ContractError("compress: --out FILE is required");
            save_csv(out, g.out);
        } else if (*audit_cmd) {
            const auto set = load_csv(data);
            const auto q = audit_src.resolve(set.dim(), g.seed);
            const auto feats = set.features();
            const auto r = audit(q, feats);
            Json j = report::to_json(r);
            j["ip_to_sd_bound"] = ip_to_sd_bound(r.eta_ip);
            try {
                j["sd_to_ip_bound"] = sd_to_ip_bound(r.eta_sd, feats);
            } catch (const ContractError&) {
                j["sd_to_ip_bound"] = nullptr;
            }
            if (rip_s) j["rip"] = report::to_json(rip_constant_exact(q, *rip_s));
            if (width_trials) j["gaussian_width"] = report::to_json(gaussian_width_mc(feats, *width_trials, g.seed));
            report::write_text(report::dump(j), g.out);
        } else if (*verify_cmd) {
            const auto set = load_csv(data);
            const auto q = verify_src.resolve(set.dim(), g.seed);
            std::optional<Hyperplane> prior;
            if (!prior_path.empty()) prior = report::hyperplane_from_json(read_json_file(prior_path));
            const auto rep = harness::verify(set, q, prior);
            report::report_emit(rep, report::Format::json, g.out);
            if (rep.verdict == harness::Verdict::counterexample) {
                for (const auto& v : rep.violations) std::cerr << "counterexample: " << v << '\n';
                return kExitCounterexample;
            }
        } else if (*sweep_cmd) {
            sweep_opts.run_lp = !no_lp;
            const auto m_list = parse_m_list(m_list_text);
            std::optional<SupportSet> set;
            if (!data.empty()) {
                set = load_csv(data);
            } else {
                sweep_gen.seed = g.seed;
                sweep_gen.sparsity = sweep_sparsity;
                set = generate_separable(sweep_gen).first;
            }
            const auto ens = parse_ensemble(sweep_ensemble);
            const auto res = harness::sweep(*set, harness::ensemble_factory(ens), to_string(ens), m_list, reps, g.seed, sweep_opts);
            if (calibrate) {
                if (fmt != report::Format::json) throw ContractError("--calibrate requires --format json");
                Json j = report::to_json(res);
                const std::size_t s = set->sparsity();
                j["calibration"] = report::to_json(harness::calibrate(res, s));
                report::write_text(report::dump(j), g.out);
            } else {
                report::report_emit(res, fmt, g.out);
            }
            for (const auto& row : res.rows)
                if (row.counterexamples > 0) return kExitCounterexample;
        } else if (*bounds_cmd) {
            report::write_text(report::dump(run_bounds(read_json_file(config_path))), g.out);
        }
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitContract;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitContract;
    } catch (const IterationLimit& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitContract;
    }
    return 0;
}
