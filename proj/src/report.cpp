#include "sepcomp/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "sepcomp/errors.hpp"

namespace sepcomp::report {

Format parse_format(std::string_view s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    throw ContractError("unknown format '" + std::string(s) + "' (expected json or csv)");
}

Json to_json(const Vector& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

Json to_json(const Hyperplane& h) { return Json{{"w", to_json(h.w)}, {"b", h.b}}; }

Json to_json(const DistortionReport& r) {
    return Json{{"eta_ip", r.eta_ip},
                {"eta_sd", r.eta_sd},
                {"argmax_ip", {r.argmax_ip.first, r.argmax_ip.second}},
                {"argmax_sd", {r.argmax_sd.first, r.argmax_sd.second}},
                {"n", r.n},
                {"m", r.m},
                {"set_size", r.set_size}};
}

Json to_json(const RipEstimate& r) {
    return Json{{"s", r.s},
                {"delta_s", r.delta_s},
                {"method", r.method},
                {"supports_examined", r.supports_examined},
                {"worst_support", r.worst_support}};
}

Json to_json(const GaussianWidthEstimate& g) {
    return Json{{"mean", g.mean}, {"standard_error", g.standard_error}, {"trials", g.trials}, {"seed", g.seed}};
}

Json fit_json(const HullWitness& witness, std::size_t set_size) {
    const auto h = construct_hyperplane(witness);
    std::vector<double> weights(set_size, 0.0);
    for (std::size_t k = 0; k < witness.plus_rows.size(); ++k) weights[witness.plus_rows[k]] = witness.coeffs_plus[k];
    for (std::size_t k = 0; k < witness.minus_rows.size(); ++k)
        weights[witness.minus_rows[k]] = witness.coeffs_minus[k];
    return Json{{"w", to_json(h.w)},
                {"b", h.b},
                {"delta", witness.delta},
                {"margin", h.margin()},
                {"certified_gap", witness.certified_gap},
                {"support_weights", weights},
                {"x_plus", to_json(witness.x_plus)},
                {"x_minus", to_json(witness.x_minus)},
                {"iterations", witness.iterations}};
}

namespace {
template <class T>
Json optional_json(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_same_v<T, Hyperplane>) return to_json(*v);
    else return *v;
}
}  // namespace

Json to_json(const harness::VerificationReport& r) {
    Json j;
    j["verdict"] = std::string(harness::to_string(r.verdict));
    j["n"] = r.n;
    j["m"] = r.m;
    j["set_size"] = r.set_size;
    j["eta_ip"] = r.eta_ip;
    j["eta_argmax"] = {r.eta_argmax.first, r.eta_argmax.second};
    j["threshold"] = r.threshold;
    j["w_star"] = to_json(r.svm.w);
    j["b_star"] = r.svm.b;
    j["delta"] = r.delta;
    j["w_star_norm"] = r.w_star_norm;
    j["certified_gap"] = r.certified_gap;
    j["margin_before"] = r.margin_before;
    j["margin_after_qw"] = r.margin_after_qw;
    j["margin_after_bound"] = r.margin_after_bound;
    j["compressed_hyperplane"] = optional_json(r.compressed);
    j["margin_after_bar"] = optional_json(r.margin_after_bar);
    j["compatibility"] = Json{{"c_measured", r.compatibility.unbounded ? Json(nullptr) : Json(r.compatibility.c_measured)},
                              {"c_bound", r.compatibility.c_bound},
                              {"max_deviation", r.compatibility.max_deviation},
                              {"argmax_index", r.compatibility.argmax_index},
                              {"unbounded", r.compatibility.unbounded}};
    j["lp_separable"] = r.lp_separable;
    j["lp_certificate"] = std::string(to_string(r.lp_certificate));
    if (r.prior) {
        const auto& p = *r.prior;
        j["prior"] = Json{{"hyperplane", to_json(p.prior)},
                          {"norm", p.prior_norm},
                          {"functional_margin", p.prior_functional_margin},
                          {"threshold", p.threshold},
                          {"applicable", p.applicable},
                          {"norm_ok", p.norm_ok},
                          {"delta_ok", p.delta_ok}};
    } else {
        j["prior"] = nullptr;
    }
    j["violations"] = r.violations;
    return j;
}

Json to_json(const harness::SweepResult& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back(Json{{"m", row.m},
                            {"repetitions", row.repetitions},
                            {"frac_below_threshold", row.frac_below_threshold},
                            {"frac_lp_separable", row.frac_lp_separable},
                            {"mean_eta", row.mean_eta},
                            {"max_eta", row.max_eta},
                            {"counterexamples", row.counterexamples}});
    return Json{{"ensemble", r.ensemble},
                {"seed", r.seed},
                {"n", r.n},
                {"set_size", r.set_size},
                {"radius", r.radius},
                {"w_star_norm", r.w_star_norm},
                {"threshold", r.threshold},
                {"gaussian_width", to_json(r.width)},
                {"bounds_config",
                 {{"C", r.bounds.C}, {"K", r.bounds.K}, {"epsilon", r.bounds.epsilon}, {"delta_conf", r.bounds.delta_conf}}},
                {"predicted_m_general", optional_json(r.predicted_m_general)},
                {"predicted_m_sparse", optional_json(r.predicted_m_sparse)},
                {"rows", rows}};
}

Json to_json(const harness::Calibration& c) {
    return Json{{"m_observed", optional_json(c.m_observed)}, {"K_fit", optional_json(c.K_fit)}, {"C_fit", optional_json(c.C_fit)}};
}

Hyperplane hyperplane_from_json(const Json& j) {
    try {
        return Hyperplane(j.at("w").get<Vector>(), j.at("b").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("hyperplane JSON needs numeric 'w' array and 'b': ") + e.what());
    }
}

std::string sweep_csv(const harness::SweepResult& r) {
    std::ostringstream out;
    out << "m,repetitions,frac_below_threshold,frac_lp_separable,mean_eta,max_eta,counterexamples,"
           "predicted_m_general,predicted_m_sparse\n";
    for (const auto& row : r.rows) {
        out << row.m << ',' << row.repetitions << ',' << format_double(row.frac_below_threshold) << ','
            << format_double(row.frac_lp_separable) << ',' << format_double(row.mean_eta) << ','
            << format_double(row.max_eta) << ',' << row.counterexamples << ',';
        if (r.predicted_m_general) out << *r.predicted_m_general;
        out << ',';
        if (r.predicted_m_sparse) out << *r.predicted_m_sparse;
        out << '\n';
    }
    return out.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& text, const std::filesystem::path& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

void report_emit(const harness::VerificationReport& r, Format format, const std::filesystem::path& path) {
    if (format != Format::json) throw ContractError("verification reports are emitted as JSON");
    write_text(dump(to_json(r)), path);
}

void report_emit(const harness::SweepResult& r, Format format, const std::filesystem::path& path) {
    write_text(format == Format::json ? dump(to_json(r)) : sweep_csv(r), path);
}

}  // namespace sepcomp::report
