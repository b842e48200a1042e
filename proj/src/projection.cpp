#include "sepcomp/projection.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sepcomp/errors.hpp"
#include "sepcomp/kernels.hpp"
#include "sepcomp/rng.hpp"

namespace sepcomp {

std::string_view to_string(Ensemble e) {
    switch (e) {
        case Ensemble::gaussian: return "gaussian";
        case Ensemble::rademacher: return "rademacher";
        case Ensemble::uniform: return "uniform";
        case Ensemble::explicit_matrix: return "explicit";
    }
    return "explicit";
}

Ensemble parse_ensemble(std::string_view tag) {
    if (tag == "gaussian") return Ensemble::gaussian;
    if (tag == "rademacher") return Ensemble::rademacher;
    if (tag == "uniform") return Ensemble::uniform;
    if (tag == "explicit") return Ensemble::explicit_matrix;
    throw ContractError("unknown ensemble '" + std::string(tag) + "'");
}

ProjectionMatrix::ProjectionMatrix(Matrix entries, bool scaled)
    : ProjectionMatrix(std::move(entries), Ensemble::explicit_matrix, 0, scaled) {}

ProjectionMatrix::ProjectionMatrix(Matrix entries, Ensemble ensemble, std::uint64_t seed, bool scaled)
    : entries_(std::move(entries)), ensemble_(ensemble), seed_(seed), scaled_(scaled) {
    if (entries_.rows() == 0 || entries_.cols() == 0) throw ContractError("projection matrix needs m, n >= 1");
    for (double v : entries_.data())
        if (!std::isfinite(v)) throw ContractError("projection matrix has a non-finite entry");
}

ProjectionMatrix generate_projection(std::size_t m, std::size_t n, Ensemble ensemble, std::uint64_t seed,
                                     bool scaled) {
    if (m == 0 || n == 0) throw ContractError("projection: m and n must be >= 1");
    if (ensemble == Ensemble::explicit_matrix)
        throw ContractError("projection: explicit matrices are loaded, not generated");
    Rng rng(seed);
    Matrix q(m, n);
    const double sqrt3 = std::sqrt(3.0);
    for (double& v : q.data()) {
        switch (ensemble) {
            case Ensemble::gaussian: v = rng.normal(); break;
            case Ensemble::rademacher: v = rng.rademacher(); break;
            case Ensemble::uniform: v = (2.0 * rng.uniform() - 1.0) * sqrt3; break;
            case Ensemble::explicit_matrix: break;
        }
    }
    if (scaled) {
        const double root = std::sqrt(static_cast<double>(m));
        for (double& v : q.data()) v /= root;
    }
    return ProjectionMatrix(std::move(q), ensemble, seed, scaled);
}

Vector apply(const ProjectionMatrix& q, std::span<const double> x) {
    if (x.size() != q.n())
        throw ContractError("apply: vector has dimension " + std::to_string(x.size()) + ", matrix expects " +
                            std::to_string(q.n()));
    Vector out(q.m());
    for (std::size_t r = 0; r < q.m(); ++r) out[r] = dot(q.entries().row(r), x);
    return out;
}

SupportSet apply_set(const ProjectionMatrix& q, const SupportSet& set) {
    if (set.dim() != q.n())
        throw ContractError("apply_set: set has dimension " + std::to_string(set.dim()) + ", matrix expects " +
                            std::to_string(q.n()));
    const auto projected = kernels::parallel::project(q.entries(), set.features());
    std::vector<LabeledPoint> out;
    out.reserve(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) out.push_back({projected[i], set[i].y});
    return SupportSet(std::move(out));
}

ProjectionMatrix load_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<double> data;
    std::size_t cols = 0, rows = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ss, cell, ',')) {
            auto b = cell.find_first_not_of(" \t\r");
            auto e = cell.find_last_not_of(" \t\r");
            const std::string t = b == std::string::npos ? std::string() : cell.substr(b, e - b + 1);
            double v = 0.0;
            const char* first = t.data();
            if (!t.empty() && *first == '+') ++first;
            auto res = std::from_chars(first, t.data() + t.size(), v);
            if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
                throw ParseError("malformed numeric cell '" + t + "' at row " + std::to_string(lineno) +
                                 ", column " + std::to_string(c + 1));
            data.push_back(v);
            ++c;
        }
        if (rows == 0) cols = c;
        else if (c != cols)
            throw ParseError("matrix row " + std::to_string(lineno) + " has " + std::to_string(c) +
                             " columns, expected " + std::to_string(cols));
        ++rows;
    }
    if (rows == 0) throw ParseError("empty matrix file: " + path.string());
    Matrix q(rows, cols);
    q.data() = std::move(data);
    return ProjectionMatrix(std::move(q));
}

void save_matrix_csv(const ProjectionMatrix& q, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    for (std::size_t r = 0; r < q.m(); ++r) {
        for (std::size_t c = 0; c < q.n(); ++c) {
            if (c) out << ',';
            out << format_double(q(r, c));
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace sepcomp
