#include "sepcomp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "sepcomp/errors.hpp"
#include "sepcomp/rng.hpp"

namespace sepcomp {

SupportSet::SupportSet(std::vector<LabeledPoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw ContractError("support set must be nonempty");
    dim_ = points_.front().x.size();
    if (dim_ == 0) throw ContractError("support set points must have dimension >= 1");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (p.x.size() != dim_)
            throw ContractError("point " + std::to_string(i) + " has dimension " +
                                std::to_string(p.x.size()) + ", expected " + std::to_string(dim_));
        if (p.y != 1 && p.y != -1)
            throw ContractError("invalid label " + std::to_string(p.y) + " at point " + std::to_string(i));
        for (double v : p.x)
            if (!std::isfinite(v)) throw ContractError("non-finite coordinate at point " + std::to_string(i));
    }
}

std::vector<Vector> SupportSet::positives() const {
    std::vector<Vector> out;
    for (const auto& p : points_)
        if (p.y == 1) out.push_back(p.x);
    return out;
}

std::vector<Vector> SupportSet::negatives() const {
    std::vector<Vector> out;
    for (const auto& p : points_)
        if (p.y == -1) out.push_back(p.x);
    return out;
}

std::vector<std::size_t> SupportSet::positive_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i].y == 1) out.push_back(i);
    return out;
}

std::vector<std::size_t> SupportSet::negative_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i].y == -1) out.push_back(i);
    return out;
}

std::vector<Vector> SupportSet::features() const {
    std::vector<Vector> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.x);
    return out;
}

double SupportSet::radius() const {
    double r = 0.0;
    for (const auto& p : points_) r = std::max(r, norm(p.x));
    return r;
}

std::size_t SupportSet::sparsity() const {
    std::size_t s = 0;
    for (const auto& p : points_) s = std::max(s, count_nonzeros(p.x));
    return s;
}

bool SupportSet::operator==(const SupportSet& other) const {
    if (dim_ != other.dim_ || points_.size() != other.points_.size()) return false;
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i].y != other.points_[i].y || points_[i].x != other.points_[i].x) return false;
    return true;
}

Hyperplane::Hyperplane(Vector w_, double b_) : w(std::move(w_)), b(b_) {
    if (w.empty() || !(norm(w) > 0.0)) throw ContractError("hyperplane normal must be nonzero");
}

void GenConfig::validate() const {
    if (n == 0) throw ContractError("gen: n must be >= 1");
    if (count_per_class == 0) throw ContractError("gen: count per class must be >= 1");
    if (!(margin > 0.0) || !std::isfinite(margin)) throw ContractError("gen: margin must be > 0");
    if (!std::isfinite(radius) || radius < 1.0 / margin)
        throw ContractError("gen: infeasible config, radius R must satisfy R >= 1/margin");
    // With b0 = 0 a point needs ||x|| >= |<w0,x>|/||w0|| >= margin to clear the slab.
    if (bias == 0.0 && radius <= margin)
        throw ContractError("gen: infeasible config, radius R must exceed the margin");
    if (!std::isfinite(bias)) throw ContractError("gen: bias must be finite");
    if (sparsity && (*sparsity == 0 || *sparsity > n)) throw ContractError("gen: sparsity must satisfy 1 <= s <= n");
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        auto b = cell.find_first_not_of(" \t\r");
        auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (!cell.empty() && *first == '+') ++first;
    auto res = std::from_chars(first, last, v);
    if (cell.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
        throw ParseError("malformed numeric cell '" + cell + "' at line " + std::to_string(row) + ", column " +
                         std::to_string(col));
    return v;
}

}  // namespace

SupportSet load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.find_first_not_of(" \t\r") == std::string::npos)
        throw ParseError("empty file: " + path.string());

    const auto header = split_row(line);
    const auto label_it = std::find(header.begin(), header.end(), "y");
    if (label_it == header.end()) throw ParseError("header has no label column named 'y': " + path.string());
    const std::size_t label_col = static_cast<std::size_t>(label_it - header.begin());
    if (header.size() < 2) throw ParseError("header needs at least one feature column: " + path.string());

    std::vector<LabeledPoint> points;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_row(line);
        if (cells.size() != header.size())
            throw ParseError("line " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                             " cells, header has " + std::to_string(header.size()));
        LabeledPoint p;
        p.x.reserve(header.size() - 1);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const double v = parse_cell(cells[c], row, c + 1);
            if (c == label_col) {
                if (v != 1.0 && v != -1.0)
                    throw ParseError("invalid label '" + cells[c] + "' at line " + std::to_string(row));
                p.y = static_cast<int>(v);
            } else {
                p.x.push_back(v);
            }
        }
        points.push_back(std::move(p));
    }
    if (points.empty()) throw ParseError("no data rows in " + path.string());
    return SupportSet(std::move(points));
}

void save_csv(const SupportSet& set, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    for (std::size_t j = 0; j < set.dim(); ++j) out << 'x' << (j + 1) << ',';
    out << "y\n";
    for (const auto& p : set.points()) {
        for (double v : p.x) out << format_double(v) << ',';
        out << (p.y > 0 ? "1" : "-1") << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

namespace {

Vector unit_direction(Rng& rng, std::size_t dim) {
    Vector v(dim);
    double sq = 0.0;
    do {
        for (auto& c : v) c = rng.normal();
        sq = squared_norm(v);
    } while (sq == 0.0);
    const double inv = 1.0 / std::sqrt(sq);
    for (auto& c : v) c *= inv;
    return v;
}

// Uniform sample from the ball of radius r in `dim` dimensions.
Vector ball_sample(Rng& rng, std::size_t dim, double r) {
    Vector v = unit_direction(rng, dim);
    const double scale = r * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
    for (auto& c : v) c *= scale;
    return v;
}

}  // namespace

std::pair<SupportSet, Hyperplane> generate_separable(const GenConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);

    Vector w0 = unit_direction(rng, cfg.n);
    for (auto& c : w0) c /= cfg.margin;
    Hyperplane h(w0, cfg.bias);

    const std::size_t support = cfg.sparsity.value_or(cfg.n);
    std::vector<std::size_t> perm(cfg.n);

    std::vector<LabeledPoint> pos, neg;
    std::uint64_t draws = 0;
    while (pos.size() < cfg.count_per_class || neg.size() < cfg.count_per_class) {
        if (++draws > cfg.max_draws)
            throw ContractError("gen: rejection sampling exhausted its draw budget; increase radius or lower margin");
        Vector x(cfg.n, 0.0);
        if (support == cfg.n) {
            x = ball_sample(rng, cfg.n, cfg.radius);
        } else {
            // Random support of size s via partial Fisher-Yates.
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            for (std::size_t k = 0; k < support; ++k)
                std::swap(perm[k], perm[k + rng.below(cfg.n - k)]);
            const Vector local = ball_sample(rng, support, cfg.radius);
            for (std::size_t k = 0; k < support; ++k) x[perm[k]] = local[k];
        }
        if (norm(x) > cfg.radius) continue;
        const double f = h.value(x);
        if (std::abs(f) < 1.0) continue;
        auto& bucket = f > 0 ? pos : neg;
        if (bucket.size() < cfg.count_per_class) bucket.push_back({std::move(x), f > 0 ? 1 : -1});
    }

    std::vector<LabeledPoint> all;
    all.reserve(2 * cfg.count_per_class);
    for (std::size_t i = 0; i < cfg.count_per_class; ++i) {
        all.push_back(std::move(pos[i]));
        all.push_back(std::move(neg[i]));
    }
    return {SupportSet(std::move(all)), std::move(h)};
}

}  // namespace sepcomp
