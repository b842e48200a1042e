#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sepcomp/distortion.hpp"
#include "sepcomp/harness.hpp"
#include "sepcomp/hullsvm.hpp"

namespace sepcomp::report {

using Json = nlohmann::ordered_json;

enum class Format { json, csv };
Format parse_format(std::string_view s);

Json to_json(const Vector& v);
Json to_json(const Hyperplane& h);
/// Keys: eta_ip, eta_sd, argmax_ip, argmax_sd, n, m, set_size.
Json to_json(const DistortionReport& r);
Json to_json(const RipEstimate& r);
Json to_json(const GaussianWidthEstimate& g);
/// Fit output. Keys: w, b, delta, margin, certified_gap, support_weights
/// (one weight per set row, within that row's class).
Json fit_json(const HullWitness& witness, std::size_t set_size);
Json to_json(const harness::VerificationReport& r);
Json to_json(const harness::SweepResult& r);
Json to_json(const harness::Calibration& c);

Hyperplane hyperplane_from_json(const Json& j);

/// Header plus one row per swept m.
std::string sweep_csv(const harness::SweepResult& r);

/// Writes `text` to `path`, or stdout when path is empty or "-".
void write_text(const std::string& text, const std::filesystem::path& path);
std::string dump(const Json& j);

void report_emit(const harness::VerificationReport& r, Format format, const std::filesystem::path& path);
void report_emit(const harness::SweepResult& r, Format format, const std::filesystem::path& path);

}  // namespace sepcomp::report
