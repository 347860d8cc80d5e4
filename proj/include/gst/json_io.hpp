#pragma once

#include <json.hpp>

#include "gst/geometry.hpp"
#include "gst/model.hpp"
#include "gst/points.hpp"
#include "gst/quadform.hpp"
#include "gst/scalar.hpp"
#include "gst/sim.hpp"

namespace gst::io {

using nlohmann::json;

json to_json(const Scalar& s);
json to_json(const Vec& v);

/// Strings and integers parse as exact rationals; JSON floats force float mode.
Scalar scalar_from_json(const json& j);
Vec vec_from_json(const json& j);

/// {"n": ..., "r": "num/den", "p": [...], "q": [...]}; float specs carry
/// "mode": "float" and plain numbers.
json to_json(const model::GameSpec& spec);
model::GameSpec game_spec_from_json(const json& j);

json to_json(const points::MembershipReport& rep);
json to_json(const quadform::Inertia& in);
json to_json(const points::RootBracket& rb);
json to_json(const points::CertifiedPoint& cp);  // point file with certificate
json to_json(const sim::SimReport& rep);
json to_json(const geometry::SegmentReport& rep);

/// 64-bit FNV-1a over a canonical string; platform-stable digest.
std::uint64_t fnv1a(const std::string& s);

/// Reproducibility manifest attached to every CLI report.
json run_manifest(const std::string& command_line, const std::string& config_canonical,
                  const std::vector<std::uint64_t>& seeds, double wall_ms);

}  // namespace gst::io
