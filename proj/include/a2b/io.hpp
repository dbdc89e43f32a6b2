#pragma once

#include "a2b/construct.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace a2b {

using json = nlohmann::json;

struct Scene {
    long p = 2;
    std::vector<Flag> flags;
    std::uint64_t seed = 0;
};

json to_json(const Rational& q);
Rational rational_from_json(const json& j);
json to_json(const Vec3& v);
Vec3 vec_from_json(const json& j);
json to_json(const Flag& f);
Flag flag_from_json(const json& j);
json to_json(const NormPoint& x);
NormPoint point_from_json(long p, const json& j);
json to_json(const Scene& s);
Scene scene_from_json(const json& j);
Scene read_scene(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// Exact value and float side by side.
json exact_json(const Rational& q, int radicand = 1);

json tree_json(const SSetData& s, const MetricTree& t);
json report_json(const VerificationReport& r);
json verify_json(const VerifyResult& r);
json shift_table(const Scene& s);

// Chart of F_ij drawn with the three wall directions at 60 degrees.
std::string render_flat_svg(const RankOneSet& r, int i, int j, int grid);
std::string render_tree_svg(const MetricTree& t);

}  // namespace a2b
