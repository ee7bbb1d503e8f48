#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cafcc/cube.hpp"
#include "cafcc/lax.hpp"

namespace cafcc {

using Json = nlohmann::ordered_json;

// Ordered label → canonical value pairs.
using Snapshot = std::vector<std::pair<std::string, std::string>>;

inline Json to_json(const Snapshot& s) {
    Json j = Json::object();
    for (const auto& [k, v] : s) j[k] = v;
    return j;
}

inline Json to_json(const Matrix2& m) {
    return Json::array({Json::array({m.a.str(), m.b.str()}), Json::array({m.c.str(), m.d.str()})});
}

inline void add_matrix(Snapshot& s, const std::string& name, const Matrix2& m) {
    s.emplace_back(name + "11", m.a.str());
    s.emplace_back(name + "12", m.b.str());
    s.emplace_back(name + "21", m.c.str());
    s.emplace_back(name + "22", m.d.str());
}

inline Snapshot cafcc_residuals(const CafccReport& r) {
    return {{"step3.z_e(8)", r.step3_values[0].str()},  {"step3.z_e(12)", r.step3_values[1].str()},
            {"step4.z_s(13)", r.step4_values[0].str()}, {"step4.z_s(9)", r.step4_values[1].str()},
            {"step5.y_d(z_e)", r.step5_values[0].str()}, {"step5.y_d(y)", r.step5_values[1].str()},
            {"step5.y_d(z_s)", r.step5_values[2].str()}, {"step5.y_d(x_d)", r.step5_values[3].str()},
            {"step6.residual", r.step6_residual.str()}};
}

inline Json to_json(const CafccReport& r) {
    Json solved = Json::object();
    for (const auto& [v, s] : r.solved) solved[vertex_name(v)] = s.str();
    return Json{{"system", r.system},
                {"seed", r.seed},
                {"solved", solved},
                {"step3_agree", r.step3_agree},
                {"step4_agree", r.step4_agree},
                {"step5_values", Json::array({r.step5_values[0].str(), r.step5_values[1].str(),
                                              r.step5_values[2].str(), r.step5_values[3].str()})},
                {"step5_agree", r.step5_agree},
                {"step6_residual", r.step6_residual.str()},
                {"pass", r.pass}};
}

} // namespace cafcc
