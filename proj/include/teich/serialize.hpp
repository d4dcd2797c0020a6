#pragma once

#include <string>

#include "json.hpp"
#include "teich/projection.hpp"
#include "teich/systole.hpp"
#include "teich/torus_model.hpp"

namespace teich {

inline nlohmann::ordered_json to_json(const TeichPoint& p) {
    return {{"x", p.x}, {"y", p.y}};
}

inline nlohmann::ordered_json to_json(const MeasuredFoliation& f) {
    return {{"a", f.a}, {"b", f.b}};
}

inline nlohmann::ordered_json to_json(const SlopeCurve& s) {
    return {{"p", s.p}, {"q", s.q}};
}

inline nlohmann::ordered_json to_json(const ThicknessCertificate& c) {
    nlohmann::ordered_json j;
    j["epsilon"] = c.epsilon;
    j["t_lo"] = c.t_lo;
    j["t_hi"] = c.t_hi;
    if (c.period) j["period"] = *c.period;
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    for (const auto& s : c.samples)
        samples.push_back({{"t", s.t}, {"slope", to_json(s.slope)}, {"value", s.value}});
    j["samples"] = samples;
    return j;
}

inline nlohmann::ordered_json to_json(const ProjectionResult& r) {
    nlohmann::ordered_json j;
    j["t_mM"] = {{"lo", r.t_mM.lo}, {"hi", r.t_mM.hi}};
    j["t_star"] = r.t_star;
    j["distance_to_L"] = r.distance_to_L;
    j["witness_mM_theta"] = r.witness_mM.theta;
    j["t_tilde_Mm"] = r.t_tilde_Mm;
    j["t_tilde_clamped"] = r.t_tilde_clamped;
    j["t_Mm"] = r.t_Mm;
    j["witness_Mm_theta"] = r.witness_Mm.theta;
    j["r_max"] = r.r_max;
    return j;
}

inline nlohmann::ordered_json to_json(const Characterization& ch) {
    nlohmann::ordered_json j;
    j["diam_mM"] = ch.diam_mM;
    j["diam_Mm"] = ch.diam_Mm;
    j["hausdorff_gap"] = ch.hausdorff_gap;
    j["minmax"] = to_json(ch.minmax);
    j["maxmin"] = to_json(ch.maxmin);
    return j;
}

}
