#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "teich/version.hpp"

namespace teich {

// A measured stand-in for one of the non-constructive constants, with the
// run that produced it.
struct MeasuredValue {
    double value = std::numeric_limits<double>::quiet_NaN();
    std::string experiment;
    std::int64_t samples = 0;

    bool present() const { return std::isfinite(value); }
};

struct EmpiricalConstants {
    MeasuredValue epsilon;  // thickness of the reference geodesic
    MeasuredValue ell0;     // systole upper bound over sampled points
    MeasuredValue c0;       // sandwich constant E_t <= c0 e_t
    MeasuredValue D, c1;    // distance-implies-intersection pair
    MeasuredValue c3;       // ratio-estimates-distance constant
    MeasuredValue r0;       // lower bound for the maxmin value, eps/(ell0 c0)
    MeasuredValue c4, c5;   // diameter bounds derived from the above
    MeasuredValue C;        // contraction chain constant, (1/2)log(c3^2 c0/c1)
    MeasuredValue b1, b2, b0;  // contraction-at-a-distance constants
    MeasuredValue B;        // quasi-Lipschitz additive constant

    bool has_scan_core() const {
        return epsilon.present() && c0.present() && D.present() && c1.present() &&
               c3.present() && r0.present() && b1.present();
    }
    bool has_contraction() const { return has_scan_core() && b2.present() && b0.present(); }

    void require_scan_core() const {
        if (!has_scan_core())
            throw std::invalid_argument(
                "empirical constants missing: run the constants experiment first");
    }
};

namespace detail {

inline nlohmann::ordered_json to_json(const MeasuredValue& v) {
    return {{"value", v.value}, {"experiment", v.experiment}, {"samples", v.samples}};
}

inline MeasuredValue measured_from_json(const nlohmann::json& j) {
    MeasuredValue v;
    v.value = j.at("value").get<double>();
    v.experiment = j.at("experiment").get<std::string>();
    v.samples = j.at("samples").get<std::int64_t>();
    return v;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const EmpiricalConstants& k) {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["artifact_version"] = kVersion;
    nlohmann::ordered_json c;
    auto put = [&](const char* name, const MeasuredValue& v) {
        if (v.present()) c[name] = detail::to_json(v);
    };
    put("epsilon", k.epsilon);
    put("ell0", k.ell0);
    put("c0", k.c0);
    put("D", k.D);
    put("c1", k.c1);
    put("c3", k.c3);
    put("r0", k.r0);
    put("c4", k.c4);
    put("c5", k.c5);
    put("C", k.C);
    put("b1", k.b1);
    put("b2", k.b2);
    put("b0", k.b0);
    put("B", k.B);
    j["constants"] = c;
    return j;
}

inline EmpiricalConstants constants_from_json(const nlohmann::json& j) {
    if (j.at("format_version").get<int>() != 1)
        throw std::invalid_argument("constants file: unsupported format_version");
    EmpiricalConstants k;
    const auto& c = j.at("constants");
    auto get = [&](const char* name, MeasuredValue& v) {
        if (c.contains(name)) v = detail::measured_from_json(c.at(name));
    };
    get("epsilon", k.epsilon);
    get("ell0", k.ell0);
    get("c0", k.c0);
    get("D", k.D);
    get("c1", k.c1);
    get("c3", k.c3);
    get("r0", k.r0);
    get("c4", k.c4);
    get("c5", k.c5);
    get("C", k.C);
    get("b1", k.b1);
    get("b2", k.b2);
    get("b0", k.b0);
    get("B", k.B);
    return k;
}

inline void save_constants(const EmpiricalConstants& k, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_json(k).dump(2) << "\n";
}

inline EmpiricalConstants load_constants(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read constants file " + path);
    nlohmann::json j;
    in >> j;
    return constants_from_json(j);
}

}
