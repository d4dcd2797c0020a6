#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "teich/constants.hpp"
#include "teich/experiments.hpp"
#include "teich/projection.hpp"
#include "teich/report.hpp"
#include "teich/scans.hpp"
#include "teich/serialize.hpp"
#include "teich/version.hpp"

namespace teich::cli {

// exit codes: 0 success, 1 runtime failure, 2 config/validation error
inline constexpr int kOk = 0;
inline constexpr int kRuntimeError = 1;
inline constexpr int kConfigError = 2;

struct GeodesicSpec {
    std::string kind;  // "axis" | "endpoints" | "base_direction"
    std::vector<std::int64_t> matrix;   // axis
    std::vector<double> p, q;           // endpoints
    std::vector<double> base, direction;  // base_direction
    std::optional<std::pair<double, double>> interval;
};

struct RunConfig {
    std::string experiment;
    GeodesicSpec geodesic{"axis", {2, 1, 1, 1}, {}, {}, {}, {}, {}};
    std::uint64_t seed = 20240817;
    std::string out_dir;
    std::string constants_path;
    int depth = 200;
    double tol = 1e-8;
    nlohmann::ordered_json raw;  // config document as loaded, embedded in outputs
};

inline std::string default_out_dir() {
    if (const char* env = std::getenv("TEICH_OUT_DIR")) return env;
    return "out";
}

inline void merge_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    nlohmann::ordered_json j;
    in >> j;
    cfg.raw = j;
    if (j.contains("experiment")) cfg.experiment = j["experiment"].get<std::string>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("constants")) cfg.constants_path = j["constants"].get<std::string>();
    if (j.contains("depth")) cfg.depth = j["depth"].get<int>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("geodesic")) {
        const auto& g = j["geodesic"];
        if (!g.contains("kind"))
            throw std::invalid_argument("config: missing field geodesic.kind");
        GeodesicSpec spec;
        spec.kind = g["kind"].get<std::string>();
        if (spec.kind == "axis") {
            if (!g.contains("matrix"))
                throw std::invalid_argument("config: missing field geodesic.matrix");
            spec.matrix = g["matrix"].get<std::vector<std::int64_t>>();
        } else if (spec.kind == "endpoints") {
            if (!g.contains("p")) throw std::invalid_argument("config: missing field geodesic.p");
            if (!g.contains("q")) throw std::invalid_argument("config: missing field geodesic.q");
            spec.p = g["p"].get<std::vector<double>>();
            spec.q = g["q"].get<std::vector<double>>();
        } else if (spec.kind == "base_direction") {
            if (!g.contains("base"))
                throw std::invalid_argument("config: missing field geodesic.base");
            if (!g.contains("direction"))
                throw std::invalid_argument("config: missing field geodesic.direction");
            spec.base = g["base"].get<std::vector<double>>();
            spec.direction = g["direction"].get<std::vector<double>>();
        } else {
            throw std::invalid_argument("config: unknown geodesic.kind " + spec.kind);
        }
        if (g.contains("interval")) {
            auto iv = g["interval"].get<std::vector<double>>();
            if (iv.size() != 2) throw std::invalid_argument("config: interval needs [lo, hi]");
            spec.interval = {iv[0], iv[1]};
        }
        cfg.geodesic = spec;
    }
}

inline TeichGeodesic build_geodesic(const GeodesicSpec& spec) {
    TeichGeodesic g = [&] {
        if (spec.kind == "axis") {
            if (spec.matrix.size() != 4)
                throw std::invalid_argument("geodesic: axis matrix needs 4 integers");
            return axis_of(MappingClass(spec.matrix[0], spec.matrix[1], spec.matrix[2],
                                        spec.matrix[3]))
                .line;
        }
        if (spec.kind == "endpoints") {
            if (spec.p.size() != 2 || spec.q.size() != 2)
                throw std::invalid_argument("geodesic: endpoints need p=[x,y] q=[x,y]");
            return geodesic_between(TeichPoint(spec.p[0], spec.p[1]),
                                    TeichPoint(spec.q[0], spec.q[1]));
        }
        if (spec.kind == "base_direction") {
            if (spec.base.size() != 2 || spec.direction.size() != 2)
                throw std::invalid_argument("geodesic: need base=[x,y] direction=[a,b]");
            return geodesic_from_qd(TeichPoint(spec.base[0], spec.base[1]),
                                    MeasuredFoliation(spec.direction[0], spec.direction[1]));
        }
        throw std::invalid_argument("geodesic: unknown kind " + spec.kind);
    }();
    if (spec.interval) g = g.with_interval(spec.interval->first, spec.interval->second);
    return g;
}

// --- subcommands -------------------------------------------------------------

inline int cmd_distance(double x1, double y1, double x2, double y2, int depth) {
    const TeichPoint p(x1, y1), q(x2, y2);
    const double d = teich_distance(p, q);
    const double K = dilatation(p, q);
    std::printf("d = %.17g\n", d);
    std::printf("K = %.17g\n", K);
    if (p == q) {
        std::printf("witness: (any class; points coincide)\n");
    } else {
        const ProjectiveClass w = projective_class(ratio_maximizer(p, q));
        const MeasuredFoliation rep = w.representative();
        std::printf("witness theta = %.17g direction = (%.17g, %.17g)\n", w.theta, rep.a, rep.b);
        // nearest rational witness from the slope oracle
        double best = 0.0;
        SlopeCurve best_slope{1, 0};
        for (const SlopeCurve& s : slope_enumerate(depth)) {
            const MeasuredFoliation f = s.to_foliation();
            const double ratio = extremal_length(q, f) / extremal_length(p, f);
            if (ratio > best) {
                best = ratio;
                best_slope = s;
            }
        }
        std::printf("best slope at depth %d: (%lld, %lld) ratio = %.17g\n", depth,
                    static_cast<long long>(best_slope.p), static_cast<long long>(best_slope.q),
                    best);
    }
    return kOk;
}

inline int cmd_project(const RunConfig& cfg, double sx, double sy) {
    const TeichPoint sigma(sx, sy);
    const TeichGeodesic L = build_geodesic(cfg.geodesic);
    const Characterization ch = characterize_projection(sigma, L);

    nlohmann::ordered_json out = to_json(ch);
    out["artifact_version"] = kVersion;
    out["sigma"] = to_json(sigma);
    out["config"] = cfg.raw.is_null() ? nlohmann::ordered_json::object() : cfg.raw;
    out["seed"] = cfg.seed;

    const std::string dir = cfg.out_dir.empty() ? default_out_dir() : cfg.out_dir;
    std::filesystem::create_directories(dir);
    const std::string path = (std::filesystem::path(dir) / "projection.json").string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << out.dump(2) << "\n";

    std::printf("t_star = %.17g\n", ch.minmax.t_star);
    std::printf("distance = %.17g\n", ch.minmax.distance_to_L);
    std::printf("diam_mM = %.17g\n", ch.diam_mM);
    std::printf("diam_Mm = %.17g\n", ch.diam_Mm);
    std::printf("gap = %.17g\n", ch.hausdorff_gap);
    std::printf("wrote %s\n", path.c_str());
    return kOk;
}

inline ExperimentReport constants_report(const ConstantsRun& run, const RunConfig& cfg) {
    ExperimentReport rep;
    rep.id = "constants_scan";
    rep.seed = cfg.seed;
    rep.config = cfg.raw.is_null() ? nlohmann::ordered_json::object() : cfg.raw;
    rep.columns = {"gap_lo", "gap_hi", "min_I", "count"};
    rep.plot_x = 1;
    rep.plot_y = 3;
    for (const auto& r : run.intersection_scan.rows)
        if (r.count > 0)
            rep.add_row({r.gap_lo, r.gap_hi, r.min_I, double(r.count)}, "ok");
    auto push = [&](const char* name, const MeasuredValue& v) {
        if (v.present()) rep.fitted.push_back({name, v.value, v.value, v.value});
    };
    const EmpiricalConstants& k = run.k;
    push("epsilon", k.epsilon);
    push("ell0", k.ell0);
    push("c0", k.c0);
    push("D", k.D);
    push("c1", k.c1);
    push("c3", k.c3);
    push("r0", k.r0);
    push("c4", k.c4);
    push("c5", k.c5);
    push("C", k.C);
    push("b1", k.b1);
    push("B", k.B);
    return rep;
}

inline int cmd_run(const RunConfig& cfg) {
    static const std::vector<std::string> known = {"constants",      "contract", "stability",
                                                   "thin",           "pa-translation",
                                                   "sharpness"};
    if (std::find(known.begin(), known.end(), cfg.experiment) == known.end()) {
        std::string names;
        for (const auto& n : known) names += " " + n;
        throw std::invalid_argument("unknown experiment '" + cfg.experiment +
                                    "'; valid names:" + names);
    }
    const std::string dir = cfg.out_dir.empty() ? default_out_dir() : cfg.out_dir;
    std::filesystem::create_directories(dir);
    const std::string kpath = cfg.constants_path.empty()
                                  ? (std::filesystem::path(dir) / "constants.json").string()
                                  : cfg.constants_path;

    if (cfg.experiment == "constants") {
        ConstantsRunConfig cc;
        if (cfg.geodesic.kind == "axis" && cfg.geodesic.matrix.size() == 4)
            cc.axis_matrix = MappingClass(cfg.geodesic.matrix[0], cfg.geodesic.matrix[1],
                                          cfg.geodesic.matrix[2], cfg.geodesic.matrix[3]);
        cc.seed = cfg.seed;
        const ConstantsRun run = run_constants_scans(cc);
        save_constants(run.k, kpath);
        constants_report(run, cfg).write(dir);
        std::printf("epsilon = %.17g\nc0 = %.17g\nD = %.17g\nc1 = %.17g\nc3 = %.17g\nb1 = %.17g\n",
                    run.k.epsilon.value, run.k.c0.value, run.k.D.value, run.k.c1.value,
                    run.k.c3.value, run.k.b1.value);
        std::printf("wrote %s\n", kpath.c_str());
        return kOk;
    }

    EmpiricalConstants k;
    try {
        k = load_constants(kpath);
    } catch (const std::exception&) {
        throw std::invalid_argument("no constants at " + kpath +
                                    "; run `teich run constants` first");
    }
    k.require_scan_core();

    if (cfg.experiment == "contract") {
        const TeichGeodesic L = build_geodesic(cfg.geodesic);
        ContractionConfig cc;
        cc.seed = cfg.seed;
        if (cfg.geodesic.kind == "axis") {
            const auto& m = cfg.geodesic.matrix;
            cc.t_hi = axis_of(MappingClass(m[0], m[1], m[2], m[3])).translation_length;
        } else if (L.finite_interval()) {
            cc.t_lo = L.a;
            cc.t_hi = L.b;
        }
        std::optional<ThicknessCertificate> cert;
        if (cfg.geodesic.kind == "axis") {
            const auto& m = cfg.geodesic.matrix;
            cert = certify_axis(axis_of(MappingClass(m[0], m[1], m[2], m[3])));
        } else if (L.finite_interval()) {
            cert = certify_precompact(L, 0.01);
        }
        ExperimentReport rep =
            contraction_experiment(L, cert ? &*cert : nullptr, k.b1.value, cc);
        rep.config["base_config"] = cfg.raw.is_null() ? nlohmann::ordered_json::object() : cfg.raw;
        rep.write(dir);
        // the contraction run pins b2 and hence b0
        for (const auto& f : rep.fitted)
            if (f.name == "b2")
                k.b2 = {f.value, "contract", static_cast<std::int64_t>(rep.rows.size())};
        k.b0 = {std::max(k.b2.value, 2.0 * k.b1.value), "derived max(b2, 2 b1)", 0};
        save_constants(k, kpath);
        for (const auto& f : rep.fitted)
            std::printf("%s = %.17g [%.17g, %.17g]\n", f.name.c_str(), f.value, f.ci_lo, f.ci_hi);
        return kOk;
    }
    if (cfg.experiment == "stability") {
        TeichGeodesic L = build_geodesic(cfg.geodesic);
        if (!L.finite_interval()) L = L.with_interval(0.0, 10.0);
        StabilityConfig sc;
        sc.seed = cfg.seed;
        ExperimentReport rep = stability_experiment(L, k, sc);
        rep.write(dir);
        for (const auto& f : rep.fitted)
            std::printf("%s = %.17g\n", f.name.c_str(), f.value);
        return kOk;
    }
    if (cfg.experiment == "thin") {
        const TeichGeodesic L = build_geodesic(cfg.geodesic);
        ThinConfig tc;
        tc.seed = cfg.seed;
        if (cfg.geodesic.kind == "axis") {
            const auto& m = cfg.geodesic.matrix;
            tc.t_hi = axis_of(MappingClass(m[0], m[1], m[2], m[3])).translation_length;
        }
        const MeasuredFoliation alpha(1.0, 0.0);
        const double d0 = thin_delta0(L, alpha, k);
        ThinOutcome out = thin_projection_experiment(L, alpha, 0.5 * d0, k, tc);
        out.report.write(dir);
        std::printf("delta0 = %.17g\ndiam_proj = %.17g\ndiam_thin_on_L = %.17g\nB_measured = %.17g\n",
                    out.delta0, out.diam_proj, out.diam_thin_on_L, out.B_measured);
        return kOk;
    }
    if (cfg.experiment == "pa-translation") {
        PaConfig pc;
        pc.seed = cfg.seed;
        const auto& m = cfg.geodesic.matrix;
        if (cfg.geodesic.kind != "axis" || m.size() != 4)
            throw std::invalid_argument("pa-translation: needs an axis geodesic spec");
        PaOutcome out = pA_translation_experiment(MappingClass(m[0], m[1], m[2], m[3]), pc);
        out.report.write(dir);
        for (const auto& f : out.report.fitted)
            std::printf("%s = %.17g [%.17g, %.17g]\n", f.name.c_str(), f.value, f.ci_lo, f.ci_hi);
        return kOk;
    }
    // sharpness
    SharpnessConfig sc;
    sc.seed = cfg.seed;
    const SlopeCurve slope = make_slope(1, 0);
    SharpnessOutcome out = sharpness_demo(make_cusp_geodesic(slope), slope, sc);
    out.report.write(dir);
    for (const auto& f : out.report.fitted)
        std::printf("%s = %.17g [%.17g, %.17g]\n", f.name.c_str(), f.value, f.ci_lo, f.ci_hi);
    return kOk;
}

// --- entry point ----------------------------------------------------------------

inline int main(int argc, const char* const* argv) {
    CLI::App app{"teich: coarse projections onto geodesics in the torus model"};
    app.set_version_flag("--version", std::string("teich ") + kVersion);
    app.require_subcommand(1);

    // distance
    auto* dist = app.add_subcommand("distance", "distance, dilatation and witness class");
    std::vector<double> coords;
    int depth = 200;
    dist->add_option("coords", coords, "x1 y1 x2 y2")->expected(4);
    dist->add_option("--depth", depth, "slope oracle depth");

    // shared run/project options
    RunConfig cfg;
    std::string config_path, axis_str;
    std::vector<std::int64_t> axis_v;
    std::vector<double> endpoints_v, base_v, direction_v, interval_v, sigma_v;

    auto add_geodesic_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--axis", axis_v, "mapping-class matrix a b c d")->expected(4);
        cmd->add_option("--endpoints", endpoints_v, "x1 y1 x2 y2")->expected(4);
        cmd->add_option("--base", base_v, "base point x y")->expected(2);
        cmd->add_option("--direction", direction_v, "horizontal direction a b")->expected(2);
        cmd->add_option("--interval", interval_v, "parameter interval lo hi")->expected(2);
        cmd->add_option("--seed", cfg.seed, "random seed");
        cmd->add_option("--out", cfg.out_dir, "output directory");
        cmd->add_option("--constants", cfg.constants_path, "constants JSON path");
        cmd->add_option("--depth", cfg.depth, "slope oracle depth");
        cmd->add_option("--tol", cfg.tol, "tolerance");
    };

    auto* project = app.add_subcommand("project", "project a point onto a geodesic");
    project->add_option("--sigma", sigma_v, "point x y")->expected(2);
    add_geodesic_flags(project);

    auto* runcmd = app.add_subcommand("run", "run an experiment");
    std::string experiment;
    runcmd->add_option("experiment", experiment,
                       "constants|contract|stability|thin|pa-translation|sharpness");
    add_geodesic_flags(runcmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (dist->parsed()) return cmd_distance(coords[0], coords[1], coords[2], coords[3], depth);

        // flags > file > defaults
        if (!config_path.empty()) merge_config_file(cfg, config_path);
        if (!axis_v.empty()) cfg.geodesic = GeodesicSpec{"axis", axis_v, {}, {}, {}, {}, {}};
        if (!endpoints_v.empty())
            cfg.geodesic = GeodesicSpec{"endpoints",
                                        {},
                                        {endpoints_v[0], endpoints_v[1]},
                                        {endpoints_v[2], endpoints_v[3]},
                                        {},
                                        {},
                                        {}};
        if (!base_v.empty() || !direction_v.empty()) {
            if (base_v.size() != 2 || direction_v.size() != 2)
                throw std::invalid_argument("--base and --direction must be given together");
            cfg.geodesic = GeodesicSpec{"base_direction", {}, {}, {}, base_v, direction_v, {}};
        }
        if (!interval_v.empty()) cfg.geodesic.interval = {interval_v[0], interval_v[1]};
        if (cfg.raw.is_null()) {
            cfg.raw = nlohmann::ordered_json::object();
            cfg.raw["seed"] = cfg.seed;
        }

        if (project->parsed()) {
            if (sigma_v.size() != 2) throw std::invalid_argument("project: missing --sigma x y");
            if (!cfg.geodesic.interval && cfg.geodesic.kind == "base_direction")
                cfg.geodesic.interval = {{-2.0, 2.0}};
            return cmd_project(cfg, sigma_v[0], sigma_v[1]);
        }
        if (runcmd->parsed()) {
            if (!experiment.empty()) cfg.experiment = experiment;
            if (cfg.experiment.empty())
                throw std::invalid_argument("run: missing experiment name");
            return cmd_run(cfg);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
    return kConfigError;
}

}
