#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "teich/rng.hpp"
#include "teich/version.hpp"

namespace teich {

// 17 significant digits, '.' decimal, locale-free
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct FittedValue {
    std::string name;
    double value = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

// One experiment run: config snapshot, numeric rows, fitted constants.
// Pure value; identical (config, seed) reproduce it byte for byte.
struct ExperimentReport {
    std::string id;
    nlohmann::ordered_json config;
    std::uint64_t seed = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> row_status;  // optional, one per row
    std::vector<FittedValue> fitted;
    int plot_x = 1;  // 1-based CSV columns used by the emitted plot script
    int plot_y = 2;

    void add_row(std::vector<double> r, std::string status = "") {
        rows.push_back(std::move(r));
        row_status.push_back(std::move(status));
    }

    std::string csv() const {
        std::string out = "# teich " + std::string(kVersion) + " experiment=" + id +
                          " seed=" + std::to_string(seed) +
                          " config=" + config.dump() + "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out += (i ? "," : "") + columns[i];
        bool any_status = false;
        for (const auto& s : row_status) any_status |= !s.empty();
        if (any_status) out += ",status";
        out += "\n";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t c = 0; c < rows[r].size(); ++c)
                out += (c ? "," : "") + fmt17(rows[r][c]);
            if (any_status) out += "," + row_status[r];
            out += "\n";
        }
        return out;
    }

    nlohmann::ordered_json summary_json() const {
        nlohmann::ordered_json j;
        j["experiment"] = id;
        j["artifact_version"] = kVersion;
        j["seed"] = seed;
        j["config"] = config;
        j["rows"] = rows.size();
        nlohmann::ordered_json f = nlohmann::ordered_json::array();
        for (const auto& v : fitted)
            f.push_back({{"name", v.name},
                         {"value", v.value},
                         {"ci_lo", v.ci_lo},
                         {"ci_hi", v.ci_hi}});
        j["fitted"] = f;
        return j;
    }

    std::string plot_script() const {
        std::string csv_name = id + ".csv";
        std::string out;
        out += "# teich " + std::string(kVersion) + " plot for experiment " + id + "\n";
        out += "set datafile separator ','\n";
        out += "set datafile commentschars '#'\n";
        out += "set key autotitle columnhead\n";
        out += "set term pngcairo size 960,640\n";
        out += "set output '" + id + ".png'\n";
        out += "plot '" + csv_name + "' using " + std::to_string(plot_x) + ":" +
               std::to_string(plot_y) + " with points pt 7\n";
        return out;
    }

    // writes <id>.csv, <id>.json, <id>.gp under dir
    void write(const std::string& dir) const {
        namespace fs = std::filesystem;
        fs::create_directories(dir);
        auto dump = [&](const std::string& name, const std::string& text) {
            std::ofstream out(fs::path(dir) / name, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + name + " in " + dir);
            out << text;
        };
        dump(id + ".csv", csv());
        dump(id + ".json", summary_json().dump(2) + "\n");
        dump(id + ".gp", plot_script());
    }
};

// --- least squares + bootstrap ----------------------------------------------

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

inline LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw std::invalid_argument("fit_linear: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw std::invalid_argument("fit_linear: degenerate abscissae");
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

struct SlopeCI {
    double slope = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Percentile bootstrap over (x,y) pairs; deterministic in the seed.
inline SlopeCI bootstrap_slope_ci(const std::vector<double>& xs, const std::vector<double>& ys,
                                  std::uint64_t seed, int resamples = 1000) {
    SlopeCI out;
    out.slope = fit_linear(xs, ys).slope;
    const std::size_t n = xs.size();
    std::vector<double> slopes;
    slopes.reserve(resamples);
    std::vector<double> bx(n), by(n);
    std::uint64_t attempt = 0;
    while (slopes.size() < static_cast<std::size_t>(resamples) && attempt < 16ull * resamples) {
        Rng rng = Rng::stream(seed, 1000003ull + attempt++);
        bool degenerate = true;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = static_cast<std::size_t>(rng.uniform() * n);
            bx[i] = xs[j];
            by[i] = ys[j];
            if (bx[i] != bx[0]) degenerate = false;
        }
        if (degenerate) continue;
        slopes.push_back(fit_linear(bx, by).slope);
    }
    if (slopes.empty()) throw std::invalid_argument("bootstrap_slope_ci: degenerate sample");
    std::sort(slopes.begin(), slopes.end());
    out.lo = slopes[static_cast<std::size_t>(0.025 * slopes.size())];
    out.hi = slopes[static_cast<std::size_t>(0.975 * slopes.size()) - 1];
    return out;
}

}
