#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "teich/foliation.hpp"
#include "teich/torus_model.hpp"

namespace teich {

struct SystoleResult {
    SlopeCurve slope;
    double value;
};

// Shortest simple closed curve at p, by Gauss-Lagrange reduction of the
// lattice Z + Z*tau. The reduced basis vector is the exact minimum; ties are
// broken by the lexicographically smallest normalized (q, p).
inline SystoleResult systole(const TeichPoint& pt) {
    // basis vectors as complex numbers with integer lattice coordinates
    double ux = 1.0, uy = 0.0;
    std::int64_t up = 1, uq = 0;
    double vx = pt.x, vy = pt.y;
    std::int64_t vp = 0, vq = 1;

    if (ux * ux + uy * uy > vx * vx + vy * vy) {
        std::swap(ux, vx); std::swap(uy, vy);
        std::swap(up, vp); std::swap(uq, vq);
    }
    for (int iter = 0; iter < 128; ++iter) {
        const double mu = std::round((ux * vx + uy * vy) / (ux * ux + uy * uy));
        vx -= mu * ux; vy -= mu * uy;
        vp -= static_cast<std::int64_t>(mu) * up;
        vq -= static_cast<std::int64_t>(mu) * uq;
        if (vx * vx + vy * vy < ux * ux + uy * uy) {
            std::swap(ux, vx); std::swap(uy, vy);
            std::swap(up, vp); std::swap(uq, vq);
        } else {
            break;
        }
    }

    // minimal vectors of a reduced basis lie among u, v, u+v, u-v
    struct Cand { double e; SlopeCurve s; };
    std::vector<Cand> cands;
    auto push = [&](double wx, double wy, std::int64_t p, std::int64_t q) {
        if (p == 0 && q == 0) return;
        cands.push_back({(wx * wx + wy * wy) / pt.y, make_slope(p, q)});
    };
    push(ux, uy, up, uq);
    push(vx, vy, vp, vq);
    push(ux + vx, uy + vy, up + vp, uq + vq);
    push(ux - vx, uy - vy, up - vp, uq - vq);

    double best = cands.front().e;
    for (const auto& c : cands) best = std::min(best, c.e);
    const double tie = best * (1.0 + 1e-12);
    const Cand* winner = nullptr;
    for (const auto& c : cands)
        if (c.e <= tie && (!winner || slope_key_less(c.s, winner->s))) winner = &c;
    return SystoleResult{winner->s, best};
}

// Sampled thickness certificate: systole values along a geodesic segment.
// A lower-bound estimate, not a proof. `period`, when set, marks a geodesic
// invariant under a translation by that amount (an axis), so the sampled
// window certifies the whole line.
struct ThicknessCertificate {
    double epsilon = 0.0;
    struct Sample {
        double t;
        SlopeCurve slope;
        double value;
    };
    std::vector<Sample> samples;
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::optional<double> period;

    bool covers(double a, double b) const {
        if (period) return true;
        const double slack = 1e-9;
        return std::isfinite(a) && std::isfinite(b) && t_lo <= a + slack && t_hi >= b - slack;
    }
};

inline ThicknessCertificate certify_precompact(const TeichGeodesic& L, double step) {
    if (!L.finite_interval())
        throw std::invalid_argument("certify_precompact: interval must be finite; truncate first");
    if (!(step > 0.0)) throw std::invalid_argument("certify_precompact: step must be positive");
    const double len = L.b - L.a;
    const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
    ThicknessCertificate cert;
    cert.t_lo = L.a;
    cert.t_hi = L.b;
    cert.epsilon = kInf;
    const int count = (len == 0.0) ? 0 : n;
    for (int i = 0; i <= count; ++i) {
        const double t = (count == 0) ? L.a : L.a + len * i / count;
        const SystoleResult s = systole(L.point_at(t));
        cert.samples.push_back({t, s.slope, s.value});
        cert.epsilon = std::min(cert.epsilon, s.value);
    }
    return cert;
}

// Certificate for the full axis of a hyperbolic mapping class: one period
// sampled, extended by invariance.
inline ThicknessCertificate certify_axis(const Axis& ax, double step = 0.01) {
    ThicknessCertificate cert =
        certify_precompact(ax.line.with_interval(0.0, ax.translation_length), step);
    cert.period = ax.translation_length;
    return cert;
}

// E_p(f) E_p(g) >= i(f,g)^2, up to relative slack 1e-9.
inline bool check_length_intersection(const TeichPoint& p, const MeasuredFoliation& f,
                                      const MeasuredFoliation& g) {
    const double ee = extremal_length(p, f) * extremal_length(p, g);
    const double i = intersection(f, g);
    return i * i <= ee * (1.0 + 1e-9);
}

}
