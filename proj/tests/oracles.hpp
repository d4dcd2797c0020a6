#pragma once

// Test-only oracles, kept independent of the production code paths they
// check: brute-force slope enumeration for the dilatation supremum and a
// plain grid search for 1d minima.

#include <cmath>
#include <vector>

#include "teich/foliation.hpp"
#include "teich/torus_model.hpp"

namespace teich::oracles {

// Supremum of E_q/E_p over classes, from below: maximum over the slope box
// |p|,|q| <= depth, then 200 golden-section steps in angle between the
// winner's neighboring enumerated directions. The box alone leaves
// ~1/(2 depth) projective gaps around integer slopes, and a mediant walk
// through such a gap stalls at one denominator per step.
inline double slope_sup_ratio(const TeichPoint& p, const TeichPoint& q,
                              const std::vector<SlopeCurve>& slopes) {
    auto ratio_dir = [&](double a, double b) {
        const MeasuredFoliation f(a, b);
        return extremal_length(q, f) / extremal_length(p, f);
    };
    auto ratio_th = [&](double th) { return ratio_dir(std::cos(th), std::sin(th)); };

    double best = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        const double r = ratio_dir(double(slopes[i].p), double(slopes[i].q));
        if (r > best) {
            best = r;
            best_i = i;
        }
    }
    const double th0 = std::atan2(double(slopes[best_i].q), double(slopes[best_i].p));
    double lo_th = -1e9, hi_th = 1e9;
    for (const SlopeCurve& s : slopes) {
        double th = std::atan2(double(s.q), double(s.p)) - th0;
        if (th > kPi / 2) th -= kPi;
        if (th < -kPi / 2) th += kPi;
        if (th < 0 && th > lo_th) lo_th = th;
        if (th > 0 && th < hi_th) hi_th = th;
    }
    double lo = th0 + lo_th, hi = th0 + hi_th;
    const double phi = 0.6180339887498949;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = ratio_th(x1), f2 = ratio_th(x2);
    for (int iter = 0; iter < 200; ++iter) {
        if (f1 > best) best = f1;
        if (f2 > best) best = f2;
        if (f1 >= f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = ratio_th(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = ratio_th(x2);
        }
    }
    return best;
}

inline const std::vector<SlopeCurve>& depth200_slopes() {
    static const std::vector<SlopeCurve> slopes = slope_enumerate(200);
    return slopes;
}

// coarse-then-fine grid argmin of t -> d(sigma, L(t)), step 1e-6 at the end
inline double grid_argmin_distance(const TeichPoint& sigma, const TeichGeodesic& L, double lo,
                                   double hi) {
    double best_t = lo, best = 1e300;
    const int n_coarse = 4000;
    for (int i = 0; i <= n_coarse; ++i) {
        const double t = lo + (hi - lo) * i / n_coarse;
        const double v = teich_distance(sigma, L.point_at(t));
        if (v < best) { best = v; best_t = t; }
    }
    const double w = (hi - lo) / n_coarse;
    const double lo2 = std::max(lo, best_t - w), hi2 = std::min(hi, best_t + w);
    const int n_fine = static_cast<int>((hi2 - lo2) / 1e-6) + 1;
    for (int i = 0; i <= n_fine; ++i) {
        const double t = lo2 + (hi2 - lo2) * i / n_fine;
        const double v = teich_distance(sigma, L.point_at(t));
        if (v < best) { best = v; best_t = t; }
    }
    return best_t;
}

}
