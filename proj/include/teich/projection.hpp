#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "teich/foliation.hpp"
#include "teich/systole.hpp"
#include "teich/torus_model.hpp"

namespace teich {

// --- the two-exponential approximation ------------------------------------

// e_t(f) = (1/2)(i(f,phi_h)^2 e^{2t} + i(f,phi_v)^2 e^{-2t}); strictly
// positive because the defining pair fills.
inline double approx_length(const TeichGeodesic& L, const MeasuredFoliation& f, double t) {
    const double ih = intersection(f, L.qd.phi_h);
    const double iv = intersection(f, L.qd.phi_v);
    return 0.5 * (ih * ih * std::exp(2.0 * t) + iv * iv * std::exp(-2.0 * t));
}

// Minimizer of t -> e_t(f) over the whole line: (1/2) log(iv/ih), with the
// one-sided cases sent to +-infinity. The minimum value is ih*iv.
inline double approx_min_param(const TeichGeodesic& L, const MeasuredFoliation& f) {
    const double ih = intersection(f, L.qd.phi_h);
    const double iv = intersection(f, L.qd.phi_v);
    if (ih == 0.0) return kInf;
    if (iv == 0.0) return -kInf;
    return 0.5 * std::log(iv / ih);
}

inline double approx_min_value(const TeichGeodesic& L, const MeasuredFoliation& f) {
    return intersection(f, L.qd.phi_h) * intersection(f, L.qd.phi_v);
}

struct ClampedParam {
    double s;
    bool clamped;
};

// Constrained minimizer over [a,b]: the vertex when interior, else the nearer
// endpoint (e_t is monotone past the vertex). Infinite vertices clamp to the
// corresponding finite endpoint.
inline ClampedParam approx_min_param_clamped(const TeichGeodesic& L,
                                             const MeasuredFoliation& f) {
    const double s = approx_min_param(L, f);
    if (s < L.a) return {L.a, true};
    if (s > L.b) return {L.b, true};
    return {s, false};
}

// (1/2) e_s(f) e^{2|t-s|} <= e_t(f) <= 2 e_s(f) e^{2|t-s|}, s the vertex.
inline bool envelope_check(const TeichGeodesic& L, const MeasuredFoliation& f, double t) {
    const double s = approx_min_param(L, f);
    if (!std::isfinite(s))
        throw std::domain_error("envelope_check: vertex at infinity, inapplicable");
    const double emin = approx_min_value(L, f);
    const double grow = std::exp(2.0 * std::abs(t - s));
    const double et = approx_length(L, f, t);
    return et >= 0.5 * emin * grow * (1.0 - 1e-12) && et <= 2.0 * emin * grow * (1.0 + 1e-12);
}

// I_t(f,g) = i(f,g)^2 / (E_t(f) E_t(g)); scale-invariant, in [0,1].
inline double intersection_ratio(const TeichGeodesic& L, const MeasuredFoliation& f,
                                 const MeasuredFoliation& g, double t) {
    const TeichPoint pt = L.point_at(t);
    const double i = intersection(f, g);
    return i * i / (extremal_length(pt, f) * extremal_length(pt, g));
}

// Extremal-length ratio profiles of a point against a geodesic.
struct RatioProfile {
    TeichGeodesic L;
    TeichPoint sigma;

    // R_t(f) = E_{L(t)}(f) / E_sigma(f)
    double ratio(const MeasuredFoliation& f, double t) const {
        return extremal_length(L.point_at(t), f) / extremal_length(sigma, f);
    }
    // r_t(f) = e_t(f) / E_sigma(f)
    double approx_ratio(const MeasuredFoliation& f, double t) const {
        return approx_length(L, f, t) / extremal_length(sigma, f);
    }
};

// --- 1d searches ------------------------------------------------------------

namespace detail {

struct ScalarMin {
    double arg;
    double value;
};

// Golden-section minimization of a strictly quasi-convex function, with a
// downhill-walk bracket for (half-)infinite intervals and a parabolic polish
// so the argmin is located well below sqrt(eps) accuracy.
inline ScalarMin minimize_quasiconvex(const std::function<double(double)>& g, double a,
                                      double b, double tol = 1e-10) {
    if (a == b) return {a, g(a)};
    double lo, hi;
    if (std::isfinite(a) && std::isfinite(b)) {
        lo = a;
        hi = b;
    } else {
        // downhill walk with doubling steps until a center beats both ends
        double tc = std::isfinite(a) ? a : (std::isfinite(b) ? b : 0.0);
        double gc = g(tc);
        double step = 1.0;
        double tl = std::max(a, tc - step), tr = std::min(b, tc + step);
        double gl = g(tl), gr = g(tr);
        int guard = 0;
        while (!(gc <= gl && gc <= gr)) {
            if (gl < gr) {
                tr = tc; gr = gc;
                tc = tl; gc = gl;
                step *= 2.0;
                tl = std::max(a, tc - step);
                gl = g(tl);
            } else {
                tl = tc; gl = gc;
                tc = tr; gc = gr;
                step *= 2.0;
                tr = std::min(b, tc + step);
                gr = g(tr);
            }
            if (++guard > 200)
                throw std::logic_error("minimize_quasiconvex: bracket walk failed; "
                                       "function not quasi-convex?");
        }
        lo = tl;
        hi = tr;
    }

    const double phi = 0.6180339887498949;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = g(x1), f2 = g(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = g(x2);
        }
    }
    double t = 0.5 * (lo + hi);
    double v = g(t);

    // value comparisons only locate the argmin to ~sqrt(eps); polish by
    // bisecting the sign of a central-difference slope
    {
        const double h = 1e-4;
        double lo2 = std::max(a, t - h), hi2 = std::min(b, t + h);
        const double hd = 1e-6;
        auto slope = [&](double x) { return g(x + hd) - g(x - hd); };
        if (lo2 - hd >= a && hi2 + hd <= b && slope(lo2) < 0.0 && slope(hi2) > 0.0) {
            for (int i = 0; i < 60 && hi2 - lo2 > 1e-13; ++i) {
                const double mid = 0.5 * (lo2 + hi2);
                if (slope(mid) > 0.0) hi2 = mid; else lo2 = mid;
            }
            // the slope sign change locates the argmin more sharply than any
            // value comparison down here can confirm
            t = 0.5 * (lo2 + hi2);
            v = std::min(v, g(t));
        }
    }
    return {t, v};
}

inline ScalarMin maximize_quasiconcave(const std::function<double(double)>& g, double a,
                                       double b, double tol = 1e-10) {
    ScalarMin m = minimize_quasiconvex([&](double t) { return -g(t); }, a, b, tol);
    return {m.arg, -m.value};
}

// One-sided boundary of the sublevel set {t : g(t) <= threshold} around a
// minimizer, found by doubling then bisection.
inline double sublevel_boundary(const std::function<double(double)>& g, double t_star,
                                double bound, double threshold, int dir) {
    const double sgn = (dir > 0) ? 1.0 : -1.0;
    if (t_star == bound) return bound;
    double w = 1e-7;
    double inside = t_star;
    double outside = t_star + sgn * w;
    bool found = false;
    while (true) {
        double cand = t_star + sgn * w;
        if ((dir > 0 && cand >= bound) || (dir < 0 && cand <= bound)) {
            if (g(bound) <= threshold) return bound;
            outside = bound;
            found = true;
            break;
        }
        if (g(cand) > threshold) { outside = cand; found = true; break; }
        inside = cand;
        w *= 2.0;
        if (w > 1e12) return bound;
    }
    if (!found) return bound;
    for (int i = 0; i < 90; ++i) {
        const double mid = 0.5 * (inside + outside);
        if (g(mid) <= threshold) inside = mid; else outside = mid;
    }
    return inside;
}

}  // namespace detail

// --- projection results ------------------------------------------------------

struct ParamInterval {
    double lo = 0.0;
    double hi = 0.0;
    double diam() const { return hi - lo; }
    bool contains(double t, double slack = 0.0) const { return t >= lo - slack && t <= hi + slack; }
};

struct ProjectionResult {
    // Minmax side: sublevel set of t -> d(sigma, L(t)) at depth 1e-8, the
    // optimum, its value, and the maximizing class there.
    ParamInterval t_mM{};
    double t_star = 0.0;
    double distance_to_L = 0.0;
    ProjectiveClass witness_mM{};

    // Maxmin side: vertex parameters of the near-optimal classes, minimizers
    // of E_t over [a,b] for the witness classes, and the best class.
    std::vector<double> t_tilde_Mm;
    std::vector<bool> t_tilde_clamped;
    std::vector<double> t_Mm;
    ProjectiveClass witness_Mm{};
    double r_max = 0.0;
};

inline constexpr double kSublevelTol = 1e-8;

// Closest-point projection: minimize t -> d(sigma, L(t)) over [a,b].
inline ProjectionResult minmax_project(const TeichPoint& sigma, const TeichGeodesic& L) {
    auto g = [&](double t) { return teich_distance(sigma, L.point_at(t)); };
    detail::ScalarMin m = detail::minimize_quasiconvex(g, L.a, L.b);

    ProjectionResult res;
    res.t_star = m.arg;
    res.distance_to_L = m.value;
    const double thr = m.value + kSublevelTol;
    res.t_mM.lo = detail::sublevel_boundary(g, m.arg, L.a, thr, -1);
    res.t_mM.hi = detail::sublevel_boundary(g, m.arg, L.b, thr, +1);
    const TeichPoint foot = L.point_at(m.arg);
    if (sigma == foot || m.value < 1e-14) {
        res.witness_mM = ProjectiveClass{0.0};
    } else {
        res.witness_mM = projective_class(ratio_maximizer(sigma, foot));
    }
    return res;
}

// Distance from a point to the geodesic segment, with the realizing parameter.
inline detail::ScalarMin project_param(const TeichPoint& sigma, const TeichGeodesic& L) {
    auto g = [&](double t) { return teich_distance(sigma, L.point_at(t)); };
    return detail::minimize_quasiconvex(g, L.a, L.b);
}

inline double distance_to_geodesic(const TeichPoint& sigma, const TeichGeodesic& L) {
    return project_param(sigma, L).value;
}

// Dual problem: maximize, over projective classes, the minimum over [a,b] of
// the approximate ratio r_t. Multistart golden-section over the class angle.
//
// Classes are parametrized by the angle phi of their holonomy at sigma, so
// E_sigma is constant along the parametrization and the objective stays
// well-conditioned; in a fixed frame the maximizer narrows like e^{-2d}.
inline ProjectionResult maxmin_project(const TeichPoint& sigma, const TeichGeodesic& L,
                                       int n_starts = 360) {
    auto class_at = [&](double phi) {
        const double b = std::sin(phi) / sigma.y;
        const double a = std::cos(phi) - b * sigma.x;
        return MeasuredFoliation(a, b);
    };
    auto value_at = [&](double phi) {
        const MeasuredFoliation f = class_at(phi);
        const ClampedParam cp = approx_min_param_clamped(L, f);
        double e;
        if (!std::isfinite(cp.s)) return 0.0;  // vertex escapes an infinite end
        if (cp.clamped)
            e = approx_length(L, f, cp.s);
        else
            e = approx_min_value(L, f);
        return e / extremal_length(sigma, f);
    };

    struct Local {
        double phi;
        double value;
    };
    std::vector<Local> locals;
    locals.reserve(n_starts);
    const double w = kPi / n_starts;
    for (int k = 0; k < n_starts; ++k) {
        detail::ScalarMin m = detail::maximize_quasiconcave(value_at, k * w, (k + 1) * w);
        locals.push_back({m.arg, m.value});
    }
    double best = 0.0;
    double best_phi = 0.0;
    for (const auto& l : locals)
        if (l.value > best || (l.value == best && l.phi < best_phi)) {
            best = l.value;
            best_phi = l.phi;
        }

    ProjectionResult res;
    res.r_max = best;
    res.witness_Mm = projective_class(class_at(best_phi));

    std::vector<Local> winners;
    for (const auto& l : locals)
        if (best - l.value <= 1e-8) winners.push_back(l);
    std::sort(winners.begin(), winners.end(),
              [](const Local& x, const Local& y) { return x.phi < y.phi; });

    auto push_unique = [](std::vector<double>& v, double t, double tol) {
        for (double u : v)
            if (std::abs(u - t) <= tol) return false;
        v.push_back(t);
        return true;
    };

    std::vector<double> seen_phis;
    for (const auto& wn : winners) {
        if (!push_unique(seen_phis, wn.phi, 1e-7)) continue;
        const MeasuredFoliation f = class_at(wn.phi);
        const ClampedParam cp = approx_min_param_clamped(L, f);
        if (push_unique(res.t_tilde_Mm, cp.s, 1e-9))
            res.t_tilde_clamped.push_back(cp.clamped);
        // m(f): minimizers of the true extremal length along the segment
        auto el = [&](double t) { return extremal_length(L.point_at(t), f); };
        detail::ScalarMin mm = detail::minimize_quasiconvex(el, L.a, L.b);
        push_unique(res.t_Mm, mm.arg, 1e-9);
    }
    return res;
}

// --- lemma checkers ----------------------------------------------------------

struct ProductBoundCheck {
    bool applicable = false;
    bool ok = true;
    double gap = 0.0;
    double lhs = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

// R_{s_f}(f) R_{s_f}(g) <= 1/c1 whenever |s_f - s_g| > D.
inline ProductBoundCheck check_product_bound(const TeichGeodesic& L,
                                             const MeasuredFoliation& f,
                                             const MeasuredFoliation& g,
                                             const TeichPoint& sigma, double D, double c1) {
    ProductBoundCheck out;
    const double sf = approx_min_param_clamped(L, f).s;
    const double sg = approx_min_param_clamped(L, g).s;
    out.gap = std::abs(sf - sg);
    if (!(out.gap > D)) return out;  // inapplicable
    out.applicable = true;
    RatioProfile prof{L, sigma};
    out.lhs = prof.ratio(f, sf) * prof.ratio(g, sf);
    out.bound = 1.0 / c1;
    out.margin = out.bound - out.lhs;
    out.ok = out.margin >= 0.0;
    return out;
}

struct RatioDistanceCheck {
    bool applicable = false;
    bool ok = true;
    double Q = 1.0;
    double s_lambda = 0.0;
    double ratio = 0.0;
};

// The maxmin witness lambda satisfies R_{s_lambda}(lambda) <= exp 2 d(sigma,
// L(s_lambda)); Q is the defect of the right-hand estimate, a sample of c3.
inline RatioDistanceCheck check_ratio_estimates_distance(const TeichPoint& sigma,
                                                         const TeichGeodesic& L,
                                                         const ProjectionResult& maxmin) {
    RatioDistanceCheck out;
    const MeasuredFoliation lam = maxmin.witness_Mm.representative();
    const double s = approx_min_param_clamped(L, lam).s;
    if (!std::isfinite(s)) return out;
    out.applicable = true;
    out.s_lambda = s;
    RatioProfile prof{L, sigma};
    out.ratio = prof.ratio(lam, s);
    const double d = teich_distance(sigma, L.point_at(s));
    out.Q = std::exp(2.0 * d) / out.ratio;
    out.ok = out.Q >= 1.0 - 1e-10;
    return out;
}

// --- characterization ---------------------------------------------------------

struct Characterization {
    double diam_mM = 0.0;
    double diam_Mm = 0.0;
    double hausdorff_gap = 0.0;
    ProjectionResult minmax;
    ProjectionResult maxmin;
};

namespace detail {

inline double dist_to_interval(double t, const ParamInterval& I) {
    if (t < I.lo) return I.lo - t;
    if (t > I.hi) return t - I.hi;
    return 0.0;
}

inline double dist_to_set(double t, const std::vector<double>& S) {
    double best = kInf;
    for (double s : S) best = std::min(best, std::abs(t - s));
    return best;
}

// Hausdorff distance between a closed interval and a finite nonempty set.
inline double hausdorff_interval_set(const ParamInterval& I, std::vector<double> S) {
    std::sort(S.begin(), S.end());
    double h = 0.0;
    for (double s : S) h = std::max(h, dist_to_interval(s, I));
    // farthest point of the interval from S: endpoints and clipped midpoints
    h = std::max(h, dist_to_set(I.lo, S));
    h = std::max(h, dist_to_set(I.hi, S));
    for (std::size_t i = 0; i + 1 < S.size(); ++i) {
        const double mid = 0.5 * (S[i] + S[i + 1]);
        if (mid > I.lo && mid < I.hi) h = std::max(h, dist_to_set(mid, S));
    }
    return h;
}

}  // namespace detail

// Runs both solvers; reports the two diameters and the Hausdorff distance
// between the closest-point set and the dual solution set, in arclength.
inline Characterization characterize_projection(const TeichPoint& sigma,
                                                const TeichGeodesic& L) {
    Characterization ch;
    ch.minmax = minmax_project(sigma, L);
    ch.maxmin = maxmin_project(sigma, L);
    ch.diam_mM = ch.minmax.t_mM.diam();
    std::vector<double> dual = ch.maxmin.t_Mm;
    for (double s : ch.maxmin.t_tilde_Mm) dual.push_back(s);
    double lo = kInf, hi = -kInf;
    for (double s : dual) { lo = std::min(lo, s); hi = std::max(hi, s); }
    ch.diam_Mm = (dual.empty()) ? 0.0 : hi - lo;
    ch.hausdorff_gap = ch.maxmin.t_Mm.empty()
                           ? 0.0
                           : detail::hausdorff_interval_set(ch.minmax.t_mM, ch.maxmin.t_Mm);
    return ch;
}

}
