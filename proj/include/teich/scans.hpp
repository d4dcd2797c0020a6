#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "teich/constants.hpp"
#include "teich/projection.hpp"
#include "teich/rng.hpp"
#include "teich/systole.hpp"

namespace teich {

// Random point at prescribed arclength from a uniformly random point of the
// sampled window of L, shot in a uniformly random direction.
inline TeichPoint sample_off_geodesic(const TeichGeodesic& L, double t_lo, double t_hi,
                                      double dist, Rng& rng) {
    const double t = rng.uniform(t_lo, t_hi);
    const double psi = rng.uniform(0.0, 2.0 * kPi);
    if (dist == 0.0) return L.point_at(t);
    return shoot(L.point_at(t), psi, dist).point_at(dist);
}

// Empirical sandwich constant: max of E_t(f)/e_t(f) over random (t, f).
// Requires a covering thickness certificate; the bound degenerates on thin
// geodesics. Also asserts the exact lower half of the sandwich.
inline double sandwich_constant(const TeichGeodesic& L, const ThicknessCertificate& cert,
                                int sample_size, std::uint64_t seed,
                                double t_lo = 0.0, double t_hi = 0.0) {
    if (!(cert.epsilon > 0.0) || cert.samples.empty() || !cert.covers(L.a, L.b))
        throw std::invalid_argument("sandwich_constant: geodesic not certified");
    if (t_lo == t_hi) {
        t_lo = std::isfinite(L.a) ? L.a : cert.t_lo;
        t_hi = std::isfinite(L.b) ? L.b : cert.t_hi;
    }
    double worst = 1.0;
    for (int i = 0; i < sample_size; ++i) {
        Rng rng = Rng::stream(seed, i);
        const double t = rng.uniform(t_lo, t_hi);
        const double theta = rng.uniform(0.0, kPi);
        const MeasuredFoliation f(std::cos(theta), std::sin(theta));
        const double E = extremal_length(L.point_at(t), f);
        const double e = approx_length(L, f, t);
        const double ratio = E / e;
        if (!(ratio >= 1.0 - 1e-12))
            throw std::logic_error("sandwich_constant: lower sandwich violated");
        worst = std::max(worst, ratio);
    }
    return worst;
}

// --- distance implies intersection -------------------------------------------

struct IntersectionScanRow {
    double gap_lo = 0.0;
    double gap_hi = 0.0;
    double min_I = kInf;
    std::int64_t count = 0;
};

struct IntersectionScan {
    std::vector<IntersectionScanRow> rows;
    double asymptotic_floor = 0.0;
    double c1 = 0.0;
    double D = 0.0;
    std::int64_t samples = 0;
};

// Samples random class pairs, bins the observed I_{s_f}(f,g) by the vertex
// gap |s_f - s_g|, and fits (D, c1): c1 is half the asymptotic floor, D the
// smallest gap past which every bin minimum clears c1.
inline IntersectionScan scan_distance_implies_intersection(
    const TeichGeodesic& L, int n_samples, std::uint64_t seed,
    const ThicknessCertificate* cert = nullptr, double bin_width = 0.25,
    double gap_cap = 8.0, double floor_threshold = 4.0) {
    if (cert && !cert->covers(L.a, L.b))
        throw std::invalid_argument("scan_distance_implies_intersection: certificate mismatch");
    IntersectionScan out;
    const int n_bins = static_cast<int>(std::ceil(gap_cap / bin_width)) + 1;  // last = overflow
    out.rows.assign(n_bins, IntersectionScanRow{});
    for (int i = 0; i < n_bins; ++i) {
        out.rows[i].gap_lo = i * bin_width;
        out.rows[i].gap_hi = (i + 1 == n_bins) ? kInf : (i + 1) * bin_width;
    }
    for (int i = 0; i < n_samples; ++i) {
        Rng rng = Rng::stream(seed, i);
        const MeasuredFoliation f(std::cos(rng.uniform(0.0, kPi)),
                                  std::sin(rng.uniform(0.0, kPi)));
        const MeasuredFoliation g(std::cos(rng.uniform(0.0, kPi)),
                                  std::sin(rng.uniform(0.0, kPi)));
        const ClampedParam sf = approx_min_param_clamped(L, f);
        const ClampedParam sg = approx_min_param_clamped(L, g);
        const double gap = std::abs(sf.s - sg.s);
        if (gap == 0.0) continue;  // identical vertices carry no information
        const double I = intersection_ratio(L, f, g, sf.s);
        const int bin = std::min(n_bins - 1, static_cast<int>(gap / bin_width));
        out.rows[bin].min_I = std::min(out.rows[bin].min_I, I);
        out.rows[bin].count++;
        out.samples++;
    }
    double floor = kInf;
    for (const auto& r : out.rows)
        if (r.count > 0 && r.gap_lo >= floor_threshold) floor = std::min(floor, r.min_I);
    if (!std::isfinite(floor))
        throw std::logic_error("scan: no samples past the floor threshold; enlarge the scan");
    out.asymptotic_floor = floor;
    out.c1 = 0.5 * floor;
    double D = 0.0;
    for (int i = static_cast<int>(out.rows.size()); i-- > 0;) {
        const auto& r = out.rows[i];
        if (r.count > 0 && r.min_I < out.c1) {
            D = r.gap_hi;  // first edge past the last failing bin
            break;
        }
    }
    out.D = D;
    return out;
}

// --- c3 / ell0 scan -----------------------------------------------------------

struct RatioDistanceScan {
    double c3 = 1.0;
    double ell0 = 0.0;
    std::int64_t samples = 0;
};

// Maximal defect Q of the ratio-estimates-distance inequality over random
// points against L; also records the largest systole seen (an ell0 sample).
inline RatioDistanceScan scan_ratio_estimates_distance(const TeichGeodesic& L, int n_samples,
                                                       std::uint64_t seed, double t_lo,
                                                       double t_hi, double max_dist = 5.0) {
    RatioDistanceScan out;
    for (int i = 0; i < n_samples; ++i) {
        Rng rng = Rng::stream(seed, 7000000ull + i);
        const double d = rng.uniform(0.0, max_dist);
        const TeichPoint sigma = sample_off_geodesic(L, t_lo, t_hi, d, rng);
        const ProjectionResult mx = maxmin_project(sigma, L);
        const RatioDistanceCheck chk = check_ratio_estimates_distance(sigma, L, mx);
        if (!chk.applicable) continue;
        if (!chk.ok) throw std::logic_error("ratio-estimates-distance: left inequality violated");
        out.c3 = std::max(out.c3, chk.Q);
        out.ell0 = std::max(out.ell0, systole(sigma).value);
        out.samples++;
    }
    return out;
}

// Quasi-Lipschitz excess max(diam(pi(x) u pi(y)) - d(x,y)) over random pairs,
// padded by twice the sublevel half-width so fresh samples stay below it.
inline double scan_quasi_lipschitz_B(const TeichGeodesic& L, int n_pairs, std::uint64_t seed,
                                     double t_lo, double t_hi, double max_dist = 5.0) {
    double worst = 0.0;
    for (int i = 0; i < n_pairs; ++i) {
        Rng rng = Rng::stream(seed, 9000000ull + i);
        const TeichPoint x = sample_off_geodesic(L, t_lo, t_hi, rng.uniform(0.0, max_dist), rng);
        const TeichPoint y = sample_off_geodesic(L, t_lo, t_hi, rng.uniform(0.0, max_dist), rng);
        const ProjectionResult px = minmax_project(x, L);
        const ProjectionResult py = minmax_project(y, L);
        const double diam = std::max(px.t_mM.hi, py.t_mM.hi) - std::min(px.t_mM.lo, py.t_mM.lo);
        worst = std::max(worst, diam - teich_distance(x, y));
    }
    return worst + 2.0 * std::sqrt(2.0 * kSublevelTol);
}

// --- the constants run ---------------------------------------------------------

struct ConstantsRunConfig {
    MappingClass axis_matrix{2, 1, 1, 1};
    double certify_step = 0.01;
    int sandwich_samples = 10000;
    int intersection_samples = 100000;
    int ratio_samples = 10000;
    int lipschitz_pairs = 1000;
    std::uint64_t seed = 20240817;
};

struct ConstantsRun {
    EmpiricalConstants k;
    Axis axis;
    ThicknessCertificate cert;
    IntersectionScan intersection_scan;
};

// Measures every constant the later experiments consume, on the axis of the
// given mapping class. b2/b0 are filled by the contraction experiment.
inline ConstantsRun run_constants_scans(const ConstantsRunConfig& cfg) {
    ConstantsRun run{EmpiricalConstants{}, axis_of(cfg.axis_matrix), {}, {}};
    const double period = run.axis.translation_length;
    run.cert = certify_axis(run.axis, cfg.certify_step);
    EmpiricalConstants& k = run.k;

    k.epsilon = {run.cert.epsilon, "certify_axis", static_cast<std::int64_t>(run.cert.samples.size())};

    k.c0 = {sandwich_constant(run.axis.line, run.cert, cfg.sandwich_samples, cfg.seed,
                              -2.0 * period, 2.0 * period),
            "sandwich_scan", cfg.sandwich_samples};

    run.intersection_scan = scan_distance_implies_intersection(
        run.axis.line, cfg.intersection_samples, cfg.seed, &run.cert);
    k.D = {run.intersection_scan.D, "intersection_scan", run.intersection_scan.samples};
    k.c1 = {run.intersection_scan.c1, "intersection_scan", run.intersection_scan.samples};

    const RatioDistanceScan rs = scan_ratio_estimates_distance(
        run.axis.line, cfg.ratio_samples, cfg.seed, 0.0, period);
    k.c3 = {rs.c3, "ratio_distance_scan", rs.samples};
    k.ell0 = {rs.ell0, "ratio_distance_scan", rs.samples};

    k.r0 = {k.epsilon.value / (k.ell0.value * k.c0.value), "derived eps/(ell0 c0)", rs.samples};
    k.c4 = {0.5 * std::log(2.0 / (k.c1.value * k.r0.value * k.r0.value)),
            "derived (1/2)log(2/(c1 r0^2))", 0};
    k.c5 = {0.5 * std::log(2.0 * k.c0.value * k.c3.value), "derived (1/2)log(2 c0 c3)", 0};
    k.C = {0.5 * std::log(k.c3.value * k.c3.value * k.c0.value / k.c1.value),
           "derived (1/2)log(c3^2 c0/c1)", 0};
    k.b1 = {0.5 * k.C.value + 0.25, "derived C/2 + 0.25", 0};

    k.B = {scan_quasi_lipschitz_B(run.axis.line, cfg.lipschitz_pairs, cfg.seed, 0.0, period),
           "quasi_lipschitz_scan", cfg.lipschitz_pairs};
    return run;
}

}
