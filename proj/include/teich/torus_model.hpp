#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

#include "teich/foliation.hpp"

namespace teich {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Marked conformal structure on the torus, in upper half-plane coordinates.
// No quotient by the mapping-class group: points compare coordinatewise.
struct TeichPoint {
    double x;
    double y;

    TeichPoint(double x_, double y_) : x(x_), y(y_) {
        if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0))
            throw std::domain_error("TeichPoint: require finite coordinates with y > 0");
    }

    bool operator==(const TeichPoint&) const = default;
};

// Extremal length of the class (a,b) at tau = x + iy:  |a + b*tau|^2 / y.
inline double extremal_length(const TeichPoint& p, const MeasuredFoliation& f) {
    const double u = f.a + f.b * p.x;
    const double v = f.b * p.y;
    return (u * u + v * v) / p.y;
}

// tr(M_p^{-1} M_q) - 2, where M_p is the unit-determinant quadratic form
// realizing f -> E_p(f). Zero iff p == q.
inline double form_trace_gap(const TeichPoint& p, const TeichPoint& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return (dx * dx + dy * dy) / (p.y * q.y);
}

// Largest generalized eigenvalue of the pair (M_q, M_p): the supremum over
// projective classes of E_q(f)/E_p(f).
inline double dilatation(const TeichPoint& p, const TeichPoint& q) {
    const double s = form_trace_gap(p, q);
    return 1.0 + 0.5 * (s + std::sqrt(s * (s + 4.0)));
}

// (1/2) log dilatation, evaluated through asinh for stability near zero.
inline double teich_distance(const TeichPoint& p, const TeichPoint& q) {
    const double s = form_trace_gap(p, q);
    return std::asinh(0.5 * std::sqrt(s));
}

namespace detail {

// Null vector of the singular symmetric matrix M_q - lam * M_p.
inline MeasuredFoliation pencil_null_vector(const TeichPoint& p, const TeichPoint& q,
                                            double lam) {
    const double p00 = 1.0 / p.y, p01 = p.x / p.y, p11 = (p.x * p.x + p.y * p.y) / p.y;
    const double q00 = 1.0 / q.y, q01 = q.x / q.y, q11 = (q.x * q.x + q.y * q.y) / q.y;
    const double a00 = q00 - lam * p00;
    const double a01 = q01 - lam * p01;
    const double a11 = q11 - lam * p11;
    // pick the better-conditioned row
    if (std::abs(a00) + std::abs(a01) >= std::abs(a01) + std::abs(a11))
        return MeasuredFoliation(-a01, a00);
    return MeasuredFoliation(-a11, a01);
}

}  // namespace detail

// Direction whose extremal-length ratio E_q/E_p attains the supremum
// (the dilatation). Undefined when p == q.
inline MeasuredFoliation ratio_maximizer(const TeichPoint& p, const TeichPoint& q) {
    if (p == q) throw std::domain_error("ratio_maximizer: points coincide");
    return detail::pencil_null_vector(p, q, dilatation(p, q));
}

// Direction whose ratio attains the infimum 1/dilatation. Along the geodesic
// from p to q this is the contracting (horizontal) class.
inline MeasuredFoliation ratio_minimizer(const TeichPoint& p, const TeichPoint& q) {
    if (p == q) throw std::domain_error("ratio_minimizer: points coincide");
    return detail::pencil_null_vector(p, q, 1.0 / dilatation(p, q));
}

// Horizontal/vertical foliation pair of a unit-mass quadratic differential.
// At the base point both have extremal length equal to the mass.
struct QuadraticDifferentialData {
    MeasuredFoliation phi_h;
    MeasuredFoliation phi_v;
    double mass = 1.0;
};

// Teichmuller geodesic: base point L(0), unit-mass differential, and a
// parameter interval [a,b] in arclength units (either end may be infinite).
// E_{L(t)}(phi_h) = e^{-2t}, E_{L(t)}(phi_v) = e^{+2t}, d(L(s),L(t)) = |s-t|.
struct TeichGeodesic {
    TeichPoint base;
    QuadraticDifferentialData qd;
    double a = -kInf;
    double b = kInf;

    // lattice basis (images of 1 and tau) rotated so the phi_h holonomy is
    // real positive; the Teichmuller flow is diagonal in this frame
    double w1x = 1.0, w1y = 0.0, w2x = 0.0, w2y = 1.0;

    TeichPoint point_at(double t) const {
        const double em = std::exp(-t), ep = std::exp(t);
        const double u1x = em * w1x, u1y = ep * w1y;
        const double u2x = em * w2x, u2y = ep * w2y;
        const double den = u1x * u1x + u1y * u1y;
        return TeichPoint((u2x * u1x + u2y * u1y) / den,
                          (u2y * u1x - u2x * u1y) / den);
    }

    // extremal lengths of the defining pair along the line (exact laws)
    double horizontal_length(double t) const { return std::exp(-2.0 * t); }
    double vertical_length(double t) const { return std::exp(2.0 * t); }

    // Euclidean tangent angle of t -> point_at(t); hyperbolic angle equals
    // Euclidean angle in this conformal model. tau'(t) = 2i * Area / u1(t)^2.
    double tangent_angle_at(double t) const {
        const double u1x = std::exp(-t) * w1x, u1y = std::exp(t) * w1y;
        return std::atan2(u1x * u1x - u1y * u1y, 2.0 * u1x * u1y);
    }

    bool finite_interval() const { return std::isfinite(a) && std::isfinite(b); }
    double length() const { return b - a; }

    TeichGeodesic with_interval(double lo, double hi) const {
        if (!(lo <= hi)) throw std::invalid_argument("with_interval: need lo <= hi");
        TeichGeodesic g = *this;
        g.a = lo;
        g.b = hi;
        return g;
    }
};

// Geodesic through `base` whose horizontal foliation is proportional to
// `direction`, with both foliations scaled to extremal length 1 at the base.
inline TeichGeodesic geodesic_from_qd(const TeichPoint& base,
                                      const MeasuredFoliation& direction,
                                      double a = -kInf, double b = kInf) {
    if (!(a <= b)) throw std::invalid_argument("geodesic_from_qd: need a <= b");
    const double scale = 1.0 / std::sqrt(extremal_length(base, direction));
    MeasuredFoliation phi_h = direction.scaled(scale);

    // holonomy of phi_h at the base; |h|^2 == base.y after normalization
    const double hx = phi_h.a + phi_h.b * base.x;
    const double hy = phi_h.b * base.y;
    const double inv = 1.0 / std::sqrt(hx * hx + hy * hy);
    const double rx = hx * inv, ry = -hy * inv;  // rotation conj(h)/|h|

    // vertical foliation: holonomy i*h, solved back to lattice coordinates
    const double vx = -hy, vy = hx;
    const double d = vy / base.y;
    const double c = vx - d * base.x;
    MeasuredFoliation phi_v(c, d);

    TeichGeodesic g{base, QuadraticDifferentialData{phi_h, phi_v, 1.0}, a, b};
    g.w1x = rx;
    g.w1y = ry;
    g.w2x = rx * base.x - ry * base.y;
    g.w2y = rx * base.y + ry * base.x;
    return g;
}

// Unique geodesic with L(0) = p and L(d) = q, d = teich_distance(p, q).
inline TeichGeodesic geodesic_between(const TeichPoint& p, const TeichPoint& q) {
    if (p == q) throw std::domain_error("geodesic_between: endpoints coincide");
    const double d = teich_distance(p, q);
    return geodesic_from_qd(p, ratio_minimizer(p, q), 0.0, d);
}

// Mapping class of the torus: an integer matrix of determinant +1.
struct MappingClass {
    std::int64_t a, b, c, d;

    MappingClass(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_)
        : a(a_), b(b_), c(c_), d(d_) {
        if (a * d - b * c != 1)
            throw std::domain_error("MappingClass: determinant must be +1");
    }

    std::int64_t trace() const { return a + d; }
    MappingClass inverse() const { return MappingClass(d, -b, -c, a); }
};

// Action on Teichmuller space: tau -> (a tau + b) / (c tau + d).
inline TeichPoint apply_mapping_class(const MappingClass& m, const TeichPoint& p) {
    const double a = static_cast<double>(m.a), b = static_cast<double>(m.b);
    const double c = static_cast<double>(m.c), d = static_cast<double>(m.d);
    const double cd = c * p.x + d;
    const double cy = c * p.y;
    const double den = cd * cd + cy * cy;
    const double nx = (a * p.x + b) * cd + a * c * p.y * p.y;
    return TeichPoint(nx / den, p.y / den);
}

// Compatible action on foliations; chosen so extremal length is equivariant:
// E_{m.p}(m.f) = E_p(f).
inline MeasuredFoliation apply_mapping_class(const MappingClass& m,
                                             const MeasuredFoliation& f) {
    return MeasuredFoliation(m.a * f.a - m.b * f.b, -m.c * f.a + m.d * f.b);
}

// Invariant axis of a hyperbolic (pseudo-Anosov) mapping class, oriented so
// the class translates by +t0 = log(spectral radius).
struct Axis {
    TeichGeodesic line;
    double translation_length;
};

inline Axis axis_of(const MappingClass& m) {
    const double tr = static_cast<double>(m.trace());
    if (!(std::abs(tr) > 2.0))
        throw std::domain_error("axis_of: |trace| <= 2, not pseudo-Anosov");
    const double sq = std::sqrt(tr * tr - 4.0);
    const double t0 = std::log((std::abs(tr) + sq) / 2.0);
    // eigenvalue of largest modulus and its Mobius fixed points
    const double mu_att = (tr > 0.0) ? (tr + sq) / 2.0 : (tr - sq) / 2.0;
    const double mu_rep = (tr > 0.0) ? (tr - sq) / 2.0 : (tr + sq) / 2.0;
    const double c = static_cast<double>(m.c);  // c != 0 whenever |trace| > 2
    const double p_att = (mu_att - m.d) / c;
    const double p_rep = (mu_rep - m.d) / c;

    const double center = 0.5 * (p_att + p_rep);
    const double radius = 0.5 * std::abs(p_att - p_rep);
    TeichPoint base(center, radius);
    MeasuredFoliation dir_h(-p_att, 1.0);  // class vanishing at the attracting end
    return Axis{geodesic_from_qd(base, dir_h), t0};
}

// Geodesic shot from p at (Euclidean = hyperbolic) angle psi, parametrized by
// arclength on [0, len].
inline TeichGeodesic shoot(const TeichPoint& p, double psi, double len = kInf) {
    const double cs = std::cos(psi), sn = std::sin(psi);
    if (std::abs(cs) < 1e-14) {
        if (sn > 0.0) return geodesic_from_qd(p, MeasuredFoliation(1.0, 0.0), 0.0, len);
        return geodesic_from_qd(p, MeasuredFoliation(-p.x, 1.0), 0.0, len);
    }
    const double center = p.x + p.y * (sn / cs);
    const double radius = p.y / std::abs(cs);
    const double endpoint = center + (cs > 0.0 ? radius : -radius);
    return geodesic_from_qd(p, MeasuredFoliation(-endpoint, 1.0), 0.0, len);
}

}
