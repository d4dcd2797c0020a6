#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace teich {

inline constexpr double kPi = 3.14159265358979323846;

// Measured foliation on the torus: a transverse-measure-weighted direction,
// i.e. a nonzero real pair. Scaling by s > 0 scales intersection numbers by s
// and extremal lengths by s^2.
struct MeasuredFoliation {
    double a;
    double b;

    MeasuredFoliation(double a_, double b_) : a(a_), b(b_) {
        if (!std::isfinite(a) || !std::isfinite(b))
            throw std::domain_error("MeasuredFoliation: coordinates must be finite");
        if (a == 0.0 && b == 0.0)
            throw std::domain_error("MeasuredFoliation: the zero foliation is excluded");
    }

    MeasuredFoliation scaled(double s) const { return MeasuredFoliation(a * s, b * s); }
};

// Geometric intersection number, |ad - bc|. Symmetric, degree-1 homogeneous
// in each argument.
inline double intersection(const MeasuredFoliation& f, const MeasuredFoliation& g) {
    return std::abs(f.a * g.b - f.b * g.a);
}

// Projective class of a foliation: the angle of (a,b) folded onto [0, pi).
struct ProjectiveClass {
    double theta = 0.0;

    MeasuredFoliation representative() const {
        return MeasuredFoliation(std::cos(theta), std::sin(theta));
    }
};

inline ProjectiveClass projective_class(const MeasuredFoliation& f) {
    double th = std::atan2(f.b, f.a);
    if (th < 0.0) th += kPi;
    if (th >= kPi) th -= kPi;
    return ProjectiveClass{th};
}

// Homotopy class of a simple closed curve: a primitive slope, normalized so
// q > 0, or q == 0 and p == 1.
struct SlopeCurve {
    std::int64_t p = 1;
    std::int64_t q = 0;

    MeasuredFoliation to_foliation() const {
        return MeasuredFoliation(static_cast<double>(p), static_cast<double>(q));
    }
    bool operator==(const SlopeCurve&) const = default;
};

inline SlopeCurve make_slope(std::int64_t p, std::int64_t q) {
    if (p == 0 && q == 0) throw std::domain_error("SlopeCurve: (0,0) is not a slope");
    std::int64_t g = std::gcd(p < 0 ? -p : p, q < 0 ? -q : q);
    p /= g;
    q /= g;
    if (q < 0 || (q == 0 && p < 0)) { p = -p; q = -q; }
    return SlopeCurve{p, q};
}

// Deterministic tie-break key used by the systole: lexicographic on (q, p).
inline bool slope_key_less(const SlopeCurve& l, const SlopeCurve& r) {
    if (l.q != r.q) return l.q < r.q;
    return l.p < r.p;
}

// All primitive slopes with |p|, |q| <= depth, each class exactly once,
// ordered by (q, p).
inline std::vector<SlopeCurve> slope_enumerate(int depth) {
    if (depth < 1) throw std::domain_error("slope_enumerate: depth must be >= 1");
    std::vector<SlopeCurve> out;
    out.reserve(static_cast<std::size_t>(1.3 * 2.0 * depth * double(depth)));
    out.push_back(SlopeCurve{1, 0});
    for (std::int64_t q = 1; q <= depth; ++q)
        for (std::int64_t p = -depth; p <= depth; ++p)
            if (std::gcd(p < 0 ? -p : p, q) == 1) out.push_back(SlopeCurve{p, q});
    return out;
}

}
