#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "teich/foliation.hpp"
#include "teich/rng.hpp"
#include "teich/systole.hpp"
#include "teich/torus_model.hpp"

using namespace teich;

TEST_CASE("intersection number", "[foliation]") {
    CHECK(intersection(MeasuredFoliation(1, 0), MeasuredFoliation(0, 1)) == 1.0);
    CHECK(intersection(MeasuredFoliation(0.4, -1.7), MeasuredFoliation(0.4, -1.7)) == 0.0);
    CHECK(intersection(MeasuredFoliation(2, 1), MeasuredFoliation(3, 2)) == 1.0);

    // degree-1 homogeneity; exact for power-of-two scales
    Rng rng(21);
    for (int i = 0; i < 300; ++i) {
        const MeasuredFoliation f(rng.uniform(-2, 2), rng.uniform(0.1, 2));
        const MeasuredFoliation g(rng.uniform(-2, 2), rng.uniform(-2, -0.1));
        CHECK(intersection(f.scaled(4.0), g) == 4.0 * intersection(f, g));
        CHECK(intersection(f.scaled(0.5), g) == 0.5 * intersection(f, g));
        CHECK(intersection(f.scaled(3.0), g) == Approx(3.0 * intersection(f, g)).epsilon(1e-13));
        CHECK(intersection(f, g) == intersection(g, f));
    }
}

TEST_CASE("projective class folding", "[foliation]") {
    CHECK(projective_class(MeasuredFoliation(1, 0)).theta == 0.0);
    CHECK(projective_class(MeasuredFoliation(-2, 0)).theta == 0.0);
    CHECK(projective_class(MeasuredFoliation(0, 3)).theta == Approx(kPi / 2));
    Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        const MeasuredFoliation f(rng.uniform(-2, 2), rng.uniform(-2, 2) + 2.5);
        const double th = projective_class(f).theta;
        CHECK(th >= 0.0);
        CHECK(th < kPi);
        CHECK(projective_class(f.scaled(2.0)).theta == th);
    }
}

TEST_CASE("slope enumeration", "[foliation]") {
    auto as_set = [](const std::vector<SlopeCurve>& v) {
        std::set<std::pair<std::int64_t, std::int64_t>> s;
        for (const auto& c : v) s.insert({c.p, c.q});
        return s;
    };
    const auto d1 = as_set(slope_enumerate(1));
    CHECK(d1 == std::set<std::pair<std::int64_t, std::int64_t>>{{1, 0}, {0, 1}, {1, 1}, {-1, 1}});

    const auto d2 = as_set(slope_enumerate(2));
    CHECK(d2.count({2, 1}) == 1);
    CHECK(d2.count({1, 2}) == 1);
    CHECK(d2.count({-1, 2}) == 1);
    CHECK(d2.count({-2, 1}) == 1);
    CHECK(d2.count({2, 2}) == 0);

    // each class exactly once, deterministic order
    const auto v50a = slope_enumerate(50);
    const auto v50b = slope_enumerate(50);
    CHECK(v50a.size() == as_set(v50a).size());
    REQUIRE(v50a.size() == v50b.size());
    for (std::size_t i = 0; i < v50a.size(); ++i) CHECK(v50a[i] == v50b[i]);

    // density of coprime pairs: one representative per +- class, so the
    // count grows like (6/pi^2) * 2 n^2
    const double expected = (6.0 / (kPi * kPi)) * 2.0 * 50.0 * 50.0;
    CHECK(std::abs(double(v50a.size()) / expected - 1.0) <= 0.10);

    CHECK_THROWS_AS(slope_enumerate(0), std::domain_error);
}

TEST_CASE("systole by lattice reduction", "[foliation]") {
    const SystoleResult square = systole(TeichPoint(0, 1));
    CHECK(square.value == 1.0);
    CHECK(square.slope == SlopeCurve{1, 0});  // tie-break: smallest (q, p)

    const SystoleResult tall = systole(TeichPoint(0, 10));
    CHECK(tall.value == Approx(0.1).epsilon(1e-15));
    CHECK(tall.slope == SlopeCurve{1, 0});

    const SystoleResult hexa = systole(TeichPoint(0.5, std::sqrt(3.0) / 2.0));
    CHECK(hexa.value == Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("systole equals brute force over slopes", "[foliation][slow]") {
    const auto slopes = slope_enumerate(500);
    Rng rng(23);
    for (int i = 0; i < 10000; ++i) {
        const TeichPoint p(rng.uniform(-0.6, 0.6), std::exp(rng.uniform(std::log(0.05), std::log(20.0))));
        const SystoleResult s = systole(p);
        double best = kInf;
        for (const SlopeCurve& c : slopes) {
            const double u = double(c.p) + double(c.q) * p.x;
            const double v = double(c.q) * p.y;
            best = std::min(best, (u * u + v * v) / p.y);
        }
        REQUIRE(s.value == Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("thickness certificates", "[foliation]") {
    const Axis ax = axis_of(MappingClass(2, 1, 1, 1));
    const ThicknessCertificate cert = certify_axis(ax);
    CHECK(cert.epsilon > 0.0);
    CHECK(cert.epsilon == Approx(2.0 / std::sqrt(5.0)).epsilon(1e-9));
    for (const auto& s : cert.samples) CHECK(s.value >= cert.epsilon);
    CHECK(cert.covers(-100.0, 100.0));  // periodic extension

    // vertical ray into the cusp: systole decays like 1/Im tau
    const TeichGeodesic V =
        geodesic_from_qd(TeichPoint(0, 1), MeasuredFoliation(1, 0), 0.0, 5.0);
    const ThicknessCertificate cv = certify_precompact(V, 0.01);
    CHECK(cv.epsilon == Approx(std::exp(-10.0)).epsilon(1e-9));
    CHECK(cv.samples.back().value < cv.samples.front().value);
    CHECK_FALSE(cv.covers(0.0, 6.0));

    // single point
    const ThicknessCertificate c1 =
        certify_precompact(V.with_interval(1.0, 1.0), 0.01);
    REQUIRE(c1.samples.size() == 1);
    CHECK(c1.epsilon == Approx(systole(V.point_at(1.0)).value));

    CHECK_THROWS_AS(certify_precompact(geodesic_from_qd(TeichPoint(0, 1), MeasuredFoliation(1, 0)), 0.01),
                    std::invalid_argument);
}

TEST_CASE("length-intersection inequality", "[foliation]") {
    // equality on the basis pair at the square torus
    const TeichPoint sq(0, 1);
    CHECK(check_length_intersection(sq, MeasuredFoliation(1, 0), MeasuredFoliation(0, 1)));
    CHECK(extremal_length(sq, MeasuredFoliation(1, 0)) * extremal_length(sq, MeasuredFoliation(0, 1)) ==
          Approx(1.0));

    Rng rng(24);
    for (int i = 0; i < 100000; ++i) {
        const TeichPoint p(rng.uniform(-2, 2), std::exp(rng.uniform(-2.0, 2.0)));
        const MeasuredFoliation f(rng.uniform(-2, 2), rng.uniform(0.05, 2));
        const MeasuredFoliation g(rng.uniform(-2, 2), rng.uniform(-2, -0.05));
        REQUIRE(check_length_intersection(p, f, g));
        REQUIRE(check_length_intersection(p, f, f));
    }
}
