#include <catch2/catch.hpp>

#include <cmath>

#include "oracles.hpp"
#include "teich/projection.hpp"
#include "teich/rng.hpp"
#include "teich/systole.hpp"
#include "teich/torus_model.hpp"

using namespace teich;

namespace {

TeichPoint random_thick_point(Rng& rng) {
    return TeichPoint(rng.uniform(-1.5, 1.5), std::exp(rng.uniform(-0.7, 0.7)));
}

MeasuredFoliation random_class(Rng& rng) {
    const double th = rng.uniform(0.0, kPi);
    return MeasuredFoliation(std::cos(th), std::sin(th));
}

double slope_sup_ratio(const TeichPoint& p, const TeichPoint& q, int depth) {
    REQUIRE(depth == 200);  // the cached table is for the nominal depth
    return oracles::slope_sup_ratio(p, q, oracles::depth200_slopes());
}

}  // namespace

TEST_CASE("extremal length closed form", "[torus]") {
    CHECK(extremal_length(TeichPoint(0, 1), MeasuredFoliation(1, 0)) == 1.0);
    CHECK(extremal_length(TeichPoint(0, 2), MeasuredFoliation(0, 1)) == 2.0);

    // quadratic scaling
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const TeichPoint p = random_thick_point(rng);
        const MeasuredFoliation f(rng.uniform(-2, 2), rng.uniform(0.1, 2));
        CHECK(extremal_length(p, f.scaled(2.0)) == Approx(4.0 * extremal_length(p, f)).epsilon(1e-14));
    }

    CHECK_THROWS_AS(MeasuredFoliation(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(TeichPoint(0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(TeichPoint(0.0, 0.0), std::domain_error);
}

TEST_CASE("dilatation against the slope oracle", "[torus][oracle]") {
    CHECK(dilatation(TeichPoint(0.3, 0.8), TeichPoint(0.3, 0.8)) == 1.0);

    // frozen oracle value for the standard stretch
    CHECK(slope_sup_ratio(TeichPoint(0, 1), TeichPoint(0, 2), 200) == 2.0);
    CHECK(dilatation(TeichPoint(0, 1), TeichPoint(0, 2)) == Approx(2.0).margin(1e-14));

    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const TeichPoint p = random_thick_point(rng);
        const TeichGeodesic ray = shoot(p, rng.uniform(0.0, 2 * kPi), 3.0);
        const TeichPoint q = ray.point_at(rng.uniform(0.0, 3.0));
        CHECK(dilatation(p, q) == Approx(dilatation(q, p)).epsilon(1e-12));
        const double oracle = slope_sup_ratio(p, q, 200);
        CHECK(0.5 * std::log(oracle) == Approx(teich_distance(p, q)).margin(1e-6));
    }
}

TEST_CASE("distance metric axioms", "[torus]") {
    const TeichPoint a(0, 1), b(0, 2), c(1, 1);
    CHECK(teich_distance(a, a) == 0.0);
    CHECK(teich_distance(a, b) == Approx(0.5 * std::log(2.0)).margin(1e-15));
    CHECK(teich_distance(c, a) == teich_distance(a, c));

    Rng rng(13);
    for (int i = 0; i < 10000; ++i) {
        const TeichPoint p = random_thick_point(rng);
        const TeichPoint q = random_thick_point(rng);
        const TeichPoint r = random_thick_point(rng);
        CHECK(teich_distance(p, q) == teich_distance(q, p));
        CHECK(teich_distance(p, r) <= teich_distance(p, q) + teich_distance(q, r) + 1e-10);
        CHECK(0.5 * std::log(dilatation(p, q)) ==
              Approx(teich_distance(p, q)).margin(1e-12).epsilon(1e-12));
    }
}

TEST_CASE("geodesic laws", "[torus]") {
    // the vertical-axis model case
    const TeichGeodesic V = geodesic_from_qd(TeichPoint(0, 1), MeasuredFoliation(1, 0));
    const TeichPoint p = V.point_at(0.35);
    CHECK(p.x == Approx(0.0).margin(1e-15));
    CHECK(p.y == Approx(std::exp(0.7)).epsilon(1e-14));
    CHECK(V.qd.phi_v.a == Approx(0.0).margin(1e-15));
    CHECK(V.qd.phi_v.b == Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(geodesic_from_qd(TeichPoint(0, 1), MeasuredFoliation(1, 0), 2.0, 1.0),
                    std::invalid_argument);

    Rng rng(14);
    for (int i = 0; i < 1000; ++i) {
        const TeichPoint base = random_thick_point(rng);
        const MeasuredFoliation dir(rng.uniform(-2, 2), rng.uniform(-2, 2) + 2.5);
        const TeichGeodesic G = geodesic_from_qd(base, dir);
        CHECK(extremal_length(base, G.qd.phi_h) == Approx(1.0).epsilon(1e-12));
        CHECK(extremal_length(base, G.qd.phi_v) == Approx(1.0).epsilon(1e-12));
        CHECK(intersection(G.qd.phi_h, G.qd.phi_v) > 0.0);

        const double t = rng.uniform(-5.0, 5.0);
        const double s = rng.uniform(-5.0, 5.0);
        CHECK(extremal_length(G.point_at(t), G.qd.phi_h) ==
              Approx(std::exp(-2.0 * t)).epsilon(1e-10));
        CHECK(extremal_length(G.point_at(t), G.qd.phi_v) ==
              Approx(std::exp(2.0 * t)).epsilon(1e-10));
        CHECK(teich_distance(G.point_at(s), G.point_at(t)) ==
              Approx(std::abs(s - t)).epsilon(1e-10).margin(1e-12));
    }
}

TEST_CASE("geodesic between two points", "[torus]") {
    const TeichPoint a(0, 1);
    CHECK_THROWS_AS(geodesic_between(a, a), std::domain_error);

    // (0,1) -> (0,e^2) is the unit-speed vertical flow
    const TeichGeodesic V = geodesic_between(a, TeichPoint(0, std::exp(2.0)));
    CHECK(V.b == Approx(1.0).epsilon(1e-12));
    const TeichPoint mid = V.point_at(0.5);
    CHECK(mid.y == Approx(std::exp(1.0)).epsilon(1e-10));

    Rng rng(15);
    for (int i = 0; i < 500; ++i) {
        const TeichPoint p = random_thick_point(rng);
        const TeichPoint q = random_thick_point(rng);
        if (p == q) continue;
        const double d = teich_distance(p, q);
        const TeichGeodesic G = geodesic_between(p, q);
        const TeichPoint end = G.point_at(d);
        CHECK(end.x == Approx(q.x).margin(1e-8));
        CHECK(end.y == Approx(q.y).margin(1e-8));
        const TeichPoint half = G.point_at(0.5 * d);
        CHECK(teich_distance(p, half) == Approx(0.5 * d).margin(1e-10));
    }
}

TEST_CASE("mapping class action", "[torus]") {
    CHECK_THROWS_AS(MappingClass(1, 1, 1, 1), std::domain_error);
    const MappingClass id(1, 0, 0, 1);
    const TeichPoint p(0.37, 1.21);
    CHECK(apply_mapping_class(id, p) == p);

    Rng rng(16);
    const MappingClass mats[] = {MappingClass(2, 1, 1, 1), MappingClass(1, 1, 0, 1),
                                 MappingClass(0, -1, 1, 0), MappingClass(3, -2, -4, 3)};
    for (int i = 0; i < 400; ++i) {
        const MappingClass& m = mats[i % 4];
        const TeichPoint x = random_thick_point(rng);
        const TeichPoint y = random_thick_point(rng);
        const MeasuredFoliation f = random_class(rng);
        CHECK(teich_distance(apply_mapping_class(m, x), apply_mapping_class(m, y)) ==
              Approx(teich_distance(x, y)).epsilon(1e-10).margin(1e-12));
        CHECK(extremal_length(apply_mapping_class(m, x), apply_mapping_class(m, f)) ==
              Approx(extremal_length(x, f)).epsilon(1e-10));
    }
}

TEST_CASE("axis of a hyperbolic mapping class", "[torus]") {
    CHECK_THROWS_AS(axis_of(MappingClass(1, 1, 0, 1)), std::domain_error);

    const MappingClass m(2, 1, 1, 1);
    const Axis ax = axis_of(m);
    CHECK(ax.translation_length ==
          Approx(std::log((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-14));

    // the axis endpoints are the fixed directions of the foliation action
    const MeasuredFoliation h = ax.line.qd.phi_h;
    const MeasuredFoliation h_image = apply_mapping_class(m, h);
    CHECK(intersection(h, h_image) == Approx(0.0).margin(1e-12));
    const MeasuredFoliation v = ax.line.qd.phi_v;
    CHECK(intersection(v, apply_mapping_class(m, v)) == Approx(0.0).margin(1e-12));

    // translation by exactly t0 along the axis
    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
        const double t = rng.uniform(-3.0, 3.0);
        const TeichPoint x = ax.line.point_at(t);
        const TeichPoint mx = apply_mapping_class(m, x);
        CHECK(teich_distance(mx, ax.line.point_at(t + ax.translation_length)) ==
              Approx(0.0).margin(1e-8));
        CHECK(teich_distance(x, mx) == Approx(ax.translation_length).margin(1e-8));
    }

    // inverse shares the axis with equal translation length
    const Axis back = axis_of(m.inverse());
    CHECK(back.translation_length == Approx(ax.translation_length).epsilon(1e-14));
    CHECK(distance_to_geodesic(back.line.point_at(0.7), ax.line) == Approx(0.0).margin(1e-9));
}

TEST_CASE("exact sup of ratios equals the distance link", "[torus][oracle]") {
    // exp(2 d(sigma, L(t))) is the supremum of R_t over classes
    Rng rng(18);
    const TeichGeodesic G = axis_of(MappingClass(2, 1, 1, 1)).line;
    for (int i = 0; i < 100; ++i) {
        const TeichPoint sigma = random_thick_point(rng);
        const double t = rng.uniform(-1.0, 1.0);
        const double sup = slope_sup_ratio(sigma, G.point_at(t), 200);
        CHECK(0.5 * std::log(sup) ==
              Approx(teich_distance(sigma, G.point_at(t))).margin(1e-6));
    }
}
