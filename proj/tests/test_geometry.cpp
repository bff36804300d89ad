#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "mfeit/errors.hpp"
#include "mfeit/geometry.hpp"

using namespace mfeit;

namespace {
constexpr double kPi = 3.141592653589793238462643383279;

StarShape disk(double r, Vec2 c = {0, 0}) {
    StarShape s;
    s.center = c;
    s.N = 0;
    s.coeffs = {r};
    return s;
}
}  // namespace

TEST_CASE("unit circle: nodes, curvature, perimeter, area") {
    const Curve c = make_star_curve(disk(1.0), 64);
    REQUIRE(c.nodes.size() == 64);
    for (std::size_t j = 0; j < c.nodes.size(); ++j) {
        CHECK(std::hypot(c.nodes[j].x, c.nodes[j].y) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(c.curvature[j] == doctest::Approx(1.0).epsilon(1e-12));
        // outward normal on a star curve points away from the center
        CHECK(c.normals[j].x * c.nodes[j].x + c.normals[j].y * c.nodes[j].y > 0.0);
        // nu = R_{-pi/2} T
        CHECK(c.normals[j].x == doctest::Approx(c.tangents[j].y).epsilon(1e-12));
        CHECK(c.normals[j].y == doctest::Approx(-c.tangents[j].x).epsilon(1e-12));
    }
    CHECK(c.perimeter() == doctest::Approx(2 * kPi).epsilon(1e-12));
    CHECK(c.area() == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("offset half-disk (the descent's initial guess)") {
    const Curve c = make_star_curve(disk(0.5, {1.0, 0.0}), 64);
    for (const auto& p : c.nodes)
        CHECK(std::hypot(p.x - 1.0, p.y) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(c.perimeter() == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("curvature matches the closed-form radial formula") {
    StarShape s;
    s.center = {0, 0};
    s.N = 1;
    s.coeffs = {0.0, 1.0, 0.3};  // r = 1 + 0.3 cos(theta)
    const Curve c = make_star_curve(s, 128);
    // theta = 0: r = 1.3, r' = 0, r'' = -0.3
    const double r = 1.3, rp = 0.0, rpp = -0.3;
    const double expect = (r * r + 2 * rp * rp - r * rpp) / std::pow(r * r + rp * rp, 1.5);
    CHECK(c.curvature[0] == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("spectral convergence of perimeter for analytic radius") {
    StarShape s;
    s.center = {0, 0};
    s.N = 3;
    s.coeffs = {0.0, 0.1, 0.0, 1.0, 0.2, 0.0, 0.1};
    const Curve fine = make_star_curve(s, 512);
    const double ref = fine.perimeter();
    const double e32 = std::abs(make_star_curve(s, 32).perimeter() - ref);
    const double e64 = std::abs(make_star_curve(s, 64).perimeter() - ref);
    CHECK(e64 * 10 <= e32);  // at least 10x per doubling once resolved
}

TEST_CASE("non-positive radius is rejected with the offending angle") {
    StarShape s;
    s.center = {0, 0};
    s.N = 1;
    s.coeffs = {0.0, 0.5, -1.0};  // r(0) = -0.5
    CHECK_THROWS_AS(make_star_curve(s, 64), NonPositiveRadius);
}

TEST_CASE("symmetric difference: identity and analytic lens oracle") {
    const Curve a = make_star_curve(disk(1.0), 256);
    CHECK(symmetric_difference_ratio(a, a) == doctest::Approx(0.0));

    const Curve b = make_star_curve(disk(1.0, {0.5, 0.0}), 256);
    // two unit disks, centers d=0.5 apart: lens area = 2 r^2 cos^-1(d/2r) - (d/2) sqrt(4r^2-d^2)
    const double d = 0.5;
    const double lens = 2 * std::acos(d / 2) - (d / 2) * std::sqrt(4 - d * d);
    const double expect = 2 * (kPi - lens) / kPi;
    CHECK(symmetric_difference_ratio(a, b) == doctest::Approx(expect).epsilon(1e-3));
}

TEST_CASE("symmetric difference rejects degenerate shapes") {
    const Curve a = make_star_curve(disk(1.0), 128);
    const Curve tiny = make_star_curve(disk(1e-5), 128);
    CHECK_THROWS_AS(symmetric_difference_ratio(tiny, a), DegenerateShape);
}

TEST_CASE("is_inside with margin") {
    const Curve dom = make_ellipse_curve(4.0, 3.0, 256);
    CHECK(is_inside(dom, make_star_curve(disk(1.0), 64), 0.5));
    CHECK_FALSE(is_inside(dom, make_star_curve(disk(3.6), 64), 0.5));
}

TEST_CASE("shape text round trip") {
    StarShape s;
    s.center = {0.6, 0.4};
    s.N = 2;
    s.coeffs = {0.01, -0.2, 1.0, 0.3, 0.05};
    std::stringstream ss;
    s.save(ss);
    const StarShape t = StarShape::load(ss);
    CHECK(t.center.x == s.center.x);
    CHECK(t.center.y == s.center.y);
    REQUIRE(t.N == s.N);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) CHECK(t.coeffs[i] == s.coeffs[i]);
}

TEST_CASE("fourier fit reproduces an ellipse radius function") {
    const double a = 1.5, b = 1.0;
    auto radius = [&](double th) {
        const double c = std::cos(th), s2 = std::sin(th);
        return a * b / std::sqrt(b * b * c * c + a * a * s2 * s2);
    };
    const StarShape fit = fit_star_shape(radius, {0, 0}, 8);
    for (double th = 0.05; th < 2 * kPi; th += 0.37)
        CHECK(fit.radius(th) == doctest::Approx(radius(th)).epsilon(2e-3));
}
