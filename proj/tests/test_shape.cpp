#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "mfeit/errors.hpp"
#include "mfeit/forward.hpp"
#include "mfeit/shape_reconstruction.hpp"

using namespace mfeit;

namespace {

StarShape disk(double r, Vec2 c = {0, 0}) {
    StarShape s(c, 0);
    s.coeffs[0] = r;
    return s;
}

Eigen::VectorXd axis_flux(const Curve& c, int which) {
    Eigen::VectorXd f(static_cast<int>(c.size()));
    for (int j = 0; j < f.size(); ++j)
        f[j] = which == 0 ? c.normals[static_cast<std::size_t>(j)].x
                          : c.normals[static_cast<std::size_t>(j)].y;
    return f;
}

// Cauchy data from the perfect-conductor solve for `target`, same node count
// and grid as the descent uses (deliberate inverse crime for unit tests).
CauchyData pc_data(const Curve& domain, const StarShape& target, int n_nodes, int currents) {
    const ForwardSolver fs(domain, make_star_curve(target, n_nodes));
    CauchyData d;
    d.domain = domain;
    for (int i = 0; i < currents; ++i) {
        const Eigen::VectorXd f = axis_flux(domain, i);
        d.neumann.push_back(f);
        d.dirichlet.push_back(fs.solvePerfectConductor(f).trace.real());
    }
    return d;
}

}  // namespace

TEST_CASE("objective vanishes at the data-generating shape and not elsewhere") {
    const Curve dom = make_ellipse_curve(4.0, 3.0, 96);
    StarShape target(Vec2{0.6, 0.4}, 2);
    target.coeff(0) = 1.2;
    target.coeff(1) = 0.2;
    target.coeff(-2) = 0.1;
    const CauchyData data = pc_data(dom, target, 96, 2);
    CHECK(objective_J(target, data, 96) < 1e-18);
    CHECK(objective_J(disk(0.5), data, 96) > 1e-3);
}

TEST_CASE("finite differences match shape_gradient to 1e-3 on all components") {
    const Curve dom = make_ellipse_curve(4.0, 3.0, 96);
    StarShape target(Vec2{0.6, 0.4}, 2);
    target.coeff(0) = 1.2;
    target.coeff(1) = 0.2;
    target.coeff(-2) = 0.1;
    const CauchyData data = pc_data(dom, target, 96, 2);

    StarShape cand(Vec2{0.3, 0.1}, 2);
    cand.coeff(0) = 0.8;
    cand.coeff(1) = -0.15;
    cand.coeff(-1) = 0.1;
    cand.coeff(2) = 0.05;
    const int n = 96;
    const Eigen::VectorXd g = shape_gradient(cand, data, n);
    REQUIRE(g.size() == 2 + 5);

    auto j_at = [&](int q, double h) {
        StarShape s = cand;
        if (q == 0)
            s.center.x += h;
        else if (q == 1)
            s.center.y += h;
        else
            s.coeffs[static_cast<std::size_t>(q - 2)] += h;
        return objective_J(s, data, n);
    };
    const double h = 1e-6;
    for (int q = 0; q < g.size(); ++q) {
        const double fd = (j_at(q, h) - j_at(q, -h)) / (2 * h);
        CHECK(std::abs(fd - g[q]) <= 1e-3 * (1.0 + std::abs(fd)));
    }
}

TEST_CASE("radial gradient sign on concentric disks") {
    const Curve dom = make_ellipse_curve(3.0, 3.0, 96);
    const CauchyData data = pc_data(dom, disk(1.0), 96, 1);
    // growing a too-small disk must decrease J, shrinking a too-large one too
    const Eigen::VectorXd g_small = shape_gradient(disk(0.6), data, 96);
    const Eigen::VectorXd g_big = shape_gradient(disk(1.5), data, 96);
    CHECK(g_small[2] < 0.0);
    CHECK(g_big[2] > 0.0);
    // centered configuration: center gradient vanishes by symmetry
    CHECK(std::abs(g_small[0]) < 1e-8 * std::abs(g_small[2]) + 1e-12);
    CHECK(std::abs(g_small[1]) < 1e-8 * std::abs(g_small[2]) + 1e-12);
}

TEST_CASE("Neumann-to-Dirichlet reciprocity of the perfect-conductor map") {
    // <f1, u2> = <f2, u1> for any mean-zero fluxes (self-adjointness of the map)
    const Curve dom = make_ellipse_curve(3.5, 2.5, 128);
    const ForwardSolver fs(dom, make_star_curve(disk(1.0, {0.4, -0.2}), 128));
    const Eigen::VectorXd f1 = axis_flux(dom, 0);
    const Eigen::VectorXd f2 = axis_flux(dom, 0) + axis_flux(dom, 1);  // keeps <f1,u2> away from zero
    const Eigen::VectorXd u1 = fs.solvePerfectConductor(f1).trace.real();
    const Eigen::VectorXd u2 = fs.solvePerfectConductor(f2).trace.real();
    Eigen::Map<const Eigen::VectorXd> w(dom.weights.data(), 128);
    const double a = (f1.array() * u2.array() * w.array()).sum();
    const double b = (f2.array() * u1.array() * w.array()).sum();
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
    CHECK(std::abs(a) > 1e-6);  // pairing is not trivially zero
}

TEST_CASE("descent from a disk recovers an off-center perturbed target") {
    const Curve dom = make_ellipse_curve(4.0, 3.0, 128);
    StarShape target(Vec2{0.6, 0.4}, 2);
    target.coeff(0) = 1.2;
    target.coeff(1) = 0.2;
    target.coeff(-2) = 0.1;
    const CauchyData data = pc_data(dom, target, 128, 2);

    ShapeDescentSettings s;
    s.n_fourier = 4;
    s.max_iter = 300;
    s.j_tol = 1e-7;
    s.n_nodes = 128;
    const ShapeDescentResult r = run_shape_descent(disk(0.5), data, s, &target);

    // accepted J history is non-increasing
    for (std::size_t m = 1; m < r.j_history.size(); ++m)
        CHECK(r.j_history[m] <= r.j_history[m - 1] + 1e-15);
    CHECK(r.j_history.back() < 1e-5);
    CHECK(r.symdiff_history.back() < 0.05);
    // accepted iterates stay admissible
    CHECK(r.shape.minRadius() > 0.0);
    CHECK(is_inside(dom, make_star_curve(r.shape, 256), s.delta0));
    // step sizes never exceed alpha0
    for (double a : r.alpha_history) CHECK(a <= s.alpha0 + 1e-15);
}

TEST_CASE("target equal to initial shape terminates immediately") {
    const Curve dom = make_ellipse_curve(4.0, 3.0, 96);
    const StarShape target = disk(1.0, {0.5, 0.0});
    const CauchyData data = pc_data(dom, target, 96, 1);
    ShapeDescentSettings s;
    s.n_fourier = 3;
    s.n_nodes = 96;
    const ShapeDescentResult r = run_shape_descent(target, data, s);
    CHECK(r.converged);
    CHECK(r.iterations == 0);
    CHECK(r.j_history.front() < 1e-12);
}

TEST_CASE("two currents beat either single current") {
    const Curve dom = make_ellipse_curve(4.0, 3.0, 96);
    StarShape target(Vec2{0.6, 0.4}, 2);
    target.coeff(0) = 1.2;
    target.coeff(1) = 0.25;
    const CauchyData both = pc_data(dom, target, 96, 2);

    ShapeDescentSettings s;
    s.n_fourier = 3;
    s.max_iter = 120;
    s.j_tol = 0.0;  // run the full budget for a fair comparison
    s.n_nodes = 96;

    auto final_sd = [&](const CauchyData& d) {
        const ShapeDescentResult r = run_shape_descent(disk(0.5), d, s, &target);
        return r.symdiff_history.back();
    };
    CauchyData only1 = both, only2 = both;
    only1.neumann.resize(1);
    only1.dirichlet.resize(1);
    only2.neumann.erase(only2.neumann.begin());
    only2.dirichlet.erase(only2.dirichlet.begin());
    const double sd_both = final_sd(both);
    const double sd_one = std::min(final_sd(only1), final_sd(only2));
    CHECK(sd_both <= sd_one + 0.02);
}

TEST_CASE("validation rejects malformed Cauchy data") {
    CauchyData d;
    d.domain = make_ellipse_curve(4.0, 3.0, 64);
    d.neumann = {Eigen::VectorXd::Zero(64)};
    d.dirichlet = {Eigen::VectorXd::Zero(32)};  // wrong length
    CHECK_THROWS_AS(d.validate(), ValidationError);
    d.dirichlet = {Eigen::VectorXd::Zero(64), Eigen::VectorXd::Zero(64)};
    CHECK_THROWS_AS(d.validate(), ValidationError);  // count mismatch
}
