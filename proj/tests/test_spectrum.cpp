#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "mfeit/spectrum.hpp"

using namespace mfeit;

namespace {
constexpr double kPi = 3.141592653589793238462643383279;

Curve circle(double r, int n, Vec2 c = {0, 0}) {
    StarShape s;
    s.center = c;
    s.N = 0;
    s.coeffs = {r};
    return make_star_curve(s, n);
}

Curve ellipse_star(double a, double b, int n, Vec2 c = {0, 0}) {
    return make_star_curve(fit_star_shape(
                               [&](double th) {
                                   const double ct = std::cos(th), st = std::sin(th);
                                   return a * b / std::sqrt(b * b * ct * ct + a * a * st * st);
                               },
                               c, 12),
                           n);
}

Eigen::VectorXd cos_flux(const Curve& c) {
    Eigen::VectorXd f(static_cast<int>(c.nodes.size()));
    for (int j = 0; j < f.size(); ++j) f[j] = c.normals[static_cast<std::size_t>(j)].x;
    return f;
}
}  // namespace

TEST_CASE("concentric-disk spectrum oracle: lambda_n = (1+(rho/R)^(2n))/2") {
    const ForwardSolver fs(circle(2.0, 128), circle(1.0, 128));
    const auto pairs = estimate_spectrum(fs, 6);
    REQUIRE(pairs.size() >= 4);
    CHECK(std::abs(pairs[0].lambda - 0.625) < 1e-6);
    CHECK(std::abs(pairs[1].lambda - 0.625) < 1e-6);
    CHECK(std::abs(pairs[2].lambda - 0.53125) < 1e-6);
    CHECK(std::abs(pairs[3].lambda - 0.53125) < 1e-6);
    for (const auto& p : pairs) {
        CHECK(p.lambda > 0.0);
        CHECK(p.lambda < 1.0);
        CHECK(p.lambda != 0.5);
    }
}

TEST_CASE("spectrum stability under resolution doubling") {
    const ForwardSolver coarse(circle(2.0, 96), circle(1.0, 96));
    const ForwardSolver fine(circle(2.0, 192), circle(1.0, 192));
    const auto pc = estimate_spectrum(coarse, 4);
    const auto pf = estimate_spectrum(fine, 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(pc[i].lambda - pf[i].lambda) < 1e-6);
}

TEST_CASE("ellipse-in-ellipse: geometric decay of |lambda - 1/2|") {
    const ForwardSolver fs(ellipse_star(4.0, 3.0, 160), ellipse_star(1.5, 1.0, 160, {0.6, 0.4}));
    const auto pairs = estimate_spectrum(fs, 8);
    REQUIRE(pairs.size() >= 6);
    std::vector<double> d;
    for (const auto& p : pairs) d.push_back(std::abs(p.lambda - 0.5));
    // sorted decreasing by construction; expect sustained decay over >= 4 modes
    CHECK(d[0] > d[2]);
    CHECK(d[2] > d[4]);
    CHECK(d[4] / d[0] < 0.5);
    for (const auto& p : pairs) {
        CHECK(p.lambda > 0.0);
        CHECK(p.lambda < 1.0);
    }
}

TEST_CASE("Rayleigh quotient agrees with the eigenvalue within 3 sigma") {
    const ForwardSolver fs(circle(2.0, 128), circle(1.0, 128));
    const auto pairs = estimate_spectrum(fs, 4);
    for (std::size_t i = 0; i < 2; ++i) {
        const auto r = rayleigh_quotient(fs, pairs[i], 100000, 7);
        CHECK(r.value < 1.0);
        CHECK(std::abs(r.value - pairs[i].lambda) < 3.0 * r.std_error + 1e-3);
    }
}

TEST_CASE("decomposition residual: disk benchmark") {
    const ForwardSolver fs(circle(2.0, 128), circle(1.0, 128));
    const ConductivityProfile prof{3.0, 2.0, 1.0, 1.0};
    const Eigen::VectorXd f = cos_flux(fs.domain());
    const std::vector<double> freqs{1, 2, 3, 4, 5, 6, 7, 8};
    const auto pairs = estimate_spectrum(fs, 6);

    const double r0 = decomposition_residual(fs, prof, f, freqs, 0, pairs);
    const double r1 = decomposition_residual(fs, prof, f, freqs, 2, pairs);  // first pair
    const double r2 = decomposition_residual(fs, prof, f, freqs, 4, pairs);
    CHECK(r1 < 1e-6);  // only the n=1 pair carries cos(theta) data
    CHECK(r0 > r1);
    CHECK(r2 <= r1 + 1e-12);  // monotone in truncation
}

TEST_CASE("decomposition residual on the benchmark ellipse target") {
    const Curve dom = ellipse_star(4.0, 3.0, 128);
    const Curve ano = ellipse_star(1.5, 1.0, 128, {0.6, 0.4});
    const ForwardSolver fs(dom, ano);
    const ConductivityProfile prof{3.0, 2.0, 1.0, 1.0};
    const Eigen::VectorXd f = cos_flux(dom);
    const std::vector<double> freqs{1, 2, 3, 4, 5, 6, 7, 8};
    const auto pairs = estimate_spectrum(fs, 12);

    // scale: max ||u|| over the sweep
    double umax = 0.0;
    Eigen::VectorXd w(static_cast<int>(dom.weights.size()));
    for (int j = 0; j < w.size(); ++j) w[j] = dom.weights[static_cast<std::size_t>(j)];
    for (double om : freqs) {
        const auto sol = fs.solveTransmission(prof.k(om), 1.0, f);
        umax = std::max(umax, std::sqrt(sol.trace.cwiseAbs2().dot(w)));
    }
    const double res = decomposition_residual(fs, prof, f, freqs, 12, pairs);
    CHECK(res < 1e-3 * umax);
    // monotone in truncation
    double prev = decomposition_residual(fs, prof, f, freqs, 0, pairs);
    for (int m = 2; m <= 12; m += 2) {
        const double cur = decomposition_residual(fs, prof, f, freqs, m, pairs);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("projection identity: lift minus u0 is spanned by the modes") {
    const ForwardSolver fs(circle(2.0, 128), circle(1.0, 128));
    const Eigen::VectorXd f = cos_flux(fs.domain());
    const auto pairs = estimate_spectrum(fs, 6);
    const auto res = projection_identity_check(fs, f, pairs);
    REQUIRE(res.size() >= 3);
    CHECK(res[2] < 1e-8);  // one +/- pair suffices for cos data on disks
    for (std::size_t m = 1; m < res.size(); ++m) CHECK(res[m] <= res[m - 1] + 1e-12);
}
