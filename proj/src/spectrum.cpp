#include "mfeit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mfeit/errors.hpp"

namespace mfeit {

namespace {

Eigen::VectorXd quad_weights(const Curve& c) {
    Eigen::VectorXd w(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) w[static_cast<int>(i)] = c.weights[i];
    return w;
}

// Energy inner product of two eigen-candidates from boundary data:
// integral over Omega of grad w1 . grad w2 = -int_{dD} w1 phi2 ds (symmetrized).
double energy_product(const Eigen::VectorXd& wd, const Eigen::VectorXd& trace1,
                      const Eigen::VectorXd& phi1, const Eigen::VectorXd& trace2,
                      const Eigen::VectorXd& phi2) {
    const double a = -(wd.cwiseProduct(trace1).dot(phi2));
    const double b = -(wd.cwiseProduct(trace2).dot(phi1));
    return 0.5 * (a + b);
}

}  // namespace

std::vector<PoincareEigenpair> estimate_spectrum(const ForwardSolver& fs, int n_modes) {
    const Curve& dom = fs.domain();
    const Curve& ano = fs.anomaly();
    if (dom.size() < 64 || ano.size() < 64)
        throw TooFewNodes("estimate_spectrum: both curves need >= 64 nodes");
    const int nd = static_cast<int>(ano.size());

    // Eliminate psi through the regularized Omega block:
    // psi = -A_Omega^{-1} (d/nu_O S_D) phi.
    const Eigen::MatrixXd psi_of_phi =
        -fs.regularizedOmegaBlock().partialPivLu().solve(fs.crossFluxOnDomain());
    const Eigen::MatrixXd coupling = fs.kstarAnomaly() + fs.crossFluxOnAnomaly() * psi_of_phi;

    Eigen::MatrixXd a = coupling;
    a.diagonal().array() += 0.5;
    Eigen::MatrixXd b = coupling;
    b.diagonal().array() -= 0.5;

    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges;
    ges.compute(a, b, true);
    if (ges.info() != Eigen::Success) throw EigSolveFailure("generalized eigensolver failed");

    struct Cand {
        double lambda;
        Eigen::VectorXd phi;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < nd; ++i) {
        const std::complex<double> beta = ges.betas()[i];
        if (std::abs(beta) < 1e-14) continue;
        const std::complex<double> mu = ges.alphas()[i] / beta;
        if (std::abs(mu.imag()) > 1e-8 * (1.0 + std::abs(mu.real()))) continue;
        const std::complex<double> lam_c = 1.0 / (1.0 - mu);
        const double lam = lam_c.real();
        if (!(lam > 1e-12 && lam < 1.0 - 1e-12)) continue;
        Eigen::VectorXcd vc = ges.eigenvectors().col(i);
        Eigen::VectorXd v;
        if (vc.real().norm() >= vc.imag().norm()) v = vc.real();
        else v = vc.imag();
        if (v.norm() < 1e-14) continue;
        cands.push_back({lam, std::move(v)});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        return std::abs(x.lambda - 0.5) > std::abs(y.lambda - 0.5);
    });
    if (static_cast<int>(cands.size()) > n_modes) cands.resize(static_cast<std::size_t>(n_modes));

    const Eigen::VectorXd wo = quad_weights(dom);
    const Eigen::VectorXd wd = quad_weights(ano);

    std::vector<PoincareEigenpair> pairs;
    pairs.reserve(cands.size());
    for (auto& c : cands) {
        PoincareEigenpair p;
        p.lambda = c.lambda;
        p.family = c.lambda >= 0.5 ? '+' : '-';
        p.resolved = std::abs(c.lambda - 0.5) > 1e-3;
        p.phi = c.phi;
        p.psi = psi_of_phi * c.phi;
        Eigen::VectorXd wdom = fs.singleLayerAnomalyOnDomain() * p.phi +
                               fs.singleLayerDomainSelf() * p.psi;
        Eigen::VectorXd wano = single_layer_self(ano) * p.phi +
                               single_layer_cross(dom, ano) * p.psi;
        const double mean = wo.dot(wdom) / wo.sum();
        wdom.array() -= mean;
        wano.array() -= mean;
        p.trace_domain = wdom;
        p.trace_anomaly = wano;
        Eigen::MatrixXd inner = fs.kstarAnomaly();
        inner.diagonal().array() -= 0.5;
        p.interior_flux = inner * p.phi + fs.crossFluxOnAnomaly() * p.psi;
        pairs.push_back(std::move(p));
    }

    // Orthonormalize in the energy product within near-degenerate clusters,
    // then normalize every mode to unit energy.
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(pairs[i].lambda - pairs[j].lambda) > 1e-6) continue;
            const double proj = energy_product(wd, pairs[i].trace_anomaly, pairs[i].phi,
                                               pairs[j].trace_anomaly, pairs[j].phi);
            pairs[i].phi -= proj * pairs[j].phi;
            pairs[i].psi -= proj * pairs[j].psi;
            pairs[i].trace_domain -= proj * pairs[j].trace_domain;
            pairs[i].trace_anomaly -= proj * pairs[j].trace_anomaly;
            pairs[i].interior_flux -= proj * pairs[j].interior_flux;
        }
        const double e = energy_product(wd, pairs[i].trace_anomaly, pairs[i].phi,
                                        pairs[i].trace_anomaly, pairs[i].phi);
        if (!(e > 0)) throw EigSolveFailure("non-positive discrete energy for an eigenmode");
        const double s = 1.0 / std::sqrt(e);
        pairs[i].phi *= s;
        pairs[i].psi *= s;
        pairs[i].trace_domain *= s;
        pairs[i].trace_anomaly *= s;
        pairs[i].interior_flux *= s;
    }
    return pairs;
}

RayleighEstimate rayleigh_quotient(const ForwardSolver& fs, const PoincareEigenpair& pair,
                                   int mc_samples, std::uint64_t seed) {
    const Curve& dom = fs.domain();
    const Curve& ano = fs.anomaly();
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& p : dom.nodes) {
        x0 = std::min(x0, p.x); x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y); y1 = std::max(y1, p.y);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);

    // Keep samples a little away from both boundaries; the representation
    // gradient is singular there and would dominate the variance.
    const double cutoff = 0.01;

    std::vector<double> g_all, d_all;
    g_all.reserve(static_cast<std::size_t>(mc_samples));
    const int chunk = 4096;
    std::vector<Vec2> pts;
    std::vector<char> in_anomaly;
    int accepted = 0;
    int tried = 0;
    while (accepted < mc_samples && tried < 50 * mc_samples) {
        pts.clear();
        in_anomaly.clear();
        while (static_cast<int>(pts.size()) < chunk && accepted + static_cast<int>(pts.size()) < mc_samples &&
               tried < 50 * mc_samples) {
            ++tried;
            const Vec2 p{ux(rng), uy(rng)};
            if (!dom.contains(p)) continue;
            if (dom.distanceTo(p) < cutoff || ano.distanceTo(p) < cutoff) continue;
            pts.push_back(p);
            in_anomaly.push_back(ano.contains(p) ? 1 : 0);
        }
        if (pts.empty()) break;
        const auto [gdx, gdy] = single_layer_grad_eval(ano, pts);
        const auto [gox, goy] = single_layer_grad_eval(dom, pts);
        const Eigen::VectorXd vx = gdx * pair.phi + gox * pair.psi;
        const Eigen::VectorXd vy = gdy * pair.phi + goy * pair.psi;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double g = vx[static_cast<int>(i)] * vx[static_cast<int>(i)] +
                             vy[static_cast<int>(i)] * vy[static_cast<int>(i)];
            g_all.push_back(g);
            d_all.push_back(in_anomaly[i] ? g : 0.0);
        }
        accepted += static_cast<int>(pts.size());
    }
    const int n = static_cast<int>(g_all.size());
    if (n == 0) return {0.0, 0.0, 0};
    double sg = 0, sd = 0;
    for (int i = 0; i < n; ++i) { sg += g_all[static_cast<std::size_t>(i)]; sd += d_all[static_cast<std::size_t>(i)]; }
    const double r = sd / sg;
    double var = 0;
    const double mg = sg / n;
    for (int i = 0; i < n; ++i) {
        const double z = d_all[static_cast<std::size_t>(i)] - r * g_all[static_cast<std::size_t>(i)];
        var += z * z;
    }
    var /= (double(n) - 1.0) * n;
    return {r, std::sqrt(var) / mg, n};
}

double decomposition_residual(const ForwardSolver& fs, const ConductivityProfile& profile,
                              const Eigen::VectorXd& f, const std::vector<double>& frequencies,
                              int n_trunc, const std::vector<PoincareEigenpair>& pairs) {
    const Eigen::VectorXd wo = quad_weights(fs.domain());
    const BoundarySolution u0 = fs.solvePerfectConductor(f);
    const int m = std::min<int>(n_trunc, static_cast<int>(pairs.size()));
    double worst = 0.0;
    for (double omega : frequencies) {
        const std::complex<double> k = profile.k(omega);
        const BoundarySolution u = fs.solveTransmission(k, profile.k0, f);
        Eigen::VectorXcd model = u0.trace / profile.k0;
        for (int n = 0; n < m; ++n) {
            const double coef = wo.cwiseProduct(f).dot(pairs[static_cast<std::size_t>(n)].trace_domain);
            const std::complex<double> den = profile.k0 + pairs[static_cast<std::size_t>(n)].lambda * (k - profile.k0);
            model += (coef / den) * pairs[static_cast<std::size_t>(n)].trace_domain.cast<std::complex<double>>();
        }
        const Eigen::VectorXcd diff = u.trace - model;
        const double resid = std::sqrt(wo.dot(diff.cwiseAbs2()));
        worst = std::max(worst, resid);
    }
    return worst;
}

std::vector<double> projection_identity_check(const ForwardSolver& fs, const Eigen::VectorXd& f,
                                              const std::vector<PoincareEigenpair>& pairs) {
    const Eigen::VectorXd wo = quad_weights(fs.domain());
    const Eigen::VectorXd lift = harmonic_lift(fs.domain(), f);
    const Eigen::VectorXd u0 = fs.solvePerfectConductor(f).trace.real();
    Eigen::VectorXd target = lift - u0;
    target.array() -= wo.dot(target) / wo.sum();
    std::vector<double> out;
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(target.size());
    out.push_back(std::sqrt(wo.dot((target - acc).cwiseAbs2())));
    for (const auto& p : pairs) {
        acc += wo.cwiseProduct(f).dot(p.trace_domain) * p.trace_domain;
        out.push_back(std::sqrt(wo.dot((target - acc).cwiseAbs2())));
    }
    return out;
}

}  // namespace mfeit
