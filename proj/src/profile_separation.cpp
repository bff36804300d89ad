#include "mfeit/profile_separation.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mfeit/errors.hpp"

namespace mfeit {

namespace {

using Cplx = std::complex<double>;

struct ModelCoeffs {
    Cplx q0;                 // weight of U0
    Cplx qf;                 // weight of the harmonic lift
    std::vector<Cplx> qn;    // weight of each retained mode
    Cplx dq0_dk, dqf_dk;
    std::vector<Cplx> dqn_dk;
};

ModelCoeffs model_coeffs(Cplx k, double k0, const std::vector<double>& lambdas) {
    ModelCoeffs c;
    const Cplx s = k + k0;
    c.q0 = (k - k0) / (k0 * s);
    c.qf = 2.0 / s;
    c.dq0_dk = 2.0 / (s * s);
    c.dqf_dk = -2.0 / (s * s);
    c.qn.reserve(lambdas.size());
    c.dqn_dk.reserve(lambdas.size());
    for (double lam : lambdas) {
        const Cplx den = k0 + lam * (k - k0);
        c.qn.push_back(1.0 / den - c.qf);
        c.dqn_dk.push_back(-lam / (den * den) + 2.0 / (s * s));
    }
    return c;
}

std::array<Cplx, 3> dk_dkappa(const std::array<double, 3>& kappa, double omega) {
    const Cplx den(omega * omega, omega * kappa[2]);
    return {Cplx(1.0, 0.0), -1.0 / den, Cplx(0.0, omega) * kappa[1] / (den * den)};
}

Cplx k_of(const std::array<double, 3>& kappa, double omega) {
    return kappa[0] - kappa[1] / Cplx(omega * omega, omega * kappa[2]);
}

}  // namespace

std::vector<double> SeparationSettings::lambdaGuesses() const {
    std::vector<double> l;
    for (int n = 0; n < n_f; ++n) {
        l.push_back(lambda_plus);
        l.push_back(lambda_minus);
    }
    return l;
}

void MultiFreqDataset::validate() const {
    if (numFrequencies() < 2) throw ValidationError("dataset: need M >= 2 frequencies");
    for (int p = 0; p < numFrequencies(); ++p)
        for (int q = p + 1; q < numFrequencies(); ++q)
            if (omegas[static_cast<std::size_t>(p)] == omegas[static_cast<std::size_t>(q)])
                throw ValidationError("dataset: frequencies must be distinct");
    if (values.empty()) throw ValidationError("dataset: no currents");
    for (int i = 0; i < numCurrents(); ++i) {
        const auto& m = values[static_cast<std::size_t>(i)];
        if (m.rows() != numFrequencies() || m.cols() != numNodes())
            throw DimensionMismatch("dataset: value matrix shape mismatch");
        if (neumann[static_cast<std::size_t>(i)].size() != numNodes() ||
            lift[static_cast<std::size_t>(i)].size() != numNodes())
            throw DimensionMismatch("dataset: f / lift length mismatch");
    }
}

Eigen::VectorXd SeparationState::pack() const {
    const int nc = static_cast<int>(u0.size());
    const int nd = nc ? static_cast<int>(u0[0].size()) : 0;
    const int nf2 = nc ? static_cast<int>(v[0].size()) : 0;
    Eigen::VectorXd x(3 + nc * nd * (1 + nf2));
    x[0] = kappa[0]; x[1] = kappa[1]; x[2] = kappa[2];
    int at = 3;
    for (int i = 0; i < nc; ++i) {
        x.segment(at, nd) = u0[static_cast<std::size_t>(i)];
        at += nd;
        for (int n = 0; n < nf2; ++n) {
            x.segment(at, nd) = v[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
            at += nd;
        }
    }
    return x;
}

SeparationState SeparationState::unpack(const Eigen::VectorXd& x, int n_currents, int n_nodes,
                                        int n_f) {
    SeparationState s;
    s.kappa = {x[0], x[1], x[2]};
    int at = 3;
    s.u0.resize(static_cast<std::size_t>(n_currents));
    s.v.resize(static_cast<std::size_t>(n_currents));
    for (int i = 0; i < n_currents; ++i) {
        s.u0[static_cast<std::size_t>(i)] = x.segment(at, n_nodes);
        at += n_nodes;
        s.v[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(2 * n_f));
        for (int n = 0; n < 2 * n_f; ++n) {
            s.v[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] = x.segment(at, n_nodes);
            at += n_nodes;
        }
    }
    return s;
}

std::complex<double> model_F(const SeparationState& state, const MultiFreqDataset& data,
                             const SeparationSettings& s, int current, int node, double omega) {
    const auto c = model_coeffs(k_of(state.kappa, omega), s.k0, s.lambdaGuesses());
    Cplx f = c.q0 * state.u0[static_cast<std::size_t>(current)][node] +
             c.qf * data.lift[static_cast<std::size_t>(current)][node];
    for (std::size_t n = 0; n < c.qn.size(); ++n)
        f += c.qn[n] * state.v[static_cast<std::size_t>(current)][n][node];
    return f;
}

double objective_Jm(const SeparationState& state, const MultiFreqDataset& data,
                    const SeparationSettings& s) {
    if (static_cast<int>(state.u0.size()) != data.numCurrents() ||
        (data.numCurrents() && state.u0[0].size() != data.numNodes()))
        throw DimensionMismatch("objective_Jm: state/dataset shapes differ");
    const auto lambdas = s.lambdaGuesses();
    double j = 0.0;
    for (int i = 0; i < data.numCurrents(); ++i) {
        for (int p = 0; p < data.numFrequencies(); ++p) {
            const auto c = model_coeffs(k_of(state.kappa, data.omegas[static_cast<std::size_t>(p)]),
                                        s.k0, lambdas);
            for (int jn = 0; jn < data.numNodes(); ++jn) {
                Cplx f = c.q0 * state.u0[static_cast<std::size_t>(i)][jn] +
                         c.qf * data.lift[static_cast<std::size_t>(i)][jn];
                for (std::size_t n = 0; n < c.qn.size(); ++n)
                    f += c.qn[n] * state.v[static_cast<std::size_t>(i)][n][jn];
                j += 0.5 * std::norm(data.values[static_cast<std::size_t>(i)](p, jn) - f);
            }
        }
    }
    return j;
}

Eigen::VectorXd grad_Jm(const SeparationState& state, const MultiFreqDataset& data,
                        const SeparationSettings& s) {
    if (static_cast<int>(state.u0.size()) != data.numCurrents() ||
        (data.numCurrents() && state.u0[0].size() != data.numNodes()))
        throw DimensionMismatch("grad_Jm: state/dataset shapes differ");
    const auto lambdas = s.lambdaGuesses();
    const int nc = data.numCurrents();
    const int nd = data.numNodes();
    const int nf2 = 2 * s.n_f;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(3 + nc * nd * (1 + nf2));

    for (int p = 0; p < data.numFrequencies(); ++p) {
        const double omega = data.omegas[static_cast<std::size_t>(p)];
        const auto c = model_coeffs(k_of(state.kappa, omega), s.k0, lambdas);
        const auto dk = dk_dkappa(state.kappa, omega);
        for (int i = 0; i < nc; ++i) {
            const int base = 3 + i * nd * (1 + nf2);
            for (int jn = 0; jn < nd; ++jn) {
                Cplx f = c.q0 * state.u0[static_cast<std::size_t>(i)][jn] +
                         c.qf * data.lift[static_cast<std::size_t>(i)][jn];
                Cplx df_dk = c.dq0_dk * state.u0[static_cast<std::size_t>(i)][jn] +
                             c.dqf_dk * data.lift[static_cast<std::size_t>(i)][jn];
                for (int n = 0; n < nf2; ++n) {
                    const double vn = state.v[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)][jn];
                    f += c.qn[static_cast<std::size_t>(n)] * vn;
                    df_dk += c.dqn_dk[static_cast<std::size_t>(n)] * vn;
                }
                const Cplx r = data.values[static_cast<std::size_t>(i)](p, jn) - f;
                // d|r|^2/2 d(theta) = -Re(conj(r) dF/dtheta) for real parameters
                for (int q = 0; q < 3; ++q)
                    g[q] -= std::real(std::conj(r) * df_dk * dk[static_cast<std::size_t>(q)]);
                g[base + jn] -= std::real(std::conj(r) * c.q0);
                for (int n = 0; n < nf2; ++n)
                    g[base + (1 + n) * nd + jn] -= std::real(std::conj(r) * c.qn[static_cast<std::size_t>(n)]);
            }
        }
    }
    return g;
}

SeparationResult run_separation(const MultiFreqDataset& data, const SeparationSettings& s) {
    data.validate();
    const int nc = data.numCurrents();
    const int nd = data.numNodes();

    SeparationResult res;
    SeparationState& st = res.state;
    st.kappa = s.kappa_init;
    st.u0.resize(static_cast<std::size_t>(nc));
    st.v.resize(static_cast<std::size_t>(nc));
    for (int i = 0; i < nc; ++i) {
        st.u0[static_cast<std::size_t>(i)] = data.lift[static_cast<std::size_t>(i)];
        st.v[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(2 * s.n_f),
                                                 Eigen::VectorXd::Zero(nd));
    }

    double j = objective_Jm(st, data, s);
    double alpha = s.step;
    int consecutive_failures = 0;
    res.jm_history.push_back(j);
    res.kappa_history.push_back(st.kappa);

    Eigen::VectorXd x = st.pack();
    for (int it = 0; it < s.max_iter; ++it) {
        res.iterations = it + 1;
        const Eigen::VectorXd g = grad_Jm(st, data, s);
        if (g.norm() < s.grad_tol * (1.0 + j)) {
            res.converged = true;
            break;
        }
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            Eigen::VectorXd xt = x - alpha * g;
            for (int q = 0; q < 3; ++q) xt[q] = std::max(xt[q], 1e-8);  // kappa > 0 projection
            SeparationState trial = SeparationState::unpack(xt, nc, nd, s.n_f);
            const double jt = objective_Jm(trial, data, s);
            if (jt <= j) {
                x = xt;
                st = std::move(trial);
                j = jt;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            if (++consecutive_failures >= 10) throw Diverged("run_separation: Jm kept increasing");
        } else {
            consecutive_failures = 0;
            alpha = std::min(alpha * 2.0, s.step);
        }
        res.jm_history.push_back(j);
        res.kappa_history.push_back(st.kappa);
    }

    // Identifiability probe: if Jm is flat under kappa perturbations the
    // profile cannot be recovered from this dataset (zero contrast).
    double max_rel = 0.0;
    for (int q = 0; q < 3; ++q) {
        SeparationState probe = st;
        probe.kappa[static_cast<std::size_t>(q)] += 1e-3 * (1.0 + std::abs(st.kappa[static_cast<std::size_t>(q)]));
        max_rel = std::max(max_rel, std::abs(objective_Jm(probe, data, s) - j) / (1.0 + j));
    }
    res.identifiable = max_rel > 1e-12;
    return res;
}

U0Recovery lsq_recover_u0(const MultiFreqDataset& data, int current,
                          const std::array<double, 3>& kappa, const SeparationSettings& s) {
    data.validate();
    const int m = data.numFrequencies();
    const int cols = 1 + 2 * s.n_f;
    if (m < cols)
        throw IllConditioned("lsq_recover_u0: fewer frequencies than unknown mode columns");
    const auto lambdas = s.lambdaGuesses();

    Eigen::MatrixXcd l(m, cols);
    Eigen::MatrixXcd rhs(m, data.numNodes());
    for (int p = 0; p < m; ++p) {
        const auto c = model_coeffs(k_of(kappa, data.omegas[static_cast<std::size_t>(p)]), s.k0, lambdas);
        l(p, 0) = c.q0;
        for (int n = 0; n < 2 * s.n_f; ++n) l(p, 1 + n) = c.qn[static_cast<std::size_t>(n)];
        rhs.row(p) = data.values[static_cast<std::size_t>(current)].row(p) -
                     c.qf * data.lift[static_cast<std::size_t>(current)].transpose().cast<Cplx>();
    }
    const Eigen::MatrixXcd gram = l.adjoint() * l;  // conjugate transpose; L is complex
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gram);
    const double cond = svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
    if (!std::isfinite(cond) || cond > 1e12)
        throw IllConditioned("lsq_recover_u0: normal equations condition number exceeds 1e12");

    U0Recovery out;
    out.modes = (gram.ldlt().solve(l.adjoint() * rhs)).transpose();  // N_d x cols
    Eigen::VectorXd re = out.modes.col(0).real();
    const Eigen::VectorXd im = out.modes.col(0).imag();
    out.imag_ratio = re.norm() > 0 ? im.norm() / re.norm() : 0.0;
    re.array() -= data.weights.dot(re) / data.weights.sum();
    out.u0 = re;
    return out;
}

void MultiFreqDataset::save(const std::string& data_csv, const std::string& lift_csv) const {
    std::ofstream ds(data_csv);
    if (!ds) throw ValidationError("cannot write " + data_csv);
    ds << "current,node,x1,x2,omega,re_u,im_u\n";
    char buf[256];
    for (int i = 0; i < numCurrents(); ++i)
        for (int p = 0; p < numFrequencies(); ++p)
            for (int j = 0; j < numNodes(); ++j) {
                std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", i + 1, j,
                              nodes[static_cast<std::size_t>(j)].x, nodes[static_cast<std::size_t>(j)].y,
                              omegas[static_cast<std::size_t>(p)],
                              values[static_cast<std::size_t>(i)](p, j).real(),
                              values[static_cast<std::size_t>(i)](p, j).imag());
                ds << buf;
            }
    std::ofstream ls(lift_csv);
    if (!ls) throw ValidationError("cannot write " + lift_csv);
    ls << "current,node,x1,x2,f,frak_f\n";
    for (int i = 0; i < numCurrents(); ++i)
        for (int j = 0; j < numNodes(); ++j) {
            std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g\n", i + 1, j,
                          nodes[static_cast<std::size_t>(j)].x, nodes[static_cast<std::size_t>(j)].y,
                          neumann[static_cast<std::size_t>(i)][j], lift[static_cast<std::size_t>(i)][j]);
            ls << buf;
        }
}

namespace {

std::vector<std::vector<double>> read_csv_numeric(const std::string& path, int ncols,
                                                  const std::string& header) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open " + path);
    std::string line;
    if (!std::getline(is, line) || line != header)
        throw ValidationError(path + ": unexpected header");
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<int>(row.size()) != ncols)
            throw ValidationError(path + ": bad column count");
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

MultiFreqDataset MultiFreqDataset::load(const std::string& data_csv, const std::string& lift_csv) {
    const auto drows = read_csv_numeric(data_csv, 7, "current,node,x1,x2,omega,re_u,im_u");
    const auto lrows = read_csv_numeric(lift_csv, 6, "current,node,x1,x2,f,frak_f");

    MultiFreqDataset d;
    int nc = 0, nd = 0;
    for (const auto& r : drows) {
        nc = std::max(nc, static_cast<int>(r[0]));
        nd = std::max(nd, static_cast<int>(r[1]) + 1);
        bool seen = false;
        for (double w : d.omegas) seen |= (w == r[4]);
        if (!seen) d.omegas.push_back(r[4]);
    }
    const int m = static_cast<int>(d.omegas.size());
    d.nodes.assign(static_cast<std::size_t>(nd), Vec2{});
    d.values.assign(static_cast<std::size_t>(nc), Eigen::MatrixXcd::Zero(m, nd));
    d.neumann.assign(static_cast<std::size_t>(nc), Eigen::VectorXd::Zero(nd));
    d.lift.assign(static_cast<std::size_t>(nc), Eigen::VectorXd::Zero(nd));
    for (const auto& r : drows) {
        const int i = static_cast<int>(r[0]) - 1;
        const int j = static_cast<int>(r[1]);
        int p = 0;
        while (d.omegas[static_cast<std::size_t>(p)] != r[4]) ++p;
        d.nodes[static_cast<std::size_t>(j)] = {r[2], r[3]};
        d.values[static_cast<std::size_t>(i)](p, j) = Cplx(r[5], r[6]);
    }
    for (const auto& r : lrows) {
        const int i = static_cast<int>(r[0]) - 1;
        const int j = static_cast<int>(r[1]);
        d.neumann[static_cast<std::size_t>(i)][j] = r[4];
        d.lift[static_cast<std::size_t>(i)][j] = r[5];
    }
    // The nodes trace the domain boundary on its uniform grid; rebuild the
    // quadrature weights from the sampled curve.
    const Curve bc = curve_from_samples(d.nodes);
    d.weights.resize(nd);
    for (int j = 0; j < nd; ++j) d.weights[j] = bc.weights[static_cast<std::size_t>(j)];
    d.validate();
    return d;
}

}  // namespace mfeit
