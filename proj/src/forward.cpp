#include "mfeit/forward.hpp"

#include <cmath>

#include "mfeit/errors.hpp"

namespace mfeit {

std::complex<double> ConductivityProfile::k(double omega) const {
    const std::complex<double> den(omega * omega, omega * kappa3);
    return kappa1 - kappa2 / den;
}

std::complex<double> k_of_omega(const ConductivityProfile& p, double omega) {
    if (omega <= 0) throw ValidationError("k_of_omega: omega must be positive");
    return p.k(omega);
}

namespace {

Eigen::VectorXd quad_weights(const Curve& c) {
    Eigen::VectorXd w(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) w[static_cast<int>(i)] = c.weights[i];
    return w;
}

// Pivot-ratio singularity test; determinants of systems this large over- or
// underflow and say nothing.
template <typename LU>
void check_pivots(const LU& lu, const char* what) {
    const auto d = lu.matrixLU().diagonal().cwiseAbs().eval();
    const double dmax = d.maxCoeff();
    if (!(dmax > 0.0) || d.minCoeff() < 1e-14 * dmax) throw SingularSystem(what);
}

void check_zero_mean(const Eigen::VectorXd& w, const Eigen::VectorXd& f, const char* what) {
    const double mean = std::abs(w.dot(f));
    const double scale = f.cwiseAbs().maxCoeff() * w.sum();
    if (mean > 1e-10 * std::max(scale, 1e-300))
        throw IncompatibleFlux(std::string(what) + ": Neumann data must have zero boundary mean");
}

}  // namespace

Eigen::VectorXd harmonic_lift(const Curve& domain, const Eigen::VectorXd& f) {
    const int n = static_cast<int>(domain.size());
    if (f.size() != n) throw DimensionMismatch("harmonic_lift: data size != node count");
    const Eigen::VectorXd w = quad_weights(domain);
    check_zero_mean(w, f, "harmonic_lift");
    // S_Omega psi with (-1/2 + K*) psi = f; rank-one regularization of the
    // constant null space, constant fixed afterwards by mean removal.
    Eigen::MatrixXd a = kstar_self(domain);
    a.diagonal().array() -= 0.5;
    a += w * w.transpose();
    const Eigen::VectorXd psi = a.partialPivLu().solve(f);
    Eigen::VectorXd trace = single_layer_self(domain) * psi;
    trace.array() -= w.dot(trace) / w.sum();
    return trace;
}

ForwardSolver::ForwardSolver(Curve domain, Curve anomaly)
    : dom_(std::move(domain)), ano_(std::move(anomaly)) {
    nd_ = static_cast<int>(ano_.size());
    no_ = static_cast<int>(dom_.size());
    womega_ = quad_weights(dom_);

    kstar_d_ = kstar_self(ano_);
    kstar_o_ = kstar_self(dom_);
    a_omega_ = kstar_o_;
    a_omega_.diagonal().array() -= 0.5;
    a_omega_ += womega_ * womega_.transpose();

    dso_on_d_ = normal_derivative_cross(dom_, ano_);  // d/nu_D S_Omega, on anomaly
    dsd_on_o_ = normal_derivative_cross(ano_, dom_);  // d/nu_O S_D, on domain
    sd_self_ = single_layer_self(ano_);
    so_self_ = single_layer_self(dom_);
    so_on_d_ = single_layer_cross(dom_, ano_);
    sd_on_o_ = single_layer_cross(ano_, dom_);
}

Eigen::VectorXd ForwardSolver::meanNormalize(const Eigen::VectorXd& trace) const {
    Eigen::VectorXd t = trace;
    t.array() -= womega_.dot(trace) / womega_.sum();
    return t;
}

Eigen::VectorXcd ForwardSolver::meanNormalize(const Eigen::VectorXcd& trace) const {
    Eigen::VectorXcd t = trace;
    const std::complex<double> mean = (womega_.cast<std::complex<double>>().cwiseProduct(trace)).sum()
                                      / womega_.sum();
    t.array() -= mean;
    return t;
}

void ForwardSolver::checkFlux(const Eigen::VectorXd& f) const {
    if (f.size() != no_) throw DimensionMismatch("forward solve: Neumann data size != domain node count");
    check_zero_mean(womega_, f, "forward solve");
}

BoundarySolution ForwardSolver::solvePerfectConductor(const Eigen::VectorXd& f) const {
    // Solved in the capacity-proof mixed form: u constant on the anomaly is
    // expressed as Dirichlet data 0 plus the free constant unknown, so a
    // logarithmic-capacity-one anomaly does not make the system singular.
    checkFlux(f);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nd_ + no_ + 1);
    rhs.segment(nd_, no_) = f;
    const Eigen::VectorXd sol = mixedLU().solve(rhs);
    const Eigen::VectorXd phi = sol.head(nd_);
    const Eigen::VectorXd psi = sol.segment(nd_, no_);
    BoundarySolution out;
    out.phi = phi.cast<std::complex<double>>();
    out.psi = psi.cast<std::complex<double>>();
    // d/dnu u0 on the anomaly, taken from the exterior side of the jump.
    Eigen::MatrixXd kplus = kstar_d_;
    kplus.diagonal().array() += 0.5;
    out.anomaly_flux = Eigen::VectorXd(kplus * phi + dso_on_d_ * psi).cast<std::complex<double>>();
    out.trace = meanNormalize(Eigen::VectorXd(sd_on_o_ * phi + so_self_ * psi))
                    .cast<std::complex<double>>();
    return out;
}

BoundarySolution ForwardSolver::solveTransmission(std::complex<double> k, double k0,
                                                  const Eigen::VectorXd& f) const {
    checkFlux(f);
    if (k0 <= 0) throw ValidationError("solveTransmission: k0 must be positive");
    if (std::abs(k - k0) == 0.0) {
        // Homogeneous medium: u = f-lift / k0 exactly, no anomaly response.
        BoundarySolution out;
        out.trace = (harmonic_lift(dom_, f) / k0).cast<std::complex<double>>();
        out.phi = Eigen::VectorXcd::Zero(nd_);
        out.psi = Eigen::VectorXcd::Zero(no_);
        return out;
    }
    const std::complex<double> lam = (k + k0) / (2.0 * (k - k0));
    const auto key = std::make_pair(lam.real(), lam.imag());
    auto it = trans_lu_.find(key);
    if (it == trans_lu_.end()) {
        Eigen::MatrixXcd m(nd_ + no_, nd_ + no_);
        m.setZero();
        m.topLeftCorner(nd_, nd_) = (-kstar_d_).cast<std::complex<double>>();
        m.topLeftCorner(nd_, nd_).diagonal().array() += lam;
        m.topRightCorner(nd_, no_) = (-dso_on_d_).cast<std::complex<double>>();
        m.bottomLeftCorner(no_, nd_) = dsd_on_o_.cast<std::complex<double>>();
        m.bottomRightCorner(no_, no_) = a_omega_.cast<std::complex<double>>();
        auto lu = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXcd>>(m);
        check_pivots(*lu, "transmission system is singular (near-resonant contrast)");
        it = trans_lu_.emplace(key, std::move(lu)).first;
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nd_ + no_);
    rhs.tail(no_) = (f / k0).cast<std::complex<double>>();
    const Eigen::VectorXcd sol = it->second->solve(rhs);
    BoundarySolution out;
    out.phi = sol.head(nd_);
    out.psi = sol.tail(no_);
    out.trace = meanNormalize(Eigen::VectorXcd(sd_on_o_.cast<std::complex<double>>() * out.phi +
                                               so_self_.cast<std::complex<double>>() * out.psi));
    return out;
}

const Eigen::PartialPivLU<Eigen::MatrixXd>& ForwardSolver::mixedLU() const {
    if (!mixed_lu_) {
        // Unknowns (phi, psi, c): Dirichlet data on the anomaly, zero Neumann
        // data on the domain, plus a mean-zero constraint on phi.  The free
        // constant keeps the system solvable when the anomaly has logarithmic
        // capacity 1 (e.g. a unit disk, where S_D annihilates constants).
        const int sz = nd_ + no_ + 1;
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(sz, sz);
        m.topLeftCorner(nd_, nd_) = sd_self_;
        m.block(0, nd_, nd_, no_) = so_on_d_;
        m.block(0, nd_ + no_, nd_, 1).setOnes();
        m.block(nd_, 0, no_, nd_) = dsd_on_o_;
        m.block(nd_, nd_, no_, no_) = a_omega_;
        for (int j = 0; j < nd_; ++j) m(nd_ + no_, j) = ano_.weights[static_cast<std::size_t>(j)];
        mixed_lu_.emplace(m);
        check_pivots(*mixed_lu_, "mixed Dirichlet/Neumann system is singular");
    }
    return *mixed_lu_;
}

Eigen::MatrixXd ForwardSolver::solveLinearizedMulti(const Eigen::MatrixXd& dirichlet_columns) const {
    if (dirichlet_columns.rows() != nd_)
        throw DimensionMismatch("solveLinearized: Dirichlet data size != anomaly node count");
    const int ncols = static_cast<int>(dirichlet_columns.cols());
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nd_ + no_ + 1, ncols);
    rhs.topRows(nd_) = dirichlet_columns;
    const Eigen::MatrixXd sol = mixedLU().solve(rhs);
    Eigen::MatrixXd traces(no_, ncols);
    for (int c = 0; c < ncols; ++c) {
        const Eigen::VectorXd phi = sol.col(c).head(nd_);
        const Eigen::VectorXd psi = sol.col(c).segment(nd_, no_);
        traces.col(c) = meanNormalize(Eigen::VectorXd(sd_on_o_ * phi + so_self_ * psi));
    }
    return traces;
}

Eigen::VectorXd ForwardSolver::solveLinearized(const Eigen::VectorXd& h,
                                               const Eigen::VectorXd& phi) const {
    if (h.size() != nd_ || phi.size() != nd_)
        throw DimensionMismatch("solveLinearized: h/phi size != anomaly node count");
    const Eigen::VectorXd g = -h.cwiseProduct(phi);
    return solveLinearizedMulti(g).col(0);
}

const Eigen::PartialPivLU<Eigen::MatrixXd>& ForwardSolver::adjointLU() const {
    if (!adj_lu_) {
        Eigen::MatrixXd m(nd_ + no_, nd_ + no_);
        Eigen::MatrixXd add = kstar_d_;
        add.diagonal().array() += 0.5;  // exterior-side normal derivative on the anomaly
        m.topLeftCorner(nd_, nd_) = add;
        m.topRightCorner(nd_, no_) = dso_on_d_;
        m.bottomLeftCorner(no_, nd_) = dsd_on_o_;
        m.bottomRightCorner(no_, no_) = a_omega_;
        adj_lu_.emplace(m);
        check_pivots(*adj_lu_, "adjoint Neumann system is singular");
    }
    return *adj_lu_;
}

ForwardSolver::AdjointSolution ForwardSolver::solveAdjoint(const Eigen::VectorXd& g) const {
    checkFlux(g);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nd_ + no_);
    rhs.tail(no_) = g;
    const Eigen::VectorXd sol = adjointLU().solve(rhs);
    const Eigen::VectorXd phi = sol.head(nd_);
    const Eigen::VectorXd psi = sol.tail(no_);
    Eigen::VectorXd dom_trace = sd_on_o_ * phi + so_self_ * psi;
    Eigen::VectorXd ano_trace = sd_self_ * phi + so_on_d_ * psi;
    const double mean = womega_.dot(dom_trace) / womega_.sum();
    dom_trace.array() -= mean;
    ano_trace.array() -= mean;
    return {dom_trace, ano_trace};
}

Eigen::VectorXcd ForwardSolver::evaluateField(const Eigen::VectorXcd& phi,
                                              const Eigen::VectorXcd& psi,
                                              const std::vector<Vec2>& pts) const {
    return single_layer_eval(ano_, pts).cast<std::complex<double>>() * phi +
           single_layer_eval(dom_, pts).cast<std::complex<double>>() * psi;
}

}  // namespace mfeit
