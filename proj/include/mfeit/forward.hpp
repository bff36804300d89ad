#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <memory>
#include <optional>

#include "mfeit/geometry.hpp"
#include "mfeit/layer_potentials.hpp"

namespace mfeit {

/// Frequency profile k(omega) = kappa1 - kappa2 / (omega^2 + i omega kappa3)
/// over a background conductivity k0.
struct ConductivityProfile {
    double kappa1 = 3.0;
    double kappa2 = 2.0;
    double kappa3 = 1.0;
    double k0 = 1.0;

    std::complex<double> k(double omega) const;
};

std::complex<double> k_of_omega(const ConductivityProfile& p, double omega);

struct BoundarySolution {
    Eigen::VectorXcd trace;         // u on the domain boundary, mean-normalized
    Eigen::VectorXcd anomaly_flux;  // d/dnu_D u|+ on the anomaly (when produced)
    Eigen::VectorXcd phi;           // density on the anomaly
    Eigen::VectorXcd psi;           // density on the domain boundary
};

/// Interior Neumann lift: trace of the zero-mean harmonic function with
/// Neumann data f on the given closed curve.
Eigen::VectorXd harmonic_lift(const Curve& domain, const Eigen::VectorXd& f);

/// All boundary-value solves for one (domain, anomaly) pair.  Blocks are
/// assembled once; factorizations are built lazily and cached per right-hand
/// side family (and per contrast k for the transmission problem).
class ForwardSolver {
public:
    ForwardSolver(Curve domain, Curve anomaly);

    const Curve& domain() const { return dom_; }
    const Curve& anomaly() const { return ano_; }

    /// Transmission problem with inclusion conductivity k, background k0.
    BoundarySolution solveTransmission(std::complex<double> k, double k0,
                                       const Eigen::VectorXd& f) const;

    /// Perfect-conductor problem u0; anomaly_flux holds phi = d/dnu u0|+.
    BoundarySolution solvePerfectConductor(const Eigen::VectorXd& f) const;

    /// Linearized field u_h of the shape perturbation h*nu: mixed problem with
    /// Dirichlet data -h.*phi on the anomaly, zero Neumann data on the domain.
    Eigen::VectorXd solveLinearized(const Eigen::VectorXd& h, const Eigen::VectorXd& phi) const;

    /// Same mixed solve for many Dirichlet data columns at once.
    Eigen::MatrixXd solveLinearizedMulti(const Eigen::MatrixXd& dirichlet_columns) const;

    struct AdjointSolution {
        Eigen::VectorXd domain_trace;
        Eigen::VectorXd anomaly_trace;
    };

    /// Neumann problem in the annulus: dw/dnu = 0 on the anomaly, = g on the
    /// domain boundary; normalized to zero mean on the domain boundary.
    AdjointSolution solveAdjoint(const Eigen::VectorXd& g) const;

    // Assembled blocks, shared with the spectrum module.
    const OperatorBlock& kstarAnomaly() const { return kstar_d_; }
    const OperatorBlock& regularizedOmegaBlock() const { return a_omega_; }
    const OperatorBlock& crossFluxOnAnomaly() const { return dso_on_d_; }   // d/nu_D S_Omega
    const OperatorBlock& crossFluxOnDomain() const { return dsd_on_o_; }    // d/nu_Omega S_D
    const OperatorBlock& singleLayerAnomalyOnDomain() const { return sd_on_o_; }
    const OperatorBlock& singleLayerDomainSelf() const { return so_self_; }

    Eigen::VectorXd meanNormalize(const Eigen::VectorXd& trace) const;
    Eigen::VectorXcd meanNormalize(const Eigen::VectorXcd& trace) const;

    /// Field value u(x) = S_D phi + S_Omega psi at off-curve points.
    Eigen::VectorXcd evaluateField(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi,
                                   const std::vector<Vec2>& pts) const;

private:
    void checkFlux(const Eigen::VectorXd& f) const;
    const Eigen::PartialPivLU<Eigen::MatrixXd>& mixedLU() const;
    const Eigen::PartialPivLU<Eigen::MatrixXd>& adjointLU() const;

    Curve dom_, ano_;
    int nd_ = 0, no_ = 0;
    OperatorBlock kstar_d_, kstar_o_, a_omega_;  // a_omega_ = -I/2 + K*_O + w w^T
    OperatorBlock dso_on_d_, dsd_on_o_;
    OperatorBlock sd_self_, so_self_, so_on_d_, sd_on_o_;
    Eigen::VectorXd womega_;  // domain quadrature weights

    mutable std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> mixed_lu_, adj_lu_;
    mutable std::map<std::pair<double, double>, std::shared_ptr<Eigen::PartialPivLU<Eigen::MatrixXcd>>>
        trans_lu_;
};

}  // namespace mfeit
