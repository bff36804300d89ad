#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mfeit/forward.hpp"

namespace mfeit {

/// Eigenpair of the variational Poincare operator, energy-normalized
/// (integral of |grad w|^2 over the domain equals 1).
struct PoincareEigenpair {
    double lambda = 0.0;
    char family = '+';           // '+' for lambda > 1/2, '-' for lambda < 1/2
    bool resolved = true;        // false when within 1e-3 of the 1/2 accumulation point
    Eigen::VectorXd phi;         // density on the anomaly
    Eigen::VectorXd psi;         // density on the domain boundary
    Eigen::VectorXd trace_domain;    // w on the domain boundary, zero mean
    Eigen::VectorXd trace_anomaly;   // w on the anomaly (consistent shift)
    Eigen::VectorXd interior_flux;   // d/dnu w|- on the anomaly
};

/// Discrete Poincare spectrum via the boundary-integral generalized
/// eigenproblem; returns the n_modes eigenvalues farthest from 1/2.
std::vector<PoincareEigenpair> estimate_spectrum(const ForwardSolver& fs, int n_modes);

struct RayleighEstimate {
    double value = 0.0;
    double std_error = 0.0;
    int samples_in_domain = 0;
};

/// Monte Carlo Rayleigh quotient of an eigenpair (validation only).
RayleighEstimate rayleigh_quotient(const ForwardSolver& fs, const PoincareEigenpair& pair,
                                   int mc_samples, std::uint64_t seed = 1);

/// Max over frequencies of the L2 truncation residual of the spectral
/// decomposition of u(., omega), using the first n_trunc eigenpairs.
double decomposition_residual(const ForwardSolver& fs, const ConductivityProfile& profile,
                              const Eigen::VectorXd& f, const std::vector<double>& frequencies,
                              int n_trunc, const std::vector<PoincareEigenpair>& pairs);

/// Residuals ||(lift - u0) - sum_{n<m} v_n|| for m = 0..pairs.size().
std::vector<double> projection_identity_check(const ForwardSolver& fs, const Eigen::VectorXd& f,
                                              const std::vector<PoincareEigenpair>& pairs);

}  // namespace mfeit
