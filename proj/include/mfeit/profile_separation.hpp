#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <vector>

#include "mfeit/geometry.hpp"

namespace mfeit {

/// Multifrequency boundary voltages for one or more injected currents.
struct MultiFreqDataset {
    std::vector<Vec2> nodes;        // measurement nodes x_j on the domain boundary
    Eigen::VectorXd weights;        // quadrature weights at the nodes
    std::vector<double> omegas;     // M distinct frequencies
    std::vector<Eigen::MatrixXcd> values;  // per current: M x N_d complex voltages
    std::vector<Eigen::VectorXd> neumann;  // f_i at the nodes
    std::vector<Eigen::VectorXd> lift;     // harmonic lift of f_i at the nodes

    int numNodes() const { return static_cast<int>(nodes.size()); }
    int numFrequencies() const { return static_cast<int>(omegas.size()); }
    int numCurrents() const { return static_cast<int>(values.size()); }
    void validate() const;

    void save(const std::string& data_csv, const std::string& lift_csv) const;
    static MultiFreqDataset load(const std::string& data_csv, const std::string& lift_csv);
};

struct SeparationSettings {
    double lambda_plus = 0.75;   // apriori guess for lambda_1^+
    double lambda_minus = 0.25;  // apriori guess for lambda_1^-
    int n_f = 1;                 // retained eigenvalue pairs
    double k0 = 1.0;
    double step = 1e-2;
    double grad_tol = 1e-6;
    int max_iter = 5000;
    std::array<double, 3> kappa_init{2.0, 1.0, 2.0};

    std::vector<double> lambdaGuesses() const;  // [l1+, l1-, l2+, l2-, ...]
};

/// Descent variables: shared kappa plus per-current (U0, V_n) node vectors.
struct SeparationState {
    std::array<double, 3> kappa{};
    std::vector<Eigen::VectorXd> u0;                // per current, length N_d
    std::vector<std::vector<Eigen::VectorXd>> v;    // per current, per mode (2*n_f)

    Eigen::VectorXd pack() const;
    static SeparationState unpack(const Eigen::VectorXd& x, int n_currents, int n_nodes, int n_f);
};

std::complex<double> model_F(const SeparationState& state, const MultiFreqDataset& data,
                             const SeparationSettings& s, int current, int node, double omega);

double objective_Jm(const SeparationState& state, const MultiFreqDataset& data,
                    const SeparationSettings& s);

/// Real gradient of Jm in the packed parameter order of SeparationState::pack.
Eigen::VectorXd grad_Jm(const SeparationState& state, const MultiFreqDataset& data,
                        const SeparationSettings& s);

struct SeparationResult {
    SeparationState state;
    std::vector<double> jm_history;
    std::vector<std::array<double, 3>> kappa_history;
    int iterations = 0;
    bool converged = false;
    bool identifiable = true;
};

SeparationResult run_separation(const MultiFreqDataset& data, const SeparationSettings& s);

struct U0Recovery {
    Eigen::VectorXd u0;          // real part, re-centered
    Eigen::MatrixXcd modes;      // columns u0, v1+, v1-, ... before taking parts
    double imag_ratio = 0.0;     // ||Im u0|| / ||Re u0|| diagnostic
};

/// Least-squares recovery of u0 (and the v_n) per node from the frequency
/// sweep, given the fitted conductivity profile.
U0Recovery lsq_recover_u0(const MultiFreqDataset& data, int current,
                          const std::array<double, 3>& kappa, const SeparationSettings& s);

}  // namespace mfeit
