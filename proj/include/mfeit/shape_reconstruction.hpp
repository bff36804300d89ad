#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mfeit/geometry.hpp"

namespace mfeit {

/// Boundary Cauchy pairs (f_i, u_meas_i) on the domain curve nodes.
struct CauchyData {
    Curve domain;
    std::vector<Eigen::VectorXd> neumann;    // f_i, mean zero
    std::vector<Eigen::VectorXd> dirichlet;  // measured traces, mean zero

    int numCurrents() const { return static_cast<int>(neumann.size()); }
    void validate() const;
};

struct ShapeDescentSettings {
    int n_fourier = 15;     // N; descent variables are X0 and c_-N..c_N
    double alpha0 = 0.5;
    double delta0 = 0.25;   // required clearance between anomaly and domain
    int max_iter = 500;
    double j_tol = 1e-5;
    int n_nodes = 128;      // anomaly discretization during descent
    int max_halvings = 30;
};

struct ShapeDescentResult {
    StarShape shape;
    std::vector<double> j_history;        // accepted J per iteration (index 0 = initial)
    std::vector<double> symdiff_history;  // vs. reference shape if given, else empty
    std::vector<double> alpha_history;    // step used by each accepted iteration
    int iterations = 0;
    bool converged = false;  // hit the J threshold
};

/// Summed boundary misfit 1/2 sum_i \int_{dOmega} |u_i - u_meas_i|^2 ds for the
/// perfectly conducting anomaly given by `shape`.
double objective_J(const StarShape& shape, const CauchyData& data, int n_nodes);

/// Gradient of objective_J in the order [X0.x, X0.y, c_-N, ..., c_N].
Eigen::VectorXd shape_gradient(const StarShape& shape, const CauchyData& data, int n_nodes);

/// Gradient descent with admissibility guard and halving backtracking.
/// `reference` (optional) only feeds the symmetric-difference history.
ShapeDescentResult run_shape_descent(const StarShape& initial, const CauchyData& data,
                                     const ShapeDescentSettings& s,
                                     const StarShape* reference = nullptr);

}  // namespace mfeit
