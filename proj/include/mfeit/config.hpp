#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfeit/geometry.hpp"
#include "mfeit/profile_separation.hpp"
#include "mfeit/shape_reconstruction.hpp"

namespace mfeit {

/// Experiment description parsed from a flat `key = value` file.
/// Defaults reproduce the reference benchmark: ellipse domain with semi-axes
/// 4 and 3, ellipse-like target, kappa = (3,2,1), k0 = 1, frequencies 1..8,
/// two currents f_i = <e_i, nu>, initial disk of radius 1/2.
struct ExperimentConfig {
    std::string domain_kind = "ellipse";  // "ellipse" | "star"
    double domain_a1 = 4.0;
    double domain_a2 = 3.0;
    StarShape domain_shape;  // used when domain_kind == "star"

    StarShape target;  // data-generating anomaly
    StarShape init;    // descent start

    double kappa1 = 3.0, kappa2 = 2.0, kappa3 = 1.0, k0 = 1.0;
    std::vector<double> frequencies{1, 2, 3, 4, 5, 6, 7, 8};
    int currents = 2;
    int nodes_data = 256;       // data-generation resolution (shifted grid)
    int nodes_inversion = 128;  // measurement / inversion resolution
    double noise = 0.0;         // relative complex Gaussian noise level
    std::uint64_t seed = 0;

    SeparationSettings stage_a;
    ShapeDescentSettings stage_b;

    ExperimentConfig();

    Curve domainCurve(int n_nodes, double theta0 = 0.0) const;
    void validate() const;

    static ExperimentConfig load(const std::string& path);
    static ExperimentConfig parse(const std::string& text);
};

}  // namespace mfeit
