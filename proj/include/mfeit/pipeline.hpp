#pragma once

#include <array>
#include <string>
#include <vector>

#include "mfeit/config.hpp"
#include "mfeit/profile_separation.hpp"
#include "mfeit/shape_reconstruction.hpp"

namespace mfeit {

/// Per-run metrics, recomputed from raw artifacts.  Timings live in their own
/// file so the CSV report stays bit-identical across runs of one config+seed.
struct RunReport {
    std::array<double, 3> kappa_recovered{};
    std::array<double, 3> kappa_error{};
    std::vector<double> u0_l2_error;  // per current, relative
    double final_j = -1.0;
    double final_symdiff = -1.0;
    int stage_a_iterations = 0;
    int stage_b_iterations = 0;
    bool stage_a_converged = false;
    bool stage_b_converged = false;
    bool bypassed_stage_a = false;
    double t_generate = 0.0, t_stage_a = 0.0, t_stage_b = 0.0;  // seconds

    void save(const std::string& out_dir) const;  // report.csv + timings.txt
};

/// Simulates the frequency sweep at data resolution on a shifted grid,
/// interpolates to the measurement nodes, optionally adds seeded noise, and
/// writes data.csv / lift.csv plus ground-truth sidecars.
MultiFreqDataset generate_synthetic(const ExperimentConfig& cfg, const std::string& out_dir);

/// Stage A on the dataset in out_dir; writes stage_a.csv, kappa.csv,
/// u0_recovered.csv.
SeparationResult run_separate(const ExperimentConfig& cfg, const std::string& out_dir);

/// Stage B from recovered (or, when bypassing, true) u0 traces; writes
/// stage_b.csv and shape snapshots.
ShapeDescentResult run_reconstruct(const ExperimentConfig& cfg, const std::string& out_dir,
                                   bool bypass_stage_a);

/// gen + separate + reconstruct + report + plots.
RunReport run_full_pipeline(const ExperimentConfig& cfg, const std::string& out_dir,
                            bool bypass_stage_a = false);

/// Rebuilds the four SVGs from the CSV artifacts in out_dir.
void emit_plots(const ExperimentConfig& cfg, const std::string& out_dir);

/// Writes spectrum.csv (n, lambda, family, resolved) for the config target.
void emit_spectrum(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace mfeit
