#include "mfeit/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mfeit/errors.hpp"
#include "mfeit/forward.hpp"
#include "mfeit/spectrum.hpp"
#include "mfeit/svg.hpp"
#include "mfeit/trig.hpp"

namespace mfeit {

namespace {

namespace fs = std::filesystem;

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

Eigen::VectorXd current_neumann(const Curve& c, int which) {
    Eigen::VectorXd f(static_cast<int>(c.nodes.size()));
    for (int j = 0; j < f.size(); ++j)
        f[j] = (which == 0) ? c.normals[static_cast<std::size_t>(j)].x
                            : c.normals[static_cast<std::size_t>(j)].y;
    return f;
}

Eigen::VectorXd curve_weights(const Curve& c) {
    Eigen::VectorXd w(static_cast<int>(c.weights.size()));
    for (int j = 0; j < w.size(); ++j) w[j] = c.weights[static_cast<std::size_t>(j)];
    return w;
}

Eigen::VectorXd recenter(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
    return v.array() - w.dot(v) / w.sum();
}

void write_u0_csv(const std::string& path, const Curve& curve,
                  const std::vector<Eigen::VectorXd>& u0) {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot write " + path);
    os << "current,node,x1,x2,u0\n";
    char buf[160];
    for (std::size_t i = 0; i < u0.size(); ++i)
        for (int j = 0; j < u0[i].size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%zu,%d,%.17g,%.17g,%.17g\n", i + 1, j,
                          curve.nodes[static_cast<std::size_t>(j)].x,
                          curve.nodes[static_cast<std::size_t>(j)].y, u0[i][j]);
            os << buf;
        }
}

std::vector<Eigen::VectorXd> read_u0_csv(const std::string& path, int n_nodes) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open " + path);
    std::string line;
    if (!std::getline(is, line) || line != "current,node,x1,x2,u0")
        throw ValidationError(path + ": unexpected header");
    std::vector<Eigen::VectorXd> u0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != 5) throw ValidationError(path + ": bad column count");
        const int i = static_cast<int>(row[0]) - 1;
        const int j = static_cast<int>(row[1]);
        if (i < 0 || j < 0 || j >= n_nodes) throw ValidationError(path + ": bad indices");
        if (static_cast<int>(u0.size()) <= i)
            u0.resize(static_cast<std::size_t>(i) + 1, Eigen::VectorXd::Zero(n_nodes));
        u0[static_cast<std::size_t>(i)][j] = row[4];
    }
    if (u0.empty()) throw ValidationError(path + ": no rows");
    return u0;
}

CauchyData build_cauchy(const ExperimentConfig& cfg, const std::vector<Eigen::VectorXd>& u0) {
    CauchyData cd;
    cd.domain = cfg.domainCurve(cfg.nodes_inversion);
    const Eigen::VectorXd w = curve_weights(cd.domain);
    const int nc = std::min<int>(cfg.currents, static_cast<int>(u0.size()));
    for (int i = 0; i < nc; ++i) {
        cd.neumann.push_back(current_neumann(cd.domain, i));
        cd.dirichlet.push_back(recenter(u0[static_cast<std::size_t>(i)], w));
    }
    return cd;
}

struct StageBRows {
    std::vector<double> iter, j, symdiff, alpha;
};

StageBRows read_stage_b(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open " + path);
    std::string line;
    if (!std::getline(is, line) || line != "iter,J,symdiff,alpha")
        throw ValidationError(path + ": unexpected header");
    StageBRows r;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double it, j, sd, a;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &it, &j, &sd, &a) != 4)
            throw ValidationError(path + ": bad row");
        r.iter.push_back(it);
        r.j.push_back(j);
        r.symdiff.push_back(sd);
        r.alpha.push_back(a);
    }
    if (r.iter.empty()) throw ValidationError(path + ": no rows");
    return r;
}

}  // namespace

MultiFreqDataset generate_synthetic(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    fs::create_directories(out_dir);

    // Data are simulated on a finer grid shifted by half a data-grid spacing,
    // then interpolated to the measurement nodes: the inversion never sees
    // its own discretization.
    const double shift = 3.141592653589793238462643383279 / cfg.nodes_data;
    const Curve dom_data = cfg.domainCurve(cfg.nodes_data, shift);
    const Curve dom_inv = cfg.domainCurve(cfg.nodes_inversion);
    const Curve ano_data = make_star_curve(cfg.target, cfg.nodes_data);
    const ForwardSolver solver(dom_data, ano_data);
    const ConductivityProfile prof{cfg.kappa1, cfg.kappa2, cfg.kappa3, cfg.k0};

    Eigen::VectorXd inv_params(cfg.nodes_inversion);
    for (int j = 0; j < cfg.nodes_inversion; ++j)
        inv_params[j] = dom_inv.params[static_cast<std::size_t>(j)];
    const Eigen::VectorXd w_inv = curve_weights(dom_inv);

    MultiFreqDataset d;
    d.nodes = dom_inv.nodes;
    d.weights = w_inv;
    d.omegas = cfg.frequencies;
    std::vector<Eigen::VectorXd> u0_true;
    for (int i = 0; i < cfg.currents; ++i) {
        const Eigen::VectorXd f_data = current_neumann(dom_data, i);
        const Eigen::VectorXd f_inv = current_neumann(dom_inv, i);
        Eigen::MatrixXcd vals(static_cast<int>(cfg.frequencies.size()), cfg.nodes_inversion);
        for (std::size_t p = 0; p < cfg.frequencies.size(); ++p) {
            const auto sol = solver.solveTransmission(prof.k(cfg.frequencies[p]), cfg.k0, f_data);
            vals.row(static_cast<int>(p)) = trig::resample(sol.trace, shift, inv_params).transpose();
        }
        d.values.push_back(vals);
        d.neumann.push_back(f_inv);
        d.lift.push_back(harmonic_lift(dom_inv, f_inv));
        const auto pc = solver.solvePerfectConductor(f_data);
        u0_true.push_back(
            recenter(trig::resample_real(pc.trace.real(), shift, inv_params), w_inv));
    }

    if (cfg.noise > 0.0) {
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (std::size_t p = 0; p < cfg.frequencies.size(); ++p) {
            double sq = 0.0;
            for (const auto& vals : d.values) sq += vals.row(static_cast<int>(p)).squaredNorm();
            const double rms = std::sqrt(sq / (cfg.currents * cfg.nodes_inversion));
            const double sigma = cfg.noise * rms / std::sqrt(2.0);
            for (auto& vals : d.values)
                for (int j = 0; j < cfg.nodes_inversion; ++j)
                    vals(static_cast<int>(p), j) +=
                        std::complex<double>(sigma * gauss(rng), sigma * gauss(rng));
        }
    }

    d.save(join(out_dir, "data.csv"), join(out_dir, "lift.csv"));
    cfg.target.saveFile(join(out_dir, "truth_shape.txt"));
    write_u0_csv(join(out_dir, "truth_u0.csv"), dom_inv, u0_true);
    return d;
}

SeparationResult run_separate(const ExperimentConfig& cfg, const std::string& out_dir) {
    const MultiFreqDataset d =
        MultiFreqDataset::load(join(out_dir, "data.csv"), join(out_dir, "lift.csv"));
    const SeparationResult res = run_separation(d, cfg.stage_a);

    std::ofstream hist(join(out_dir, "stage_a.csv"));
    if (!hist) throw ValidationError("cannot write stage_a.csv");
    hist << "iter,Jm,kappa1,kappa2,kappa3\n";
    char buf[200];
    for (std::size_t m = 0; m < res.jm_history.size(); ++m) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g\n", m, res.jm_history[m],
                      res.kappa_history[m][0], res.kappa_history[m][1], res.kappa_history[m][2]);
        hist << buf;
    }

    std::ofstream kf(join(out_dir, "kappa.csv"));
    kf << "kappa1,kappa2,kappa3,identifiable,converged\n";
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d,%d\n", res.state.kappa[0],
                  res.state.kappa[1], res.state.kappa[2], res.identifiable ? 1 : 0,
                  res.converged ? 1 : 0);
    kf << buf;

    const Curve dom_inv = cfg.domainCurve(cfg.nodes_inversion);
    std::vector<Eigen::VectorXd> u0;
    for (int i = 0; i < d.numCurrents(); ++i)
        u0.push_back(lsq_recover_u0(d, i, res.state.kappa, cfg.stage_a).u0);
    write_u0_csv(join(out_dir, "u0_recovered.csv"), dom_inv, u0);
    return res;
}

ShapeDescentResult run_reconstruct(const ExperimentConfig& cfg, const std::string& out_dir,
                                   bool bypass_stage_a) {
    const std::string src = bypass_stage_a ? "truth_u0.csv" : "u0_recovered.csv";
    const auto u0 = read_u0_csv(join(out_dir, src), cfg.nodes_inversion);
    const CauchyData cd = build_cauchy(cfg, u0);
    cfg.init.saveFile(join(out_dir, "shape_init.txt"));
    const ShapeDescentResult res = run_shape_descent(cfg.init, cd, cfg.stage_b, &cfg.target);

    std::ofstream hist(join(out_dir, "stage_b.csv"));
    if (!hist) throw ValidationError("cannot write stage_b.csv");
    hist << "iter,J,symdiff,alpha\n";
    char buf[200];
    for (std::size_t m = 0; m < res.j_history.size(); ++m) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n", m, res.j_history[m],
                      res.symdiff_history[m], res.alpha_history[m]);
        hist << buf;
    }
    res.shape.saveFile(join(out_dir, "shape_final.txt"));
    return res;
}

void RunReport::save(const std::string& out_dir) const {
    std::ofstream os(join(out_dir, "report.csv"));
    if (!os) throw ValidationError("cannot write report.csv");
    os << "key,value\n";
    char buf[160];
    auto num = [&](const char* key, double v) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g\n", key, v);
        os << buf;
    };
    num("kappa1_recovered", kappa_recovered[0]);
    num("kappa2_recovered", kappa_recovered[1]);
    num("kappa3_recovered", kappa_recovered[2]);
    num("kappa1_error", kappa_error[0]);
    num("kappa2_error", kappa_error[1]);
    num("kappa3_error", kappa_error[2]);
    for (std::size_t i = 0; i < u0_l2_error.size(); ++i) {
        std::string key = "u0_l2_error_" + std::to_string(i + 1);
        num(key.c_str(), u0_l2_error[i]);
    }
    num("final_j", final_j);
    num("final_symdiff", final_symdiff);
    num("stage_a_iterations", stage_a_iterations);
    num("stage_b_iterations", stage_b_iterations);
    num("stage_a_converged", stage_a_converged ? 1 : 0);
    num("stage_b_converged", stage_b_converged ? 1 : 0);
    num("bypassed_stage_a", bypassed_stage_a ? 1 : 0);

    std::ofstream ts(join(out_dir, "timings.txt"));
    ts << "generate_seconds " << t_generate << "\n"
       << "stage_a_seconds " << t_stage_a << "\n"
       << "stage_b_seconds " << t_stage_b << "\n";
}

RunReport run_full_pipeline(const ExperimentConfig& cfg, const std::string& out_dir,
                            bool bypass_stage_a) {
    RunReport rep;
    rep.bypassed_stage_a = bypass_stage_a;

    double t0 = now_seconds();
    generate_synthetic(cfg, out_dir);
    rep.t_generate = now_seconds() - t0;

    if (!bypass_stage_a) {
        t0 = now_seconds();
        const SeparationResult sa = run_separate(cfg, out_dir);
        rep.t_stage_a = now_seconds() - t0;
        rep.kappa_recovered = sa.state.kappa;
        rep.kappa_error = {std::abs(sa.state.kappa[0] - cfg.kappa1),
                           std::abs(sa.state.kappa[1] - cfg.kappa2),
                           std::abs(sa.state.kappa[2] - cfg.kappa3)};
        rep.stage_a_iterations = sa.iterations;
        rep.stage_a_converged = sa.converged;

        const auto u0_rec = read_u0_csv(join(out_dir, "u0_recovered.csv"), cfg.nodes_inversion);
        const auto u0_true = read_u0_csv(join(out_dir, "truth_u0.csv"), cfg.nodes_inversion);
        const Eigen::VectorXd w = curve_weights(cfg.domainCurve(cfg.nodes_inversion));
        for (std::size_t i = 0; i < u0_rec.size() && i < u0_true.size(); ++i) {
            const Eigen::VectorXd diff = u0_rec[i] - u0_true[i];
            rep.u0_l2_error.push_back(std::sqrt(diff.cwiseAbs2().dot(w)) /
                                      std::sqrt(u0_true[i].cwiseAbs2().dot(w)));
        }
    }

    t0 = now_seconds();
    const ShapeDescentResult sb = run_reconstruct(cfg, out_dir, bypass_stage_a);
    rep.t_stage_b = now_seconds() - t0;
    rep.final_j = sb.j_history.back();
    rep.final_symdiff = sb.symdiff_history.empty() ? -1.0 : sb.symdiff_history.back();
    rep.stage_b_iterations = sb.iterations;
    rep.stage_b_converged = sb.converged;

    rep.save(out_dir);
    emit_plots(cfg, out_dir);
    return rep;
}

void emit_plots(const ExperimentConfig& cfg, const std::string& out_dir) {
    const StarShape target = StarShape::loadFile(join(out_dir, "truth_shape.txt"));
    const StarShape recon = StarShape::loadFile(join(out_dir, "shape_final.txt"));
    const Curve dom = cfg.domainCurve(256);
    write_overlay_svg(join(out_dir, "overlay.svg"), make_star_curve(target, 256),
                      make_star_curve(recon, 256), &dom);

    const StageBRows rows = read_stage_b(join(out_dir, "stage_b.csv"));
    std::vector<double> logj(rows.j.size());
    for (std::size_t m = 0; m < rows.j.size(); ++m)
        logj[m] = std::log10(std::max(rows.j[m], 1e-300));
    write_chart_svg(join(out_dir, "logj.svg"), rows.iter, logj, "iteration", "log10 J",
                    "Misfit during descent");
    write_chart_svg(join(out_dir, "symdiff.svg"), rows.iter, rows.symdiff, "iteration",
                    "symmetric difference", "Shape error during descent");
    write_chart_svg(join(out_dir, "symdiff_vs_logj.svg"), logj, rows.symdiff, "log10 J",
                    "symmetric difference", "Shape error vs misfit");
}

void emit_spectrum(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    fs::create_directories(out_dir);
    const Curve dom = cfg.domainCurve(cfg.nodes_inversion);
    const Curve ano = make_star_curve(cfg.target, cfg.nodes_inversion);
    const ForwardSolver solver(dom, ano);
    const auto pairs = estimate_spectrum(solver, 16);
    std::ofstream os(join(out_dir, "spectrum.csv"));
    if (!os) throw ValidationError("cannot write spectrum.csv");
    os << "mode,lambda,family,residual\n";
    char buf[96];
    for (std::size_t n = 0; n < pairs.size(); ++n) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%c,%.17g\n", n + 1, pairs[n].lambda,
                      pairs[n].family, std::abs(pairs[n].lambda - 0.5));
        os << buf;
    }
}

}  // namespace mfeit
