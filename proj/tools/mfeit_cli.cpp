// Command-line front end; talks to the shared library through the C API only.
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "mfeit.h"

namespace {

struct SessionDeleter {
    void operator()(mfeit_session* s) const { mfeit_close(s); }
};

int finish(mfeit_session* s, int rc) {
    if (rc != MFEIT_OK) std::fprintf(stderr, "error: %s\n", mfeit_last_error(s));
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mfEIT laboratory: simulate multifrequency boundary data and "
                 "reconstruct the conductivity profile and anomaly shape"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool bypass = false;

    app.add_option("--config", config_path, "experiment config file (omit for defaults)");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", seed, "override the config random seed")
        ->each([&](const std::string&) { seed_set = true; });

    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
    auto* separate = app.add_subcommand("separate", "Stage A: conductivity profile and u0");
    auto* reconstruct = app.add_subcommand("reconstruct", "Stage B: anomaly shape descent");
    auto* pipeline = app.add_subcommand("pipeline", "full run: gen + separate + reconstruct");
    auto* spectrum = app.add_subcommand("spectrum", "Poincare spectrum of the config target");
    auto* plot = app.add_subcommand("plot", "rebuild SVGs from existing CSV artifacts");
    reconstruct->add_flag("--bypass-stage-a", bypass, "use the true u0 sidecar instead of Stage A output");
    pipeline->add_flag("--bypass-stage-a", bypass, "use the true u0 sidecar instead of Stage A output");

    CLI11_PARSE(app, argc, argv);

    std::unique_ptr<mfeit_session, SessionDeleter> session(mfeit_open());
    if (!session) {
        std::fprintf(stderr, "error: cannot create session\n");
        return MFEIT_ERR_NUMERIC;
    }
    mfeit_session* s = session.get();

    if (!config_path.empty())
        if (int rc = mfeit_load_config(s, config_path.c_str())) return finish(s, rc);
    if (seed_set)
        if (int rc = mfeit_set_seed(s, seed)) return finish(s, rc);

    const char* dir = out_dir.c_str();
    int rc = MFEIT_OK;
    if (gen->parsed()) rc = mfeit_generate(s, dir);
    else if (separate->parsed()) rc = mfeit_separate(s, dir);
    else if (reconstruct->parsed()) rc = mfeit_reconstruct(s, dir, bypass ? 1 : 0);
    else if (pipeline->parsed()) rc = mfeit_pipeline(s, dir, bypass ? 1 : 0);
    else if (spectrum->parsed()) rc = mfeit_spectrum(s, dir);
    else if (plot->parsed()) rc = mfeit_plots(s, dir);
    return finish(s, rc);
}
