#include "mfeit.h"

#include <string>

#include "mfeit/config.hpp"
#include "mfeit/errors.hpp"
#include "mfeit/pipeline.hpp"

struct mfeit_session {
    mfeit::ExperimentConfig config;
    std::string last_error;
};

namespace {

template <typename Fn>
int guarded(mfeit_session* s, Fn&& fn) {
    if (!s) return MFEIT_ERR_VALIDATION;
    try {
        fn();
        s->last_error.clear();
        return MFEIT_OK;
    } catch (const mfeit::ValidationError& e) {
        s->last_error = e.what();
        return MFEIT_ERR_VALIDATION;
    } catch (const mfeit::NumericError& e) {
        s->last_error = e.what();
        return MFEIT_ERR_NUMERIC;
    } catch (const std::exception& e) {
        s->last_error = e.what();
        return MFEIT_ERR_NUMERIC;
    }
}

int require(mfeit_session* s, const char* arg, const char* what) {
    if (arg) return MFEIT_OK;
    if (s) s->last_error = std::string("null ") + what;
    return MFEIT_ERR_VALIDATION;
}

}  // namespace

extern "C" {

mfeit_session* mfeit_open(void) {
    try {
        return new mfeit_session();
    } catch (...) {
        return nullptr;
    }
}

void mfeit_close(mfeit_session* s) { delete s; }

const char* mfeit_last_error(const mfeit_session* s) {
    return s ? s->last_error.c_str() : "null session";
}

int mfeit_load_config(mfeit_session* s, const char* config_path) {
    if (int rc = require(s, config_path, "config path")) return rc;
    return guarded(s, [&] { s->config = mfeit::ExperimentConfig::load(config_path); });
}

int mfeit_set_seed(mfeit_session* s, uint64_t seed) {
    return guarded(s, [&] { s->config.seed = seed; });
}

int mfeit_generate(mfeit_session* s, const char* out_dir) {
    if (int rc = require(s, out_dir, "output directory")) return rc;
    return guarded(s, [&] { mfeit::generate_synthetic(s->config, out_dir); });
}

int mfeit_separate(mfeit_session* s, const char* out_dir) {
    if (int rc = require(s, out_dir, "output directory")) return rc;
    return guarded(s, [&] { mfeit::run_separate(s->config, out_dir); });
}

int mfeit_reconstruct(mfeit_session* s, const char* out_dir, int bypass_stage_a) {
    if (int rc = require(s, out_dir, "output directory")) return rc;
    return guarded(s, [&] { mfeit::run_reconstruct(s->config, out_dir, bypass_stage_a != 0); });
}

int mfeit_pipeline(mfeit_session* s, const char* out_dir, int bypass_stage_a) {
    if (int rc = require(s, out_dir, "output directory")) return rc;
    return guarded(s, [&] { mfeit::run_full_pipeline(s->config, out_dir, bypass_stage_a != 0); });
}

int mfeit_spectrum(mfeit_session* s, const char* out_dir) {
    if (int rc = require(s, out_dir, "output directory")) return rc;
    return guarded(s, [&] { mfeit::emit_spectrum(s->config, out_dir); });
}

int mfeit_plots(mfeit_session* s, const char* out_dir) {
    if (int rc = require(s, out_dir, "output directory")) return rc;
    return guarded(s, [&] { mfeit::emit_plots(s->config, out_dir); });
}

}  // extern "C"
