/* C interface to the mfEIT laboratory: synthetic data generation, the
 * two-stage inversion, spectrum export, and plot emission.  All functions
 * return MFEIT_OK, MFEIT_ERR_VALIDATION, or MFEIT_ERR_NUMERIC; the message for
 * the last failure on a session is available via mfeit_last_error. */
#ifndef MFEIT_H
#define MFEIT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define MFEIT_OK 0
#define MFEIT_ERR_VALIDATION 2
#define MFEIT_ERR_NUMERIC 3

typedef struct mfeit_session mfeit_session;

mfeit_session* mfeit_open(void);
void mfeit_close(mfeit_session* s);

/* Message of the most recent failing call; empty string if none. */
const char* mfeit_last_error(const mfeit_session* s);

/* Load an experiment config file; a session starts with built-in defaults. */
int mfeit_load_config(mfeit_session* s, const char* config_path);

/* Override the config's random seed. */
int mfeit_set_seed(mfeit_session* s, uint64_t seed);

/* Simulate the frequency sweep and write the dataset plus ground-truth
 * sidecars into out_dir. */
int mfeit_generate(mfeit_session* s, const char* out_dir);

/* Stage A on the dataset in out_dir. */
int mfeit_separate(mfeit_session* s, const char* out_dir);

/* Stage B from recovered u0 traces (or the true ones when bypassing). */
int mfeit_reconstruct(mfeit_session* s, const char* out_dir, int bypass_stage_a);

/* Full run: generate, separate, reconstruct, report, plots. */
int mfeit_pipeline(mfeit_session* s, const char* out_dir, int bypass_stage_a);

/* Poincare spectrum of the config target, written to out_dir/spectrum.csv. */
int mfeit_spectrum(mfeit_session* s, const char* out_dir);

/* Rebuild the SVGs from the CSV artifacts in out_dir. */
int mfeit_plots(mfeit_session* s, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* MFEIT_H */
