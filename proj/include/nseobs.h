/* C API for the nseobs library: periodic 2D Navier-Stokes simulation,
 * observation operators, Luenberger observer runs, and observer gain design.
 * All functions return NSEOBS_OK on success; on error they return a status
 * code and set a thread-local message readable via nseobs_last_error(). */
#ifndef NSEOBS_H
#define NSEOBS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  NSEOBS_OK = 0,
  NSEOBS_ERR_INVALID_ARGUMENT = 1,
  NSEOBS_ERR_IO = 2,
  NSEOBS_ERR_STEP_FAILURE = 3,
  NSEOBS_ERR_INFEASIBLE = 4,
  NSEOBS_ERR_CONFIG = 5,
  NSEOBS_ERR_INTERNAL = 6
} nseobs_status;

typedef struct nseobs_grid nseobs_grid;
typedef struct nseobs_field nseobs_field;

const char* nseobs_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* nseobs_last_error(void);

nseobs_status nseobs_grid_create(double ell1, double ell2, int n1, int n2,
                                 double dealias_fraction, nseobs_grid** out);
void nseobs_grid_destroy(nseobs_grid* grid);
double nseobs_grid_lambda1(const nseobs_grid* grid);

nseobs_status nseobs_field_zero(const nseobs_grid* grid, nseobs_field** out);
nseobs_status nseobs_field_taylor_green(const nseobs_grid* grid, nseobs_field** out);
nseobs_status nseobs_field_peaks(const nseobs_grid* grid, nseobs_field** out);
nseobs_status nseobs_field_kolmogorov(const nseobs_grid* grid, int mode, double target_l2,
                                      nseobs_field** out);
void nseobs_field_destroy(nseobs_field* field);

typedef struct {
  double l2;
  double grad_l2;
  double h1;
  double lap_l2;
  double linf;
  int linf_oversampling;
} nseobs_norms;

nseobs_status nseobs_field_norms(const nseobs_field* field, int oversample, nseobs_norms* out);

/* NSEF1 snapshot round trip. */
nseobs_status nseobs_field_save(const nseobs_field* field, const char* path);
nseobs_status nseobs_field_load(const char* path, nseobs_field** out);

typedef struct {
  double nu;
  double ell1;
  double ell2;
  double f_l2;
  double kappa;
  double c_omega;
  double h;
  double beta;
  double theta_factor;
  double grad_u0_l2;
} nseobs_gain_inputs;

typedef struct {
  int feasible;
  double lambda1, c1, c2, c_nabla;
  double gamma_zero, gamma_max, theta_at_max;
  double t_star, T_window;
  double h2_bound_c1, h_bound_c2;
  double L_nabla, L_delta;
  double detect_h_bound_c1, detect_h_bound_c2;
  double azouani, log10_ratio;
  int h_feasible_c1;
} nseobs_gain_report;

nseobs_status nseobs_gain_design(const nseobs_gain_inputs* inputs, nseobs_gain_report* out);

/* Runs one of: simulate, sensitivity, observe, gain-report, compare-bounds,
 * inequality-audit. config_path may be NULL (preset defaults); preset is
 * "desk" (default when NULL) or "paper". Returns the command's exit status
 * mapped onto nseobs_status values. */
nseobs_status nseobs_run(const char* command, const char* config_path, const char* out_dir,
                         uint64_t seed, const char* preset);

#ifdef __cplusplus
}
#endif

#endif /* NSEOBS_H */
