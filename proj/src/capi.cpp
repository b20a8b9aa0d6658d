#include "nseobs.h"

#include <cstring>
#include <string>

#include "nseobs/commands.hpp"
#include "nseobs/gain.hpp"
#include "nseobs/io.hpp"
#include "nseobs/solver.hpp"
#include "nseobs/spectral_ops.hpp"

namespace {

thread_local std::string g_last_error = "";

nseobs_status fail(nseobs_status code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

template <class F>
nseobs_status guarded(F&& f) {
  try {
    return f();
  } catch (const nseobs::StepFailure& e) {
    return fail(NSEOBS_ERR_STEP_FAILURE, e.what());
  } catch (const nseobs::ConfigError& e) {
    return fail(NSEOBS_ERR_CONFIG, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(NSEOBS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(NSEOBS_ERR_INTERNAL, e.what());
  }
}

}  // namespace

struct nseobs_grid {
  nseobs::GridSpec spec;
};

struct nseobs_field {
  nseobs::VelocityField field;
};

extern "C" {

const char* nseobs_version(void) { return nseobs::kVersion; }

const char* nseobs_last_error(void) { return g_last_error.c_str(); }

nseobs_status nseobs_grid_create(double ell1, double ell2, int n1, int n2,
                                 double dealias_fraction, nseobs_grid** out) {
  if (!out) return fail(NSEOBS_ERR_INVALID_ARGUMENT, "out pointer is NULL");
  return guarded([&] {
    *out = new nseobs_grid{nseobs::GridSpec(ell1, ell2, n1, n2, dealias_fraction)};
    return NSEOBS_OK;
  });
}

void nseobs_grid_destroy(nseobs_grid* grid) { delete grid; }

double nseobs_grid_lambda1(const nseobs_grid* grid) {
  return grid ? grid->spec.lambda1() : 0.0;
}

nseobs_status nseobs_field_zero(const nseobs_grid* grid, nseobs_field** out) {
  if (!grid || !out) return fail(NSEOBS_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = new nseobs_field{nseobs::VelocityField::zero(grid->spec)};
    return NSEOBS_OK;
  });
}

nseobs_status nseobs_field_taylor_green(const nseobs_grid* grid, nseobs_field** out) {
  if (!grid || !out) return fail(NSEOBS_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = new nseobs_field{nseobs::VelocityField::taylor_green(grid->spec)};
    return NSEOBS_OK;
  });
}

nseobs_status nseobs_field_peaks(const nseobs_grid* grid, nseobs_field** out) {
  if (!grid || !out) return fail(NSEOBS_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = new nseobs_field{nseobs::peaks_initial_condition(grid->spec)};
    return NSEOBS_OK;
  });
}

nseobs_status nseobs_field_kolmogorov(const nseobs_grid* grid, int mode, double target_l2,
                                      nseobs_field** out) {
  if (!grid || !out) return fail(NSEOBS_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = new nseobs_field{nseobs::kolmogorov_forcing(grid->spec, mode, target_l2)};
    return NSEOBS_OK;
  });
}

void nseobs_field_destroy(nseobs_field* field) { delete field; }

nseobs_status nseobs_field_norms(const nseobs_field* field, int oversample, nseobs_norms* out) {
  if (!field || !out) return fail(NSEOBS_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    nseobs::NormReport r = nseobs::norms(field->field, oversample);
    out->l2 = r.l2;
    out->grad_l2 = r.grad_l2;
    out->h1 = r.h1;
    out->lap_l2 = r.lap_l2;
    out->linf = r.linf;
    out->linf_oversampling = r.linf_oversampling;
    return NSEOBS_OK;
  });
}

nseobs_status nseobs_field_save(const nseobs_field* field, const char* path) {
  if (!field || !path) return fail(NSEOBS_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    nseobs::save_nsef1(field->field, path);
    return NSEOBS_OK;
  });
}

nseobs_status nseobs_field_load(const char* path, nseobs_field** out) {
  if (!path || !out) return fail(NSEOBS_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&]() -> nseobs_status {
    try {
      *out = new nseobs_field{nseobs::load_nsef1(path)};
    } catch (const std::runtime_error& e) {
      return fail(NSEOBS_ERR_IO, e.what());
    }
    return NSEOBS_OK;
  });
}

nseobs_status nseobs_gain_design(const nseobs_gain_inputs* inputs, nseobs_gain_report* out) {
  if (!inputs || !out) return fail(NSEOBS_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    nseobs::DesignInputs in;
    in.nu = inputs->nu;
    in.ell1 = inputs->ell1;
    in.ell2 = inputs->ell2;
    in.f_l2 = inputs->f_l2;
    in.kappa = inputs->kappa;
    in.c_omega = inputs->c_omega;
    in.h = inputs->h;
    in.beta = inputs->beta;
    in.theta_factor = inputs->theta_factor;
    in.grad_u0_l2 = inputs->grad_u0_l2;
    nseobs::GainReport r = nseobs::build_gain_report(in);
    *out = nseobs_gain_report{};
    out->feasible = r.feasible ? 1 : 0;
    out->lambda1 = r.lambda1;
    out->c1 = r.c1;
    out->c2 = r.c2;
    out->c_nabla = r.c_nabla;
    out->gamma_zero = r.gamma_zero;
    out->gamma_max = r.gamma_max;
    out->theta_at_max = r.theta_at_max;
    out->t_star = r.t_star;
    out->T_window = r.T_window;
    out->h2_bound_c1 = r.h2_bound_c1;
    out->h_bound_c2 = r.h_bound_c2;
    out->L_nabla = r.L_nabla;
    out->L_delta = r.L_delta;
    out->detect_h_bound_c1 = r.detect_h_bound_c1;
    out->detect_h_bound_c2 = r.detect_h_bound_c2;
    out->azouani = r.azouani;
    out->log10_ratio = r.log10_ratio;
    out->h_feasible_c1 = r.h_feasible_c1 ? 1 : 0;
    if (!r.feasible) return fail(NSEOBS_ERR_INFEASIBLE, "gain design infeasible");
    return NSEOBS_OK;
  });
}

nseobs_status nseobs_run(const char* command, const char* config_path, const char* out_dir,
                         uint64_t seed, const char* preset) {
  if (!command || !out_dir) return fail(NSEOBS_ERR_INVALID_ARGUMENT, "NULL command or out_dir");
  return guarded([&]() -> nseobs_status {
    std::string err;
    int code = nseobs::run_command(command, config_path ? config_path : "", out_dir, seed,
                                   preset ? preset : "desk", &err);
    if (code == 0) return NSEOBS_OK;
    g_last_error = err.empty() ? "command failed with exit code " + std::to_string(code) : err;
    if (code == 3) return NSEOBS_ERR_STEP_FAILURE;
    return NSEOBS_ERR_CONFIG;
  });
}

}  // extern "C"
