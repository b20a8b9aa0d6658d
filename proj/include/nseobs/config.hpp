#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nseobs/gain.hpp"
#include "nseobs/grid.hpp"
#include "nseobs/observer.hpp"
#include "nseobs/solver.hpp"

namespace nseobs {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Experiment configuration parsed from a strict [section] key = value file.
/// Unknown sections or keys are errors; presets choose the default values.
struct ExperimentConfig {
  // [grid]
  double ell1, ell2;
  int n1, n2;
  double dealias_fraction;
  // [solver]
  double nu, dt, t_end, picard_tol;
  int picard_max_iters, record_every;
  bool nonlinear;
  // [forcing]
  std::string forcing_kind;   // kolmogorov | zero | custom-snapshot
  int forcing_mode;
  double target_l2;
  std::string forcing_snapshot;
  double perturb_amplitude, perturb_rate;
  // [observer]
  std::string observer_operator;  // average | point | both
  int obs_nx, obs_ny;
  std::string gain_mode;          // "auto" or a number
  double gain_value;
  std::string error_norm;         // l2 | h1
  int snapshot_every;
  // [gain]
  double kappa, beta, theta_factor;
  std::string c_omega_mode;       // "auto" or a number
  double c_omega_value;
  std::string h_mode;             // "auto" or a number
  double h_value;
  std::string grad_u0_mode;       // "auto" or a number
  double grad_u0_value;
  // [sweep]
  double sweep_nu_min, sweep_nu_max;
  int sweep_points;
  double sweep_c;
  // [sensitivity]
  double sens_ic_amplitude, sens_input_amplitude, sens_input_rate;
  double sens_nu_small, sens_nu_large;
  double sens_target_l2;
  // [inequality]
  std::uint64_t ineq_seed;
  int ineq_band, ineq_count;
  double ineq_decay;
  int ineq_gamma_points;
  double ineq_gamma_min, ineq_gamma_max;

  std::string preset = "desk";
  std::string source_text;   ///< raw file contents (digested into manifests)

  static ExperimentConfig defaults(const std::string& preset);
  static ExperimentConfig from_file(const std::string& path, const std::string& preset);
  static ExperimentConfig from_text(const std::string& text, const std::string& preset);

  GridSpec grid() const;
  SolverConfig solver() const;
  ForcingSpec forcing() const;
  ForcingSpec observer_input_model(std::uint64_t seed) const;
  DesignInputs design_inputs(double c_omega, double h, double grad_u0) const;

  void validate() const;
};

}  // namespace nseobs
