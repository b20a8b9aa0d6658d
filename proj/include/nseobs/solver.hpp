#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nseobs/field.hpp"

namespace nseobs {

struct SolverConfig {
  double nu = 0.01;
  double dt = 0.0025;
  double t_end = 10.0;
  double picard_tol = 1e-12;        ///< relative to ||v||_L2
  int picard_max_iters = 100;
  int record_every = 1;
  bool include_nonlinear = true;    ///< false gives the Stokes limit (test hook)

  void validate() const;
};

struct PerturbationSpec {
  double amplitude = 0.0;   ///< pointwise sup bound of the added field
  double rate = 0.0;        ///< exponential decay rate in time
  std::uint64_t seed = 1;
};

struct ForcingSpec {
  enum class Kind { kolmogorov, zero, custom_snapshot };
  Kind kind = Kind::kolmogorov;
  int mode = 6;
  double target_l2 = 0.1;
  std::string snapshot_path;
  std::optional<PerturbationSpec> perturbation;
};

/// Realized forcing: a fixed base field plus an optional decaying perturbation.
class Forcing {
 public:
  Forcing(VelocityField base, std::optional<VelocityField> pert, double rate)
      : base_(std::move(base)), pert_(std::move(pert)), rate_(rate) {}

  static Forcing make(const GridSpec& grid, const ForcingSpec& spec);

  VelocityField at(double t) const;
  const VelocityField& base() const { return base_; }
  bool time_dependent() const { return pert_.has_value(); }

 private:
  VelocityField base_;
  std::optional<VelocityField> pert_;
  double rate_;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> l2, grad_l2, h1, lap_l2;
  std::vector<std::string> snapshots;
};

struct StepFailure : std::runtime_error {
  StepFailure(double time, double residual, int iters);
  double time;
  double residual;
  int iters;
};

/// f = (a sin(mode 2 pi y / ell2), 0) with a chosen so ||f||_L2 = target_l2.
VelocityField kolmogorov_forcing(const GridSpec& grid, int mode, double target_l2);

/// Velocity whose vorticity is the mean-removed peaks bump function mapped
/// affinely from [0,ell1]x[0,ell2] onto [-3,3]^2.
VelocityField peaks_initial_condition(const GridSpec& grid);

/// Projected strong-form right-hand side -P(v.grad v) - nu A v + P f.
VelocityField rhs(const VelocityField& v, const VelocityField& f, double nu,
                  bool include_nonlinear = true);

/// Extra midpoint-dependent forcing term (observer injection hook).
using MidpointTerm = std::function<VelocityField(const VelocityField& mid)>;

struct StepStats {
  int iters = 0;
  double residual = 0.0;
};

/// One implicit-midpoint step: solves v+ = v + dt*rhs((v+v+)/2, f_mid) by
/// Picard iteration with the viscous part handled exactly per mode.
/// Throws StepFailure on non-convergence.
VelocityField implicit_midpoint_step(const VelocityField& v, const VelocityField& f_mid,
                                     const SolverConfig& cfg, double t = 0.0,
                                     const MidpointTerm& extra = nullptr,
                                     StepStats* stats = nullptr);

/// Step of length cfg.dt that halves dt and sub-steps (recursively, up to
/// max_halvings) whenever the Picard iteration stalls. Used by callers that
/// push into stiff transients; the fixed-step integrator stays strict.
VelocityField midpoint_step_with_fallback(const VelocityField& v, const Forcing& forcing,
                                          const SolverConfig& cfg, double t,
                                          int max_halvings = 3);

using RecordCallback =
    std::function<void(int step, double t, const VelocityField& v, TrajectoryRecord& rec)>;

TrajectoryRecord simulate(const VelocityField& v0, const Forcing& forcing,
                          const SolverConfig& cfg, const RecordCallback& on_record = nullptr);

struct EnergyAuditRow {
  std::string check;
  double s, t;
  double lhs, rhs;
  double slack;   ///< rhs - lhs; negative means violated
};

struct EnergyAudit {
  double worst_slack = 0.0;
  std::size_t checked = 0;
  std::vector<EnergyAuditRow> violations;   ///< rows with slack < -1e-9
};

/// Checks the L2/gradient decay bounds and the windowed ||Au||^2 average bound
/// on every recorded pair (s, t).
EnergyAudit energy_audit(const TrajectoryRecord& rec, double f_l2, double nu,
                         const GridSpec& grid);

}  // namespace nseobs
