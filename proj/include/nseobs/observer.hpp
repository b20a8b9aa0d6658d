#pragma once

#include <memory>

#include "nseobs/observation.hpp"
#include "nseobs/solver.hpp"

namespace nseobs {

enum class ErrorNorm { l2, h1 };

struct ObserverConfig {
  std::shared_ptr<const LinearObservation> op;
  double gain = 0.0;   ///< L > 0
  SolverConfig solver;
  ErrorNorm rel_norm = ErrorNorm::l2;

  void validate(const GridSpec& grid) const;
};

struct ErrorTrace {
  std::vector<double> times;
  std::vector<double> err_l2, err_grad, err_h1, err_linf;
  std::vector<double> obs_err;   ///< ||C e||_L2 of the lifted observation mismatch
  std::vector<double> rel_err;   ///< ||u - z|| / ||u|| in the configured norm
  std::vector<std::string> snapshots;

  std::string to_csv() const;
};

/// One observer step of d z/dt = -P(z.grad z) - nu A z + P[g + L C(u - z)],
/// with the injection evaluated at the midpoint error inside the Picard loop.
/// u_before/u_after bracket the truth over the same step.
VelocityField observer_step(const VelocityField& z, const VelocityField& u_before,
                            const VelocityField& u_after, const VelocityField& g_mid,
                            const ObserverConfig& cfg, double t, StepStats* stats = nullptr);

using TwinCallback = std::function<void(int step, double t, const VelocityField& u,
                                        const VelocityField& z, ErrorTrace& trace)>;

/// Advances truth (forcing f) and observer (input model g) in lockstep.
ErrorTrace run_twin(const VelocityField& u0, const VelocityField& z0, const Forcing& f,
                    const Forcing& g, const ObserverConfig& cfg,
                    const TwinCallback& on_record = nullptr);

struct BellmanDiagnostic {
  std::vector<double> window_start;
  std::vector<double> avg_beta_pos;    ///< (1/T) int max(beta, 0)
  std::vector<double> avg_alpha;       ///< (1/T) int alpha
  std::vector<double> avg_alpha_neg;   ///< (1/T) int max(0, -alpha)
  double tail_beta_pos = 0.0;
  double tail_alpha = 0.0;
  double tail_alpha_neg = 0.0;
  bool beta_vanishes = false;      ///< tail_beta_pos <= beta_threshold
  bool alpha_positive = false;     ///< tail_alpha >= alpha_threshold
  bool alpha_neg_bounded = false;  ///< tail_alpha_neg <= alpha_neg_threshold
};

/// Sliding-window averages for the Bellman-lemma convergence conditions over
/// aligned uniform series. Throws if T exceeds the series span.
BellmanDiagnostic bellman_diagnostic(const std::vector<double>& times,
                                     const std::vector<double>& alpha,
                                     const std::vector<double>& beta, double T,
                                     double beta_threshold = 1e-8, double alpha_threshold = 0.0,
                                     double alpha_neg_threshold = 1e12);

}  // namespace nseobs
