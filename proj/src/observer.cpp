#include "nseobs/observer.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nseobs/io.hpp"
#include "nseobs/spectral_ops.hpp"

namespace nseobs {

void ObserverConfig::validate(const GridSpec& grid) const {
  solver.validate();
  if (!op) throw std::invalid_argument("ObserverConfig: observation operator not set");
  if (!(gain > 0.0)) throw std::invalid_argument("ObserverConfig: gain must be positive");
  if (!(op->grid() == grid))
    throw std::invalid_argument("ObserverConfig: operator grid does not match state grid");
}

std::string ErrorTrace::to_csv() const {
  std::ostringstream os;
  os << "t,err_l2,err_grad,err_h1,err_linf,obs_err,rel_err\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    os << format_double(times[i]) << ',' << format_double(err_l2[i]) << ','
       << format_double(err_grad[i]) << ',' << format_double(err_h1[i]) << ','
       << format_double(err_linf[i]) << ',' << format_double(obs_err[i]) << ','
       << format_double(rel_err[i]) << '\n';
  }
  return os.str();
}

VelocityField observer_step(const VelocityField& z, const VelocityField& u_before,
                            const VelocityField& u_after, const VelocityField& g_mid,
                            const ObserverConfig& cfg, double t, StepStats* stats) {
  VelocityField u_mid = u_before + u_after;
  u_mid *= 0.5;
  const LinearObservation& op = *cfg.op;
  const double gain = cfg.gain;
  MidpointTerm injection = [&](const VelocityField& z_mid) {
    VelocityField e_mid = u_mid - z_mid;
    VelocityField inj = op.project(e_mid);
    dealias_inplace(inj);
    inj = leray_project(inj);
    inj *= gain;
    return inj;
  };
  return implicit_midpoint_step(z, g_mid, cfg.solver, t, injection, stats);
}

ErrorTrace run_twin(const VelocityField& u0, const VelocityField& z0, const Forcing& f,
                    const Forcing& g, const ObserverConfig& cfg, const TwinCallback& on_record) {
  const GridSpec& grid = u0.grid();
  cfg.validate(grid);
  VelocityField u = leray_project(dealiased(u0));
  VelocityField z = leray_project(dealiased(z0));
  const SolverConfig& sc = cfg.solver;

  ErrorTrace trace;
  auto record = [&](int step, double t) {
    VelocityField e = u - z;
    e.hermitian_symmetrize();  // near the floor e is roundoff-scale
    NormReport n = norms(e, 2);
    trace.times.push_back(t);
    trace.err_l2.push_back(n.l2);
    trace.err_grad.push_back(n.grad_l2);
    trace.err_h1.push_back(n.h1);
    trace.err_linf.push_back(n.linf);
    trace.obs_err.push_back(norm_l2(cfg.op->project(e)));
    double num = cfg.rel_norm == ErrorNorm::l2 ? n.l2 : n.h1;
    double den = cfg.rel_norm == ErrorNorm::l2 ? norm_l2(u) : norm_h1(u);
    trace.rel_err.push_back(den > 0.0 ? num / den : num);
    if (on_record) on_record(step, t, u, z, trace);
  };

  const int nsteps = static_cast<int>(std::llround(sc.t_end / sc.dt));
  record(0, 0.0);
  for (int s = 0; s < nsteps; ++s) {
    double t = s * sc.dt;
    VelocityField f_mid = f.at(t + 0.5 * sc.dt);
    VelocityField g_mid = g.at(t + 0.5 * sc.dt);
    VelocityField u_next = implicit_midpoint_step(u, f_mid, sc, t);
    z = observer_step(z, u, u_next, g_mid, cfg, t);
    u = std::move(u_next);
    if ((s + 1) % sc.record_every == 0 || s + 1 == nsteps) record(s + 1, (s + 1) * sc.dt);
  }
  return trace;
}

BellmanDiagnostic bellman_diagnostic(const std::vector<double>& times,
                                     const std::vector<double>& alpha,
                                     const std::vector<double>& beta, double T,
                                     double beta_threshold, double alpha_threshold,
                                     double alpha_neg_threshold) {
  const std::size_t n = times.size();
  if (n < 2 || alpha.size() != n || beta.size() != n)
    throw std::invalid_argument("bellman_diagnostic: series must be aligned with >= 2 samples");
  double span = times.back() - times.front();
  if (!(T > 0.0) || T > span)
    throw std::invalid_argument("bellman_diagnostic: window T must lie within the series span");
  double dt = times[1] - times[0];
  auto window_len = static_cast<std::size_t>(std::llround(T / dt));
  if (window_len < 1) window_len = 1;

  auto windowed = [&](const std::vector<double>& f, auto transform, std::vector<double>& out) {
    // trapezoid average over [t_i, t_i + T]
    for (std::size_t i = 0; i + window_len < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = i; j < i + window_len; ++j)
        acc += 0.5 * (transform(f[j]) + transform(f[j + 1])) * (times[j + 1] - times[j]);
      out.push_back(acc / (times[i + window_len] - times[i]));
    }
  };

  BellmanDiagnostic d;
  for (std::size_t i = 0; i + window_len < n; ++i) d.window_start.push_back(times[i]);
  windowed(beta, [](double x) { return std::max(x, 0.0); }, d.avg_beta_pos);
  windowed(alpha, [](double x) { return x; }, d.avg_alpha);
  windowed(alpha, [](double x) { return std::max(0.0, -x); }, d.avg_alpha_neg);
  d.tail_beta_pos = d.avg_beta_pos.back();
  d.tail_alpha = d.avg_alpha.back();
  d.tail_alpha_neg = d.avg_alpha_neg.back();
  d.beta_vanishes = d.tail_beta_pos <= beta_threshold;
  d.alpha_positive = d.tail_alpha >= alpha_threshold && d.tail_alpha > 0.0;
  d.alpha_neg_bounded = d.tail_alpha_neg <= alpha_neg_threshold;
  return d;
}

}  // namespace nseobs
