#include "nseobs/solver.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "nseobs/io.hpp"
#include "nseobs/random_fields.hpp"
#include "nseobs/spectral_ops.hpp"

namespace nseobs {

namespace {

std::string step_failure_message(double time, double residual, int iters) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "implicit midpoint step failed to converge at t=%g (relative residual %g after "
                "%d iterations)",
                time, residual, iters);
  return buf;
}

}  // namespace

StepFailure::StepFailure(double time, double residual, int iters)
    : std::runtime_error(step_failure_message(time, residual, iters)),
      time(time), residual(residual), iters(iters) {}

void SolverConfig::validate() const {
  if (!(nu > 0.0)) throw std::invalid_argument("SolverConfig: nu must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
  if (t_end < 0.0) throw std::invalid_argument("SolverConfig: t_end must be nonnegative");
  if (!(picard_tol > 0.0)) throw std::invalid_argument("SolverConfig: picard_tol must be positive");
  if (picard_max_iters < 1)
    throw std::invalid_argument("SolverConfig: picard_max_iters must be >= 1");
  if (record_every < 1) throw std::invalid_argument("SolverConfig: record_every must be >= 1");
}

VelocityField kolmogorov_forcing(const GridSpec& grid, int mode, double target_l2) {
  if (mode <= 0 || mode > grid.kmax2())
    throw std::invalid_argument("kolmogorov_forcing: mode outside the dealiased band");
  VelocityField f(grid);
  if (target_l2 == 0.0) return f;
  // sin(m y') = (e^{i m y'} - e^{-i m y'}) / (2i); ||a sin(m y')||_L2^2 = a^2 ell1 ell2 / 2.
  double a = target_l2 * std::sqrt(2.0 / (grid.ell1() * grid.ell2()));
  f.u1().at(0, mode) = Complex{0.0, -a / 2.0};
  f.u1().at(0, grid.n2() - mode) = Complex{0.0, a / 2.0};
  return f;
}

VelocityField peaks_initial_condition(const GridSpec& grid) {
  ScalarField w = ScalarField::sample(grid, [&](double x, double y) {
    double a = 6.0 * x / grid.ell1() - 3.0;
    double b = 6.0 * y / grid.ell2() - 3.0;
    return 3.0 * (1.0 - a) * (1.0 - a) * std::exp(-a * a - (b + 1.0) * (b + 1.0)) -
           10.0 * (a / 5.0 - a * a * a - std::pow(b, 5)) * std::exp(-a * a - b * b) -
           (1.0 / 3.0) * std::exp(-(a + 1.0) * (a + 1.0) - b * b);
  });
  w.coeffs()[0] = 0.0;  // remove mean
  ScalarField psi = poisson_solve(w);
  VelocityField u = velocity_from_streamfunction(psi);
  dealias_inplace(u);
  return u;
}

Forcing Forcing::make(const GridSpec& grid, const ForcingSpec& spec) {
  VelocityField base(grid);
  switch (spec.kind) {
    case ForcingSpec::Kind::zero:
      break;
    case ForcingSpec::Kind::kolmogorov:
      base = kolmogorov_forcing(grid, spec.mode, spec.target_l2);
      break;
    case ForcingSpec::Kind::custom_snapshot: {
      base = leray_project(load_nsef1(spec.snapshot_path, grid));
      if (spec.target_l2 > 0.0) {
        double n = norm_l2(base);
        if (n == 0.0) throw std::invalid_argument("custom forcing snapshot is zero");
        base *= spec.target_l2 / n;
      }
      break;
    }
  }
  dealias_inplace(base);
  std::optional<VelocityField> pert;
  double rate = 0.0;
  if (spec.perturbation && spec.perturbation->amplitude > 0.0) {
    pert = make_bounded_noise(grid, spec.perturbation->seed, spec.perturbation->amplitude);
    rate = spec.perturbation->rate;
  }
  return Forcing(std::move(base), std::move(pert), rate);
}

VelocityField Forcing::at(double t) const {
  if (!pert_) return base_;
  return base_ + std::exp(-rate_ * t) * (*pert_);
}

VelocityField rhs(const VelocityField& v, const VelocityField& f, double nu,
                  bool include_nonlinear) {
  VelocityField out = leray_project(f);
  const GridSpec& g = v.grid();
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    double kx = g.kx(i1);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      double k2 = kx * kx + g.ky(i2) * g.ky(i2);
      std::size_t idx = g.index(i1, i2);
      out.u1().coeffs()[idx] -= nu * k2 * v.u1().coeffs()[idx];
      out.u2().coeffs()[idx] -= nu * k2 * v.u2().coeffs()[idx];
    }
  }
  if (include_nonlinear) out -= nonlinear_term(v);
  out.u1().coeffs()[0] = 0.0;
  out.u2().coeffs()[0] = 0.0;
  return out;
}

VelocityField implicit_midpoint_step(const VelocityField& v, const VelocityField& f_mid,
                                     const SolverConfig& cfg, double t, const MidpointTerm& extra,
                                     StepStats* stats) {
  const GridSpec& g = v.grid();
  const double dt = cfg.dt;
  const double vnorm = norm_l2(v);
  VelocityField fp = leray_project(dealiased(f_mid));

  VelocityField z = v;          // current iterate for v+
  VelocityField mid = v;        // (v + z) / 2
  double diff = 0.0;
  int it = 0;
  for (; it < cfg.picard_max_iters; ++it) {
    mid = v + z;
    mid *= 0.5;
    VelocityField r = fp;
    if (cfg.include_nonlinear) r -= nonlinear_term(mid);
    if (extra) r += extra(mid);
    // modewise (1 + dt nu k^2 / 2) z = (1 - dt nu k^2 / 2) v + dt r, applied
    // in increment form z = v + dt (r - nu k^2 v) / (1 + dt nu k^2 / 2) so the
    // slow-decay amplitude error stays at the size of the increment
    VelocityField znew(g);
    for (int i1 = 0; i1 < g.n1(); ++i1) {
      double kx = g.kx(i1);
      for (int i2 = 0; i2 < g.n2(); ++i2) {
        double k2 = kx * kx + g.ky(i2) * g.ky(i2);
        double den = 1.0 + 0.5 * dt * cfg.nu * k2;
        std::size_t idx = g.index(i1, i2);
        znew.u1().coeffs()[idx] =
            v.u1().coeffs()[idx] +
            dt * (r.u1().coeffs()[idx] - cfg.nu * k2 * v.u1().coeffs()[idx]) / den;
        znew.u2().coeffs()[idx] =
            v.u2().coeffs()[idx] +
            dt * (r.u2().coeffs()[idx] - cfg.nu * k2 * v.u2().coeffs()[idx]) / den;
      }
    }
    znew.u1().coeffs()[0] = 0.0;
    znew.u2().coeffs()[0] = 0.0;
    diff = norm_l2(znew - z);
    z = std::move(znew);
    // scale against the step target too: a zero starting state (the default
    // observer prior) must not make the relative tolerance unattainable
    double scale = std::max({vnorm, norm_l2(z), 1e-300});
    if (diff <= cfg.picard_tol * scale) {
      if (stats) {
        stats->iters = it + 1;
        stats->residual = diff / scale;
      }
      return z;
    }
  }
  throw StepFailure(t, diff / std::max({vnorm, norm_l2(z), 1e-300}), it);
}

VelocityField midpoint_step_with_fallback(const VelocityField& v, const Forcing& forcing,
                                          const SolverConfig& cfg, double t, int max_halvings) {
  try {
    return implicit_midpoint_step(v, forcing.at(t + 0.5 * cfg.dt), cfg, t);
  } catch (const StepFailure&) {
    if (max_halvings <= 0) throw;
    SolverConfig half = cfg;
    half.dt = 0.5 * cfg.dt;
    VelocityField mid = midpoint_step_with_fallback(v, forcing, half, t, max_halvings - 1);
    return midpoint_step_with_fallback(mid, forcing, half, t + half.dt, max_halvings - 1);
  }
}

TrajectoryRecord simulate(const VelocityField& v0, const Forcing& forcing,
                          const SolverConfig& cfg, const RecordCallback& on_record) {
  cfg.validate();
  const GridSpec& g = v0.grid();
  VelocityField v = leray_project(dealiased(v0));

  TrajectoryRecord rec;
  auto record = [&](int step, double t) {
    NormReport n = norms(v, 1);
    rec.times.push_back(t);
    rec.l2.push_back(n.l2);
    rec.grad_l2.push_back(n.grad_l2);
    rec.h1.push_back(n.h1);
    rec.lap_l2.push_back(n.lap_l2);
    if (on_record) on_record(step, t, v, rec);
  };

  const int nsteps = static_cast<int>(std::llround(cfg.t_end / cfg.dt));
  record(0, 0.0);
  for (int s = 0; s < nsteps; ++s) {
    double t = s * cfg.dt;
    VelocityField f_mid = forcing.at(t + 0.5 * cfg.dt);
    v = implicit_midpoint_step(v, f_mid, cfg, t);
    if ((s + 1) % cfg.record_every == 0 || s + 1 == nsteps) record(s + 1, (s + 1) * cfg.dt);
  }
  (void)g;
  return rec;
}

namespace {

double theta_window(double f_l2, double nu, double lambda1, double grad_u0, double t, double T) {
  return 2.0 * f_l2 * f_l2 / (T * nu * nu * nu * lambda1) +
         2.0 * std::exp(-lambda1 * nu * t) * grad_u0 * grad_u0 / (T * nu) + f_l2 * f_l2 / (nu * nu);
}

}  // namespace

EnergyAudit energy_audit(const TrajectoryRecord& rec, double f_l2, double nu,
                         const GridSpec& grid) {
  EnergyAudit audit;
  const double lambda1 = grid.lambda1();
  const double slack_tol = 1e-9;
  const std::size_t n = rec.times.size();
  if (n == 0) return audit;
  const double grad_u0 = rec.grad_l2.front();
  bool first = true;

  auto push = [&](const std::string& check, double s, double t, double lhs, double rhs_) {
    double slack = rhs_ - lhs;
    if (first || slack < audit.worst_slack) audit.worst_slack = slack;
    first = false;
    ++audit.checked;
    if (slack < -slack_tol) audit.violations.push_back({check, s, t, lhs, rhs_, slack});
  };

  // cumulative trapezoid of ||Au||^2 for the windowed average bound
  std::vector<double> cum(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double a = rec.lap_l2[i - 1] * rec.lap_l2[i - 1];
    double b = rec.lap_l2[i] * rec.lap_l2[i];
    cum[i] = cum[i - 1] + 0.5 * (a + b) * (rec.times[i] - rec.times[i - 1]);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = rec.times[i], t = rec.times[j];
      double decay = std::exp(-lambda1 * nu * (t - s));
      push("l2_decay", s, t, rec.l2[j] * rec.l2[j],
           f_l2 * f_l2 / (nu * nu * lambda1 * lambda1) + decay * rec.l2[i] * rec.l2[i]);
      push("grad_decay", s, t, rec.grad_l2[j] * rec.grad_l2[j],
           f_l2 * f_l2 / (nu * nu * lambda1) + decay * rec.grad_l2[i] * rec.grad_l2[i]);
      double T = t - s;
      push("au_window", s, t, (cum[j] - cum[i]) / T,
           theta_window(f_l2, nu, lambda1, grad_u0, s, T));
    }
  }
  return audit;
}

}  // namespace nseobs
