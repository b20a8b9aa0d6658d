// Acceptance suite: each criterion prints one PASS/FAIL line (plus detail
// lines) and the binary exit code reflects the selected criteria.
//
// usage: nseobs_acceptance [N]     run criterion N (1..9), or all when omitted
//        nseobs_acceptance paper   long-running paper-scale observer run

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nseobs/commands.hpp"
#include "nseobs/gain.hpp"
#include "nseobs/inequalities.hpp"
#include "nseobs/io.hpp"
#include "nseobs/observer.hpp"
#include "nseobs/random_fields.hpp"
#include "nseobs/spectral_ops.hpp"

using namespace nseobs;
namespace fs = std::filesystem;

namespace {

const double kTwoPi = 2.0 * M_PI;

struct Checker {
  bool ok = true;
  std::vector<std::string> details;

  void require(bool cond, const std::string& what) {
    details.push_back(std::string(cond ? "    [ok]   " : "    [FAIL] ") + what);
    ok = ok && cond;
  }
  void note(const std::string& what) { details.push_back("    [note] " + what); }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

fs::path scratch_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("nseobs_acceptance_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// ---------------------------------------------------------------------------
// 1. Taylor-Green exactness: analytic decay and second-order dt convergence.
Checker criterion1() {
  Checker c;
  GridSpec g(kTwoPi, kTwoPi, 64, 64);
  VelocityField v0 = VelocityField::taylor_green(g);
  VelocityField zero = VelocityField::zero(g);
  auto run_error = [&](double dt) {
    SolverConfig cfg;
    cfg.nu = 0.01;
    cfg.dt = dt;
    cfg.picard_tol = 1e-14;
    VelocityField v = v0;
    int nsteps = static_cast<int>(std::llround(1.0 / dt));
    for (int s = 0; s < nsteps; ++s) v = implicit_midpoint_step(v, zero, cfg, s * dt);
    double dec = std::exp(-2.0 * cfg.nu);
    return norm_l2(v - dec * v0) / (dec * norm_l2(v0));
  };
  double e1 = run_error(1e-3);
  double e2 = run_error(5e-4);
  double ratio = e1 / e2;
  c.require(e1 <= 1e-8, "relative L2 error vs analytic decay at dt=1e-3: " + fmt(e1) + " <= 1e-8");
  c.require(ratio >= 3.5 && ratio <= 4.5,
            "dt halving error ratio " + fmt(ratio) + " in [3.5, 4.5] (e(5e-4) = " + fmt(e2) + ")");
  return c;
}

// ---------------------------------------------------------------------------
// 2. Inequality audit: the gamma-parametric sup-norm bound, corollary
// substitution identities, Poincare / gradient / interpolation inequalities,
// and the appendix integral bounds.
Checker criterion2() {
  Checker c;
  GridSpec g(kTwoPi, kTwoPi, 64, 64);
  std::vector<double> gammas;
  for (int i = 0; i < 20; ++i) gammas.push_back(1e-2 * std::pow(1e6, i / 19.0));

  RandomFieldSpec spec{20260809, 20, 1.5, 1000, true};
  ViolationReport agmoN = check_agmoN(g, spec, gammas);
  c.require(agmoN.clean() && agmoN.checked == 20000,
            "sup-norm bound: " + std::to_string(agmoN.checked) +
                " field/gamma checks, violations = " + std::to_string(agmoN.violations.size()) +
                ", worst margin = " + fmt(agmoN.worst_margin));

  RandomFieldSpec flat = spec;
  flat.spectrum_decay = 0.0;
  flat.count = 300;
  flat.seed += 1;
  ViolationReport agmoN2 = check_agmoN(g, flat, gammas);
  c.require(agmoN2.clean(), "sup-norm bound on the flat-spectrum variant: violations = " +
                                std::to_string(agmoN2.violations.size()));

  RandomFieldSpec sub = spec;
  sub.count = 300;
  ViolationReport agmon = check_agmon(g, sub);
  ViolationReport brezis = check_brezis(g, sub);
  c.require(agmon.clean() && agmon.worst_identity_defect <= 1e-12,
            "agmon-form substitution: identity defect " + fmt(agmon.worst_identity_defect) +
                " <= 1e-12, violations = " + std::to_string(agmon.violations.size()));
  c.require(brezis.clean() && brezis.worst_identity_defect <= 1e-12,
            "brezis-form substitution: identity defect " + fmt(brezis.worst_identity_defect) +
                " <= 1e-12, violations = " + std::to_string(brezis.violations.size()));

  AverageOperator op(Partition(g, 16, 16));
  RandomFieldSpec ing = spec;
  ing.count = 1000;
  ViolationReport prop1 = check_prop1_ingredients(g, ing, op);
  c.require(prop1.clean(),
            "poincare, gradient bound, interpolation (C_nabla = 1), and the routed bound on 1000 "
            "fields: violations = " +
                std::to_string(prop1.violations.size()));

  std::vector<double> gsmall;
  for (int i = 0; i < 10; ++i) gsmall.push_back(1e-2 * std::pow(1e5, i / 9.0));
  bool appendix_ok = true;
  std::size_t appendix_checked = 0;
  for (auto [l1, l2] :
       {std::pair{kTwoPi, kTwoPi}, std::pair{kTwoPi, M_PI}, std::pair{1.0, 3.0},
        std::pair{5.0, 0.5}, std::pair{2.0, 2.0}}) {
    ViolationReport rep = check_appendix_integrals(GridSpec(l1, l2, 8, 8), gsmall);
    appendix_ok = appendix_ok && rep.clean();
    appendix_checked += rep.checked;
  }
  c.require(appendix_ok, "appendix integral bounds and closed forms over " +
                             std::to_string(appendix_checked) + " (gamma, domain) checks");
  return c;
}

// ---------------------------------------------------------------------------
// 3. Class certificates at the quoted constant, plus refinement monotonicity.
Checker criterion3() {
  Checker c;
  GridSpec g(kTwoPi, kTwoPi, 64, 64);
  RandomFieldSpec spec{77001, 20, 1.5, 500, true};
  auto fields = make_random_fields(g, spec);
  const double sharp_c = 1.0 / (M_PI * M_PI);

  for (int nc : {8, 16, 32}) {
    AverageOperator op(Partition(g, nc, nc));
    CertificateReport rep = certify_class(op, fields);
    // the criterion as stated: ratio <= 1 against C_Omega = (4 pi^2)^-1.
    // The constant is wrong by up to 4x (sharp per-cell constant is pi^-2),
    // so this clause fails by construction; see the notes alongside.
    c.require(rep.max_ratio <= 1.0,
              "partition " + std::to_string(nc) + "x" + std::to_string(nc) +
                  ": ratio vs quoted constant = " + fmt(rep.max_ratio) + " (<= 1 required)");
    c.note("partition " + std::to_string(nc) +
           ": ratio vs sharp per-cell constant 1/pi^2 = " + fmt(rep.max_raw_ratio / sharp_c) +
           " (provably <= 1, worst field " + std::to_string(rep.worst_index) + ")");
  }
  c.note("the quoted C_Omega = (4 pi^2)^-1 presumes cell-periodic Poincare; the sharp "
         "rectangle constant is (h/pi)^2, so ratios up to 4 are expected and measured");

  bool monotone = true;
  AverageOperator coarse(Partition(g, 8, 8)), mid(Partition(g, 16, 16)),
      fine(Partition(g, 32, 32));
  for (const auto& u : fields) {
    double rc = norm_l2(u - coarse.project(u));
    double rm = norm_l2(u - mid.project(u));
    double rf = norm_l2(u - fine.project(u));
    monotone = monotone && rm <= rc * (1.0 + 1e-12) && rf <= rm * (1.0 + 1e-12);
  }
  c.require(monotone, "refinement monotonicity of the residual over 500 fields");
  return c;
}

// ---------------------------------------------------------------------------
// 4. Gain pipeline feasibility at the published operating point.
Checker criterion4() {
  Checker c;
  DesignInputs in;
  in.nu = 0.01;
  in.ell1 = in.ell2 = kTwoPi;
  in.f_l2 = 0.1;
  in.kappa = 1.1;
  in.c_omega = 1.0 / (4.0 * M_PI * M_PI);
  in.h = kTwoPi / 150.0;
  in.beta = 0.96;
  in.grad_u0_l2 = 10.0;

  ArgmaxResult am = argmax_theta(in);
  c.require(am.feasible && am.theta_max > 0.0, "Theta(Gamma_max) = " + fmt(am.theta_max) + " > 0");
  c.require(in.h * in.h < 0.96 * am.theta_max,
            "h^2 = " + fmt(in.h * in.h) + " < 0.96 Theta(Gamma_max) = " + fmt(0.96 * am.theta_max));

  // independent fine-grid maximization
  double fine = -1e300;
  const int pts = 100000;
  double lo = std::log(am.gamma_zero * (1.0 + 1e-6)), hi = std::log(am.gamma_zero * 1e6);
  for (int i = 0; i < pts; ++i)
    fine = std::max(fine, theta_of_gamma(in, std::exp(lo + (hi - lo) * i / (pts - 1))));
  double dev = std::abs(am.theta_max - fine) / fine;
  c.require(dev <= 1e-3, "argmax matches the 1e5-point grid oracle: relative deviation " +
                             fmt(dev) + " <= 0.1%");

  double L = gain_L_nabla(in, am.gamma_max);
  c.note("computed Gamma_max = " + fmt(am.gamma_max) + " (reference 71, deviation " +
         fmt(am.gamma_max - 71.0) + ")");
  c.note("computed L = beta Lhat_nabla = " + fmt(L) + " (reference 410.6, deviation " +
         fmt(L - 410.6) + "; deviations reported, not asserted)");
  return c;
}

// ---------------------------------------------------------------------------
// 5. Bound comparison across the viscosity sweep.
Checker criterion5() {
  Checker c;
  DesignInputs in;
  in.ell1 = in.ell2 = kTwoPi;
  in.f_l2 = 0.1;
  in.kappa = 1.1;
  in.c_omega = 1.0 / (4.0 * M_PI * M_PI);
  std::vector<double> nus;
  for (int i = 0; i < 25; ++i) nus.push_back(1e-6 * std::pow(1e5, i / 24.0));
  auto rows = compare_bounds(in, nus, 1.0 / kTwoPi);
  bool dominates = true;
  for (const auto& r : rows) dominates = dominates && r.feasible && r.theta_max > r.azouani;
  c.require(dominates, "Theta(Gamma_max) > prior bound at every of the 25 grid points");
  c.require(rows.front().log10_ratio >= 1.0,
            "log10 ratio at nu = 1e-6: " + fmt(rows.front().log10_ratio) +
                " >= 1.0 (reference 1.33)");
  c.note("log10 ratio at nu = 1e-1: " + fmt(rows.back().log10_ratio));
  return c;
}

struct TwinSetup {
  GridSpec grid;
  VelocityField u0;
  GainReport gain;
  ObserverConfig oc;
  Forcing f;
};

TwinSetup desk_observer_setup() {
  GridSpec g(kTwoPi, kTwoPi, 128, 128);
  VelocityField u0 = peaks_initial_condition(g);
  DesignInputs in;
  in.nu = 0.02;
  in.ell1 = in.ell2 = kTwoPi;
  in.f_l2 = 0.1;
  in.kappa = 1.1;
  in.beta = 0.96;
  in.c_omega = 1.0 / (4.0 * M_PI * M_PI);
  in.h = kTwoPi / 96.0;
  in.grad_u0_l2 = norm_grad(u0);
  GainReport rep = build_gain_report(in);
  ObserverConfig oc;
  oc.op = std::make_shared<AverageOperator>(Partition(g, 96, 96));
  oc.gain = rep.L_nabla;
  oc.solver.nu = 0.02;
  oc.solver.dt = 0.0025;
  oc.solver.t_end = 10.0;
  oc.solver.record_every = 20;
  oc.rel_norm = ErrorNorm::h1;
  Forcing f(kolmogorov_forcing(g, 6, 0.1), std::nullopt, 0.0);
  return TwinSetup{g, std::move(u0), rep, std::move(oc), std::move(f)};
}

// ---------------------------------------------------------------------------
// 6. Desk-scale observer convergence with the pipeline gain, known input.
Checker criterion6() {
  Checker c;
  TwinSetup s = desk_observer_setup();
  c.require(s.gain.feasible && s.gain.h_feasible_c1,
            "pipeline gain feasible: h^2 = " + fmt((kTwoPi / 96.0) * (kTwoPi / 96.0)) +
                " < beta Theta = " + fmt(s.gain.h2_bound_c1) + ", L = " + fmt(s.gain.L_nabla));
  ErrorTrace tr = run_twin(s.u0, VelocityField::zero(s.grid), s.f, s.f, s.oc);
  double drop = tr.rel_err.back() / tr.rel_err.front();
  c.require(drop <= 1e-6, "relative H1 error falls " + fmt(-std::log10(drop)) +
                              " orders by t = 10 (>= 6 required; final " + fmt(tr.rel_err.back()) +
                              ")");
  // monotone after t = 1, modulo the numerical-zero floor set by the per-step
  // solve tolerance
  double floor = 100.0 * s.oc.solver.picard_tol;
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < tr.times.size(); ++i) {
    if (tr.times[i] < 1.0) continue;
    if (tr.rel_err[i + 1] > std::max(tr.rel_err[i], floor)) monotone = false;
  }
  c.require(monotone, "monotone non-increasing after t = 1 (down to the numerical floor " +
                          fmt(floor) + ")");
  c.note("relative H1 error at t = 10: " + fmt(tr.rel_err.back()));
  return c;
}

// ---------------------------------------------------------------------------
// 7. Unknown-input observer: converges into a zone and stays there.
Checker criterion7() {
  Checker c;
  TwinSetup s = desk_observer_setup();
  ForcingSpec gspec;
  gspec.kind = ForcingSpec::Kind::kolmogorov;
  gspec.mode = 6;
  gspec.target_l2 = 0.1;
  gspec.perturbation = PerturbationSpec{0.001, 2.0, 4242};
  Forcing g_model = Forcing::make(s.grid, gspec);
  ErrorTrace tr = run_twin(s.u0, VelocityField::zero(s.grid), s.f, g_model, s.oc);

  const double zone = 1e-4;
  std::size_t entered = tr.times.size();
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    if (tr.rel_err[i] <= zone) {
      entered = i;
      break;
    }
  }
  c.require(entered < tr.times.size(),
            "error enters the 1e-4 zone (t = " +
                (entered < tr.times.size() ? fmt(tr.times[entered]) : std::string("never")) + ")");
  bool stays = entered < tr.times.size();
  for (std::size_t i = entered; i < tr.times.size(); ++i) stays = stays && tr.rel_err[i] <= zone;
  c.require(stays, "never re-diverges above 1e-4 through t = 10 (final " +
                       fmt(tr.rel_err.back()) + ")");
  return c;
}

// ---------------------------------------------------------------------------
// 8. Sensitivity dichotomy at desk scale.
Checker criterion8() {
  Checker c;
  GridSpec g(kTwoPi, kTwoPi, 192, 192);
  VelocityField u0 = peaks_initial_condition(g);
  VelocityField noise = make_bounded_noise(g, 7, 1e-5);
  double sup = norms(noise, 4).linf;
  c.require(sup < 1e-5, "IC perturbation sup " + fmt(sup) + " < 1e-5");
  VelocityField u0p = u0 + noise;

  Forcing f(kolmogorov_forcing(g, 6, 3.0 * M_PI * std::sqrt(2.0)), std::nullopt, 0.0);
  auto divergence_run = [&](double nu) {
    SolverConfig cfg;
    cfg.nu = nu;
    cfg.dt = 0.005;
    cfg.t_end = 10.0;
    cfg.picard_tol = 1e-10;
    cfg.picard_max_iters = 200;
    VelocityField a = leray_project(dealiased(u0));
    VelocityField b = leray_project(dealiased(u0p));
    double e0 = norm_l2(b - a) / norm_l2(a);
    int nsteps = static_cast<int>(std::llround(cfg.t_end / cfg.dt));
    for (int sidx = 0; sidx < nsteps; ++sidx) {
      a = midpoint_step_with_fallback(a, f, cfg, sidx * cfg.dt);
      b = midpoint_step_with_fallback(b, f, cfg, sidx * cfg.dt);
    }
    double e1 = norm_l2(b - a) / norm_l2(a);
    return std::pair{e0, e1};
  };

  auto [e0_small, e1_small] = divergence_run(0.01);
  double growth = e1_small / e0_small;
  c.require(growth >= 1e3, "nu = 0.01: relative divergence grows " + fmt(growth) +
                               "x (>= 3 orders required; e(0) = " + fmt(e0_small) +
                               ", e(10) = " + fmt(e1_small) + ")");

  auto [e0_large, e1_large] = divergence_run(0.1);
  c.require(e1_large <= 0.5 * e0_large,
            "nu = 0.1: relative divergence decays toward zero (e(10)/e(0) = " +
                fmt(e1_large / e0_large) + " <= 0.5)");
  return c;
}

// ---------------------------------------------------------------------------
// 9. Byte-identical outputs for identical config and seed.
Checker criterion9() {
  Checker c;
  fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
  std::string sim_cfg =
      "[grid]\nn1 = 64\nn2 = 64\n"
      "[solver]\ndt = 0.005\nt_end = 0.5\nrecord_every = 10\n";
  ExperimentConfig cfg = ExperimentConfig::from_text(sim_cfg, "desk");
  c.require(cmd_simulate(cfg, a.string(), 11) == 0 && cmd_simulate(cfg, b.string(), 11) == 0,
            "two simulate runs complete");
  c.require(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"),
            "trajectory CSVs byte-identical");
  c.require(slurp(a / "state_final.nsef") == slurp(b / "state_final.nsef"),
            "final snapshots byte-identical");

  fs::path oa = scratch_dir("det_oa"), ob = scratch_dir("det_ob");
  std::string obs_cfg =
      "[grid]\nn1 = 48\nn2 = 48\n"
      "[solver]\nnu = 0.05\ndt = 0.01\nt_end = 0.5\nrecord_every = 10\n"
      "[observer]\noperator = average\nnx = 12\nny = 12\ngain = 40\n"
      "[forcing]\nperturb_amplitude = 0.001\n";
  ExperimentConfig ocfg = ExperimentConfig::from_text(obs_cfg, "desk");
  c.require(cmd_observe(ocfg, oa.string(), 23) == 0 && cmd_observe(ocfg, ob.string(), 23) == 0,
            "two observe runs complete");
  c.require(slurp(oa / "errors_average.csv") == slurp(ob / "errors_average.csv"),
            "error-trace CSVs byte-identical");
  for (const fs::path& p : {a, b, oa, ob}) fs::remove_all(p);
  return c;
}

// Paper-scale optional run (not part of the gating suite): n = 200,
// 150 x 150 averages, 4000 steps at the published parameters.
int paper_scale_run() {
  GridSpec g(kTwoPi, kTwoPi, 200, 200);
  VelocityField u0 = peaks_initial_condition(g);
  DesignInputs in;
  in.nu = 0.01;
  in.ell1 = in.ell2 = kTwoPi;
  in.f_l2 = 0.1;
  in.kappa = 1.1;
  in.beta = 0.96;
  in.c_omega = 1.0 / (4.0 * M_PI * M_PI);
  in.h = kTwoPi / 150.0;
  in.grad_u0_l2 = norm_grad(u0);
  GainReport rep = build_gain_report(in);
  std::printf("paper-scale gain: L = %.4f (Gamma_max = %.2f, Theta = %.6f)\n", rep.L_nabla,
              rep.gamma_max, rep.theta_at_max);
  ObserverConfig oc;
  oc.op = std::make_shared<AverageOperator>(Partition(g, 150, 150));
  oc.gain = rep.L_nabla;
  oc.solver.nu = 0.01;
  oc.solver.dt = 0.0025;
  oc.solver.t_end = 10.0;
  oc.solver.record_every = 40;
  oc.rel_norm = ErrorNorm::l2;
  Forcing f(kolmogorov_forcing(g, 6, 0.1), std::nullopt, 0.0);
  ErrorTrace tr = run_twin(u0, VelocityField::zero(g), f, f, oc,
                           [](int step, double t, const VelocityField&, const VelocityField&,
                              ErrorTrace& trace) {
                             if (step % 400 == 0)
                               std::printf("  t = %5.2f  rel err = %.3e\n", t,
                                           trace.rel_err.back());
                           });
  std::printf("final relative error: %.3e (published floor ~1e-16)\n", tr.rel_err.back());
  return tr.rel_err.back() < 1e-10 ? 0 : 1;
}

struct Criterion {
  const char* name;
  std::function<Checker()> run;
};

const Criterion kCriteria[] = {
    {"taylor-green exactness and dt convergence", criterion1},
    {"inequality audit", criterion2},
    {"class certificates", criterion3},
    {"gain pipeline feasibility at the published point", criterion4},
    {"bound comparison over the viscosity sweep", criterion5},
    {"observer convergence, desk scale, known input", criterion6},
    {"unknown-input observer convergence zone", criterion7},
    {"sensitivity dichotomy", criterion8},
    {"byte-level determinism", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1 && std::strcmp(argv[1], "paper") == 0) return paper_scale_run();

  int lo = 0, hi = 8;
  if (argc > 1) {
    int k = std::atoi(argv[1]);
    if (k < 1 || k > 9) {
      std::fprintf(stderr, "usage: %s [1..9|paper]\n", argv[0]);
      return 2;
    }
    lo = hi = k - 1;
  }

  int failures = 0;
  for (int i = lo; i <= hi; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Checker c = kCriteria[i].run();
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.1f s)\n", c.ok ? "PASS" : "FAIL", i + 1,
                kCriteria[i].name, el);
    for (const auto& d : c.details) std::printf("%s\n", d.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
