#include "nseobs/commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "nseobs/gain.hpp"
#include "nseobs/inequalities.hpp"
#include "nseobs/io.hpp"
#include "nseobs/observer.hpp"
#include "nseobs/parallel.hpp"
#include "nseobs/random_fields.hpp"
#include "nseobs/spectral_ops.hpp"
#include "nseobs/svg.hpp"

namespace nseobs {
namespace {

namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

struct ManifestScope {
  RunManifest m;
  std::string path;

  ManifestScope(const std::string& command, const ExperimentConfig& cfg, std::uint64_t seed,
                const std::string& out_dir) {
    m.command = command;
    m.config_digest = std::to_string(fnv1a(cfg.source_text + "|" + cfg.preset));
    m.seed = seed;
    m.code_version = kVersion;
    m.started_at = timestamp_utc();
    path = join(out_dir, "manifest.json");
  }
  void output(const std::string& p) { m.outputs.push_back(p); }
  void metric(const std::string& k, double v) { m.metrics.emplace_back(k, v); }
  void finish(bool ok, const std::string& cause = "") {
    m.success = ok;
    m.failure_cause = cause;
    m.finished_at = timestamp_utc();
    m.write(path);
  }
};

VelocityField noisy_ic(const VelocityField& u0, double sup_amplitude, std::uint64_t seed) {
  if (sup_amplitude <= 0.0) return u0;
  return u0 + make_bounded_noise(u0.grid(), seed, sup_amplitude);
}

std::shared_ptr<const LinearObservation> build_operator(const std::string& kind,
                                                        const GridSpec& grid,
                                                        const ExperimentConfig& cfg,
                                                        std::uint64_t seed) {
  if (kind == "average")
    return std::make_shared<AverageOperator>(Partition(grid, cfg.obs_nx, cfg.obs_ny));
  auto op = std::make_shared<PointOperator>(grid, cfg.obs_nx, cfg.obs_ny);
  RandomFieldSpec rf;
  rf.seed = seed ^ 0x706f696e74ULL;
  rf.count = 100;
  rf.band = std::min({grid.kmax1(), grid.kmax2(), 24});
  calibrate_point_operator(*op, make_random_fields(grid, rf));
  return op;
}

struct GainChoice {
  double L = 0.0;
  bool auto_mode = false;
  GainReport report;
};

GainChoice choose_gain(const ExperimentConfig& cfg, const LinearObservation& op, double grad_u0) {
  GainChoice g;
  if (cfg.gain_mode == "value") {
    g.L = cfg.gain_value;
    return g;
  }
  g.auto_mode = true;
  DesignInputs in = cfg.design_inputs(op.c_omega(), op.h(), grad_u0);
  g.report = build_gain_report(in);
  if (!g.report.feasible)
    throw std::runtime_error("auto gain design infeasible (Theta(Gamma_max) <= 0)");
  if (op.kind() == "point") {
    g.L = g.report.L_delta;
  } else {
    if (!g.report.h_feasible_c1)
      throw std::runtime_error("auto gain design infeasible: h^2 >= beta Theta(Gamma_max) (h=" +
                               format_double(op.h()) + ")");
    g.L = g.report.L_nabla;
  }
  return g;
}

}  // namespace

int cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir, std::uint64_t seed) {
  ManifestScope man("simulate", cfg, seed, out_dir);
  try {
    GridSpec grid = cfg.grid();
    VelocityField u0 = peaks_initial_condition(grid);
    Forcing forcing = Forcing::make(grid, cfg.forcing());
    std::string init_path = join(out_dir, "state_initial.nsef");
    save_nsef1(u0, init_path);
    man.output(init_path);

    VelocityField last = u0;
    TrajectoryRecord rec = simulate(u0, forcing, cfg.solver(),
                                    [&](int, double, const VelocityField& v, TrajectoryRecord&) {
                                      last = v;
                                    });
    std::string csv_path = join(out_dir, "trajectory.csv");
    atomic_write(csv_path, trajectory_csv(rec));
    man.output(csv_path);
    std::string final_path = join(out_dir, "state_final.nsef");
    save_nsef1(last, final_path);
    man.output(final_path);

    LinePlot plot("velocity norms", "t", "norm", false, false);
    plot.add_series("l2", rec.times, rec.l2);
    plot.add_series("grad_l2", rec.times, rec.grad_l2);
    plot.add_series("lap_l2", rec.times, rec.lap_l2);
    std::string svg_path = join(out_dir, "trajectory.svg");
    plot.write(svg_path);
    man.output(svg_path);

    double final_l2 = rec.l2.back();
    man.metric("final_l2", final_l2);
    man.metric("final_h1", rec.h1.back());
    if (!std::isfinite(final_l2)) {
      man.finish(false, "final state is not finite");
      std::cerr << "simulate: final state is not finite\n";
      return 3;
    }
    man.finish(true);
    return 0;
  } catch (const std::exception& e) {
    man.finish(false, e.what());
    std::cerr << "simulate: " << e.what() << '\n';
    return 2;
  }
}

int cmd_sensitivity(const ExperimentConfig& cfg, const std::string& out_dir, std::uint64_t seed) {
  ManifestScope man("sensitivity", cfg, seed, out_dir);
  try {
    GridSpec grid = cfg.grid();
    VelocityField u0 = peaks_initial_condition(grid);

    LinePlot plot("relative perturbation error", "t", "e", false, true);
    const double nus[2] = {cfg.sens_nu_small, cfg.sens_nu_large};
    for (int c = 0; c < 2; ++c) {
      SolverConfig sc = cfg.solver();
      sc.nu = nus[c];
      ForcingSpec fspec = cfg.forcing();
      fspec.target_l2 = cfg.sens_target_l2;
      Forcing f = Forcing::make(grid, fspec);
      ForcingSpec gspec = fspec;
      gspec.perturbation = PerturbationSpec{cfg.sens_input_amplitude, cfg.sens_input_rate, seed + 1};
      Forcing g = Forcing::make(grid, gspec);

      VelocityField u = leray_project(dealiased(u0));
      VelocityField u1 = leray_project(dealiased(noisy_ic(u0, cfg.sens_ic_amplitude, seed)));
      VelocityField u2 = u1;

      std::vector<double> times, e1, e2;
      auto record = [&](double t) {
        double base = cfg.error_norm == "h1" ? norm_h1(u) : norm_l2(u);
        VelocityField d1 = u - u1, d2 = u - u2;
        times.push_back(t);
        e1.push_back((cfg.error_norm == "h1" ? norm_h1(d1) : norm_l2(d1)) / base);
        e2.push_back((cfg.error_norm == "h1" ? norm_h1(d2) : norm_l2(d2)) / base);
      };
      record(0.0);
      int nsteps = static_cast<int>(std::llround(sc.t_end / sc.dt));
      for (int s = 0; s < nsteps; ++s) {
        double t = s * sc.dt;
        // stiff transients of the strongly forced runs occasionally stall the
        // fixed-dt Picard solve; sub-stepping recovers them
        u = midpoint_step_with_fallback(u, f, sc, t);
        u1 = midpoint_step_with_fallback(u1, f, sc, t);
        u2 = midpoint_step_with_fallback(u2, g, sc, t);
        if ((s + 1) % sc.record_every == 0 || s + 1 == nsteps) record((s + 1) * sc.dt);
      }

      std::ostringstream os;
      os << "t,e1,e2\n";
      for (std::size_t i = 0; i < times.size(); ++i)
        os << format_double(times[i]) << ',' << format_double(e1[i]) << ','
           << format_double(e2[i]) << '\n';
      std::ostringstream name;
      name << "sensitivity_nu" << nus[c] << ".csv";
      std::string p = join(out_dir, name.str());
      atomic_write(p, os.str());
      man.output(p);
      std::ostringstream l1, l2n;
      l1 << "e1 nu=" << nus[c];
      l2n << "e2 nu=" << nus[c];
      plot.add_series(l1.str(), times, e1);
      plot.add_series(l2n.str(), times, e2);
      man.metric("e1_initial_nu" + std::to_string(c), e1.front());
      man.metric("e1_final_nu" + std::to_string(c), e1.back());
      man.metric("e2_final_nu" + std::to_string(c), e2.back());
    }
    std::string svg_path = join(out_dir, "sensitivity.svg");
    plot.write(svg_path);
    man.output(svg_path);
    man.finish(true);
    return 0;
  } catch (const std::exception& e) {
    man.finish(false, e.what());
    std::cerr << "sensitivity: " << e.what() << '\n';
    return 2;
  }
}

int cmd_observe(const ExperimentConfig& cfg, const std::string& out_dir, std::uint64_t seed) {
  ManifestScope man("observe", cfg, seed, out_dir);
  try {
    GridSpec grid = cfg.grid();
    VelocityField u0 = peaks_initial_condition(grid);
    double grad_u0 = norm_grad(u0);
    Forcing f = Forcing::make(grid, cfg.forcing());
    Forcing g = Forcing::make(grid, cfg.observer_input_model(seed + 17));

    std::vector<std::string> kinds;
    if (cfg.observer_operator == "both") kinds = {"average", "point"};
    else kinds = {cfg.observer_operator};

    LinePlot plot("relative estimation error", "t", "rel err", false, true);
    for (const std::string& kind : kinds) {
      auto op = build_operator(kind, grid, cfg, seed);
      GainChoice gain = choose_gain(cfg, *op, grad_u0);
      if (gain.auto_mode) {
        std::string rp = join(out_dir, "gain_report_" + kind + ".txt");
        atomic_write(rp, gain_report_text(gain.report));
        man.output(rp);
      }
      ObserverConfig oc;
      oc.op = op;
      oc.gain = gain.L;
      oc.solver = cfg.solver();
      oc.rel_norm = cfg.error_norm == "h1" ? ErrorNorm::h1 : ErrorNorm::l2;

      int snap_every = cfg.snapshot_every;
      VelocityField u_final = u0;
      ErrorTrace trace = run_twin(
          u0, VelocityField::zero(grid), f, g, oc,
          [&](int step, double t, const VelocityField& u, const VelocityField& z,
              ErrorTrace& tr) {
            u_final = u;
            if (snap_every > 0 && step > 0 && step % snap_every == 0) {
              std::ostringstream su, sz;
              su << "u_" << kind << "_" << step << ".nsef";
              sz << "z_" << kind << "_" << step << ".nsef";
              save_nsef1(u, join(out_dir, su.str()));
              save_nsef1(z, join(out_dir, sz.str()));
              tr.snapshots.push_back(su.str());
              tr.snapshots.push_back(sz.str());
              man.output(join(out_dir, su.str()));
              man.output(join(out_dir, sz.str()));
            }
            (void)t;
          });

      std::string ep = join(out_dir, "errors_" + kind + ".csv");
      atomic_write(ep, trace.to_csv());
      man.output(ep);
      plot.add_series(kind, trace.times, trace.rel_err);
      man.metric("final_rel_err_" + kind, trace.rel_err.back());
      man.metric("gain_" + kind, gain.L);

      // final-time measurements of the truth, in the operator's layout
      std::string op_csv = join(out_dir, "observations_" + kind + ".csv");
      atomic_write(op_csv, op->apply(u_final).to_csv(kind == "average"));
      man.output(op_csv);
    }
    std::string svg_path = join(out_dir, "observer_error.svg");
    plot.write(svg_path);
    man.output(svg_path);
    man.finish(true);
    return 0;
  } catch (const std::exception& e) {
    man.finish(false, e.what());
    std::cerr << "observe: " << e.what() << '\n';
    return 2;
  }
}

int cmd_gain_report(const ExperimentConfig& cfg, const std::string& out_dir, std::uint64_t seed) {
  ManifestScope man("gain-report", cfg, seed, out_dir);
  try {
    GridSpec grid = cfg.grid();
    double grad_u0 = norm_grad(peaks_initial_condition(grid));
    Partition part(grid, cfg.obs_nx, cfg.obs_ny);
    AverageOperator op(part);
    DesignInputs in = cfg.design_inputs(op.c_omega(), op.h(), grad_u0);
    GainReport rep = build_gain_report(in);

    std::ostringstream os;
    os << gain_report_text(rep);
    // reference values quoted in the source experiments; deviations are
    // reported, never asserted
    const double ref_gamma = 71.0, ref_L = 410.6;
    os << "reference_gamma_max = " << format_double(ref_gamma) << '\n';
    os << "reference_L = " << format_double(ref_L) << '\n';
    if (rep.feasible) {
      os << "deviation_gamma_max = " << format_double(rep.gamma_max - ref_gamma) << '\n';
      os << "deviation_L_nabla = " << format_double(rep.L_nabla - ref_L) << '\n';
    }
    std::string rp = join(out_dir, "gain_report.txt");
    atomic_write(rp, os.str());
    man.output(rp);
    man.metric("gamma_max", rep.gamma_max);
    man.metric("theta_at_max", rep.theta_at_max);
    man.metric("L_nabla", rep.L_nabla);
    man.metric("L_delta", rep.L_delta);
    man.finish(true);
    return 0;
  } catch (const std::exception& e) {
    man.finish(false, e.what());
    std::cerr << "gain-report: " << e.what() << '\n';
    return 2;
  }
}

int cmd_compare_bounds(const ExperimentConfig& cfg, const std::string& out_dir,
                       std::uint64_t seed) {
  ManifestScope man("compare-bounds", cfg, seed, out_dir);
  try {
    Partition part(cfg.grid(), cfg.obs_nx, cfg.obs_ny);
    AverageOperator op(part);
    double grad_u0 = cfg.grad_u0_mode == "auto" ? 0.0 : cfg.grad_u0_value;
    DesignInputs base = cfg.design_inputs(op.c_omega(), op.h(), grad_u0);

    std::vector<double> nus(static_cast<std::size_t>(cfg.sweep_points));
    if (cfg.sweep_points == 1) {
      nus[0] = cfg.sweep_nu_min;
    } else {
      double llo = std::log(cfg.sweep_nu_min), lhi = std::log(cfg.sweep_nu_max);
      for (int i = 0; i < cfg.sweep_points; ++i)
        nus[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (cfg.sweep_points - 1));
    }
    std::vector<ComparisonRow> rows(nus.size());
    parallel_for(nus.size(), [&](std::size_t i) {
      DesignInputs in = base;
      in.nu = nus[i];
      ComparisonRow row;
      row.nu = nus[i];
      ArgmaxResult am = argmax_theta(in);
      row.feasible = am.feasible;
      if (am.feasible) {
        row.gamma_max = am.gamma_max;
        row.theta_max = am.theta_max;
        row.azouani = azouani_bound(in, cfg.sweep_c);
        row.log10_ratio = std::log10(row.theta_max / row.azouani);
      }
      rows[i] = row;
    });

    std::string cp = join(out_dir, "compare_bounds.csv");
    atomic_write(cp, comparison_csv(rows));
    man.output(cp);

    LinePlot plot("h^2 upper bounds", "nu", "bound", true, true);
    std::vector<double> xs, t, a;
    for (const auto& r : rows) {
      xs.push_back(r.nu);
      t.push_back(r.theta_max);
      a.push_back(r.azouani);
    }
    plot.add_series("theta(gamma_max)", xs, t);
    plot.add_series("prior bound", xs, a);
    std::string sp = join(out_dir, "compare_bounds.svg");
    plot.write(sp);
    man.output(sp);
    man.metric("log10_ratio_at_numin", rows.front().log10_ratio);
    man.finish(true);
    return 0;
  } catch (const std::exception& e) {
    man.finish(false, e.what());
    std::cerr << "compare-bounds: " << e.what() << '\n';
    return 2;
  }
}

int cmd_inequality_audit(const ExperimentConfig& cfg, const std::string& out_dir,
                         std::uint64_t seed) {
  ManifestScope man("inequality-audit", cfg, seed, out_dir);
  try {
    GridSpec grid = cfg.grid();
    std::vector<double> gammas;
    for (int i = 0; i < cfg.ineq_gamma_points; ++i) {
      double t = cfg.ineq_gamma_points == 1
                     ? 0.0
                     : static_cast<double>(i) / (cfg.ineq_gamma_points - 1);
      gammas.push_back(cfg.ineq_gamma_min *
                       std::pow(cfg.ineq_gamma_max / cfg.ineq_gamma_min, t));
    }
    RandomFieldSpec rf;
    rf.seed = seed ^ cfg.ineq_seed;
    rf.band = cfg.ineq_band;
    rf.count = cfg.ineq_count;
    rf.spectrum_decay = cfg.ineq_decay;

    std::vector<ViolationReport> reports;
    if (cfg.ineq_count > 0) {
      RandomFieldSpec flat = rf;
      flat.spectrum_decay = 0.0;
      flat.seed = rf.seed + 1;
      for (const RandomFieldSpec& spec : {rf, flat}) {
        reports.push_back(check_agmoN(grid, spec, gammas));
        reports.push_back(check_agmon(grid, spec));
        reports.push_back(check_brezis(grid, spec));
      }
      reports.push_back(check_appendix_integrals(grid, gammas));
      RandomFieldSpec prop = rf;
      prop.count = std::min(rf.count, 500);
      reports.push_back(
          check_prop1_ingredients(grid, prop, AverageOperator(Partition(grid, cfg.obs_nx,
                                                                        cfg.obs_ny))));
    }

    std::string vp = join(out_dir, "violations.csv");
    atomic_write(vp, violations_csv(reports));
    man.output(vp);

    std::ostringstream sum;
    std::size_t total_viol = 0, total_checked = 0;
    sum << "check,checked,skipped,violations,worst_margin,worst_identity_defect\n";
    for (const auto& r : reports) {
      sum << r.check << ',' << r.checked << ',' << r.skipped << ',' << r.violations.size() << ','
          << format_double(r.worst_margin) << ',' << format_double(r.worst_identity_defect)
          << '\n';
      total_viol += r.violations.size();
      total_checked += r.checked;
    }
    std::string sp = join(out_dir, "summary.csv");
    atomic_write(sp, sum.str());
    man.output(sp);
    man.metric("total_checked", static_cast<double>(total_checked));
    man.metric("total_violations", static_cast<double>(total_viol));
    man.finish(total_viol == 0,
               total_viol == 0 ? "" : std::to_string(total_viol) + " inequality violations");
    if (total_viol != 0) std::cerr << "inequality-audit: " << total_viol << " violations\n";
    return total_viol == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    man.finish(false, e.what());
    std::cerr << "inequality-audit: " << e.what() << '\n';
    return 2;
  }
}

int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_dir, std::uint64_t seed, const std::string& preset,
                std::string* error_out) {
  try {
    ExperimentConfig cfg = config_path.empty()
                               ? ExperimentConfig::defaults(preset.empty() ? "desk" : preset)
                               : ExperimentConfig::from_file(config_path,
                                                             preset.empty() ? "desk" : preset);
    if (command == "simulate") return cmd_simulate(cfg, out_dir, seed);
    if (command == "sensitivity") return cmd_sensitivity(cfg, out_dir, seed);
    if (command == "observe") return cmd_observe(cfg, out_dir, seed);
    if (command == "gain-report") return cmd_gain_report(cfg, out_dir, seed);
    if (command == "compare-bounds") return cmd_compare_bounds(cfg, out_dir, seed);
    if (command == "inequality-audit") return cmd_inequality_audit(cfg, out_dir, seed);
    throw ConfigError("unknown command: " + command);
  } catch (const std::exception& e) {
    // config/dispatch failures still leave a manifest behind
    RunManifest m;
    m.command = command;
    m.seed = seed;
    m.code_version = kVersion;
    m.started_at = m.finished_at = timestamp_utc();
    m.success = false;
    m.failure_cause = e.what();
    try {
      m.write((fs::path(out_dir) / "manifest.json").string());
    } catch (...) {
    }
    if (error_out) *error_out = e.what();
    std::cerr << command << ": " << e.what() << '\n';
    return 2;
  }
}

}  // namespace nseobs
