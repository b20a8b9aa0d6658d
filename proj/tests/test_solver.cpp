#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "nseobs/io.hpp"
#include "nseobs/random_fields.hpp"
#include "nseobs/solver.hpp"
#include "nseobs/spectral_ops.hpp"

using namespace nseobs;

namespace {
const double kTwoPi = 2.0 * M_PI;
GridSpec grid64() { return GridSpec(kTwoPi, kTwoPi, 64, 64); }
}  // namespace

TEST_CASE("kolmogorov forcing hits the target norm exactly") {
  GridSpec g = grid64();
  VelocityField f = kolmogorov_forcing(g, 6, 0.1);
  CHECK(norm_l2(f) == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(f.divergence_defect() <= 1e-13);
  CHECK(f.mean_defect() == 0.0);
  CHECK(norm_l2(kolmogorov_forcing(g, 6, 0.0)) == 0.0);
  CHECK_THROWS_AS(kolmogorov_forcing(g, 40, 0.1), std::invalid_argument);  // beyond 2/3 band
  CHECK_THROWS_AS(kolmogorov_forcing(g, 0, 0.1), std::invalid_argument);

  // f = a sin(6 y) in the first component
  std::vector<double> phys = f.u1().to_physical(1);
  double a = 0.1 * std::sqrt(2.0 / (g.ell1() * g.ell2()));
  double worst = 0.0;
  for (int i2 = 0; i2 < g.n2(); ++i2) {
    double y = g.ell2() * i2 / g.n2();
    worst = std::max(worst, std::abs(phys[g.index(5, i2)] - a * std::sin(6.0 * y)));
  }
  CHECK(worst <= 1e-15);
}

TEST_CASE("peaks initial condition is a valid state") {
  GridSpec g(kTwoPi, kTwoPi, 128, 128);
  VelocityField u = peaks_initial_condition(g);
  CHECK(u.mean_defect() <= 1e-14 * u.max_abs_coeff());
  CHECK(u.divergence_defect() <= 1e-12 * u.max_abs_coeff() * g.kmax1());
  CHECK(norm_l2(u) > 0.1);
}

TEST_CASE("peaks vorticity converges spectrally with resolution") {
  // the curl of the constructed velocity must reproduce the sampled bump
  // function up to its (grid-dependent) spectral truncation
  auto defect = [](int n) {
    GridSpec g(kTwoPi, kTwoPi, n, n);
    VelocityField u = peaks_initial_condition(g);
    ScalarField w = vorticity(u);
    ScalarField target = ScalarField::sample(g, [&](double x, double y) {
      double a = 6.0 * x / g.ell1() - 3.0;
      double b = 6.0 * y / g.ell2() - 3.0;
      return 3.0 * (1.0 - a) * (1.0 - a) * std::exp(-a * a - (b + 1.0) * (b + 1.0)) -
             10.0 * (a / 5.0 - a * a * a - std::pow(b, 5)) * std::exp(-a * a - b * b) -
             (1.0 / 3.0) * std::exp(-(a + 1.0) * (a + 1.0) - b * b);
    });
    target.coeffs()[0] = 0.0;
    dealias_inplace(target);
    return norm_l2(w - target) / norm_l2(target);
  };
  double d64 = defect(64), d128 = defect(128);
  CHECK(d128 < d64);
  CHECK(d128 <= 1e-6);

  // the mapped bump function is far from periodic (the fifth-power term is
  // O(0.3) at the y-boundary), so the norm converges algebraically, not
  // exponentially: successive doublings shrink the change
  GridSpec g64(kTwoPi, kTwoPi, 64, 64), g128b(kTwoPi, kTwoPi, 128, 128),
      g256(kTwoPi, kTwoPi, 256, 256);
  double n64 = norm_l2(peaks_initial_condition(g64));
  double n128 = norm_l2(peaks_initial_condition(g128b));
  double n256 = norm_l2(peaks_initial_condition(g256));
  CHECK(std::abs(n256 - n128) < std::abs(n128 - n64));
  CHECK(std::abs(n256 - n128) <= 5e-5 * n128);
}

TEST_CASE("rhs: zero input, eigen-dynamics, and weak-form duality") {
  GridSpec g = grid64();
  VelocityField zero = VelocityField::zero(g);
  CHECK(norm_l2(rhs(zero, zero, 0.01)) == 0.0);

  VelocityField tg = VelocityField::taylor_green(g);
  double nu = 0.37;
  VelocityField r = rhs(tg, zero, nu);
  CHECK(norm_l2(r + 2.0 * nu * tg) <= 1e-11 * norm_l2(tg));

  RandomFieldSpec spec{17, 14, 1.5, 2, true};
  auto fields = make_random_fields(g, spec);
  VelocityField v = dealiased(fields[0]);
  VelocityField phi = dealiased(fields[1]);
  VelocityField f = kolmogorov_forcing(g, 4, 0.3);
  double lhs = inner_l2(rhs(v, f, nu), phi);
  double expect = -bilinear_b(v, v, phi) - nu * inner_grad(v, phi) + inner_l2(f, phi);
  double scale = (norm_l2(v) * norm_grad(v) + 1.0) * norm_l2(phi);
  CHECK(std::abs(lhs - expect) <= 1e-10 * scale);
}

TEST_CASE("midpoint step reproduces the exact single-mode decay factor") {
  GridSpec g = grid64();
  SolverConfig cfg;
  cfg.nu = 0.3;
  cfg.dt = 0.05;
  cfg.include_nonlinear = false;
  VelocityField v(g);
  v.u1().at(0, 3) = Complex{0.0, -0.5};
  v.u1().at(0, g.n2() - 3) = Complex{0.0, 0.5};  // sin(3y), |k|^2 = 9
  double x = 0.5 * cfg.dt * cfg.nu * 9.0;
  double factor = (1.0 - x) / (1.0 + x);
  VelocityField v1 = implicit_midpoint_step(v, VelocityField::zero(g), cfg);
  CHECK(norm_l2(v1 - factor * v) <= 1e-14 * norm_l2(v));
}

TEST_CASE("taylor-green decays at the analytic rate") {
  GridSpec g = grid64();
  SolverConfig cfg;
  cfg.nu = 0.01;
  cfg.dt = 1e-3;
  cfg.picard_tol = 1e-14;
  VelocityField v = VelocityField::taylor_green(g);
  VelocityField v0 = v;
  VelocityField zero = VelocityField::zero(g);
  double prev = norm_l2(v);
  for (int s = 0; s < 1000; ++s) {
    v = implicit_midpoint_step(v, zero, cfg, s * cfg.dt);
    double now = norm_l2(v);
    CHECK(now <= prev * (1.0 + 1e-14));  // free decay is monotone
    prev = now;
  }
  double dec = std::exp(-2.0 * cfg.nu * 1.0);
  CHECK(norm_l2(v - dec * v0) / (dec * norm_l2(v0)) <= 1e-8);
}

TEST_CASE("picard failure is reported with the failing time") {
  GridSpec g(kTwoPi, kTwoPi, 32, 32);
  SolverConfig cfg;
  cfg.nu = 1e-4;
  cfg.dt = 10.0;  // far past the contraction threshold
  cfg.picard_max_iters = 4;
  VelocityField v = 10.0 * VelocityField::taylor_green(g);
  try {
    implicit_midpoint_step(v, VelocityField::zero(g), cfg, 1.25);
    FAIL("expected StepFailure");
  } catch (const StepFailure& e) {
    CHECK(e.time == doctest::Approx(1.25));
    CHECK(e.iters == 4);
  }
}

TEST_CASE("simulate records the analytic taylor-green decay") {
  GridSpec g = grid64();
  SolverConfig cfg;
  cfg.nu = 0.1;
  cfg.dt = 2e-3;
  cfg.t_end = 1.0;
  cfg.record_every = 100;
  Forcing none(VelocityField::zero(g), std::nullopt, 0.0);
  TrajectoryRecord rec = simulate(VelocityField::taylor_green(g), none, cfg);
  REQUIRE(rec.times.size() == 6);
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    double expect = M_PI * std::sqrt(2.0) * std::exp(-2.0 * cfg.nu * rec.times[i]);
    CHECK(rec.l2[i] == doctest::Approx(expect).epsilon(1e-7));
  }

  cfg.t_end = 0.0;
  TrajectoryRecord rec0 = simulate(VelocityField::taylor_green(g), none, cfg);
  CHECK(rec0.times.size() == 1);
  CHECK(rec0.l2[0] == doctest::Approx(M_PI * std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("simulate is deterministic") {
  GridSpec g(kTwoPi, kTwoPi, 32, 32);
  SolverConfig cfg;
  cfg.nu = 0.02;
  cfg.dt = 0.01;
  cfg.t_end = 0.5;
  cfg.record_every = 5;
  Forcing f(kolmogorov_forcing(g, 4, 0.2), std::nullopt, 0.0);
  VelocityField u0 = peaks_initial_condition(g);
  TrajectoryRecord a = simulate(u0, f, cfg);
  TrajectoryRecord b = simulate(u0, f, cfg);
  CHECK(trajectory_csv(a) == trajectory_csv(b));
}

TEST_CASE("forcing perturbation respects the pointwise envelope") {
  GridSpec g = grid64();
  ForcingSpec spec;
  spec.kind = ForcingSpec::Kind::kolmogorov;
  spec.mode = 6;
  spec.target_l2 = 0.1;
  spec.perturbation = PerturbationSpec{0.001, 2.0, 99};
  Forcing f = Forcing::make(g, spec);
  CHECK(f.time_dependent());
  for (double t : {0.0, 0.5, 2.0}) {
    VelocityField diff = f.at(t) - f.base();
    double sup = norms(diff, 4).linf;
    CHECK(sup < 0.001 * std::exp(-2.0 * t));
    CHECK(sup > 0.5 * 0.001 * std::exp(-2.0 * t));
  }
}

TEST_CASE("custom snapshot forcing is projected and normalized") {
  GridSpec g(kTwoPi, kTwoPi, 32, 32);
  VelocityField raw = make_random_field(g, RandomFieldSpec{5, 8, 1.0, 1, false}, 0);
  std::string path = (std::filesystem::temp_directory_path() / "nseobs_forcing.nsef").string();
  save_nsef1(raw, path);
  ForcingSpec spec;
  spec.kind = ForcingSpec::Kind::custom_snapshot;
  spec.snapshot_path = path;
  spec.target_l2 = 0.25;
  Forcing f = Forcing::make(g, spec);
  CHECK(norm_l2(f.base()) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(f.base().divergence_defect() <= 1e-12 * f.base().max_abs_coeff() * g.kmax1());
  std::filesystem::remove(path);
}

TEST_CASE("energy audit accepts decaying and forced runs") {
  GridSpec g(kTwoPi, kTwoPi, 32, 32);
  SolverConfig cfg;
  cfg.nu = 0.1;
  cfg.dt = 0.01;
  cfg.t_end = 2.0;
  cfg.record_every = 20;

  Forcing none(VelocityField::zero(g), std::nullopt, 0.0);
  TrajectoryRecord rec = simulate(VelocityField::taylor_green(g), none, cfg);
  EnergyAudit audit = energy_audit(rec, 0.0, cfg.nu, g);
  CHECK(audit.checked > 0);
  CHECK(audit.violations.empty());

  Forcing f(kolmogorov_forcing(g, 4, 0.2), std::nullopt, 0.0);
  TrajectoryRecord rec2 = simulate(peaks_initial_condition(g), f, cfg);
  EnergyAudit audit2 = energy_audit(rec2, 0.2, cfg.nu, g);
  CHECK(audit2.violations.empty());

  EnergyAudit empty = energy_audit(TrajectoryRecord{}, 0.0, cfg.nu, g);
  CHECK(empty.checked == 0);
  CHECK(empty.violations.empty());
}

TEST_CASE("published-resolution run shape stays finite") {
  // short smoke of the 200-point configuration; the full 4000-step run is the
  // optional paper-scale suite
  GridSpec g(kTwoPi, kTwoPi, 200, 200);
  SolverConfig cfg;
  cfg.nu = 0.01;
  cfg.dt = 0.0025;
  cfg.t_end = 0.025;
  cfg.record_every = 5;
  Forcing f(kolmogorov_forcing(g, 6, 0.1), std::nullopt, 0.0);
  TrajectoryRecord rec = simulate(peaks_initial_condition(g), f, cfg);
  REQUIRE(rec.times.size() >= 2);
  CHECK(rec.times.size() == rec.l2.size());
  CHECK(rec.times.size() == rec.grad_l2.size());
  CHECK(rec.times.size() == rec.h1.size());
  CHECK(rec.times.size() == rec.lap_l2.size());
  for (std::size_t i = 1; i < rec.times.size(); ++i) CHECK(rec.times[i] > rec.times[i - 1]);
  for (double x : rec.l2) CHECK(std::isfinite(x));
}

TEST_CASE("state invariants survive a forced run") {
  GridSpec g(kTwoPi, kTwoPi, 48, 48);
  SolverConfig cfg;
  cfg.nu = 0.02;
  cfg.dt = 0.005;
  cfg.t_end = 1.0;
  cfg.record_every = 200;
  Forcing f(kolmogorov_forcing(g, 6, 0.5), std::nullopt, 0.0);
  VelocityField last = VelocityField::zero(g);
  simulate(peaks_initial_condition(g), f, cfg,
           [&](int, double, const VelocityField& v, TrajectoryRecord&) { last = v; });
  double scale = last.max_abs_coeff();
  CHECK(last.mean_defect() <= 1e-11 * scale);
  CHECK(last.divergence_defect() <= 1e-11 * scale * g.kmax1());
}
