#include <doctest.h>

#include <cmath>

#include "nseobs/inequalities.hpp"
#include "nseobs/quadrature.hpp"
#include "nseobs/spectral_ops.hpp"

using namespace nseobs;

namespace {
const double kTwoPi = 2.0 * M_PI;

std::vector<double> gamma_grid(int n = 20, double lo = 1e-2, double hi = 1e4) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return g;
}
}  // namespace

TEST_CASE("sup-norm bound on the taylor-green field at gamma = 1") {
  // closed-form norms: H1 = pi sqrt(6), lap = 2 pi sqrt(2), linf = 1; the
  // two terms evaluate to ~2.556 and ~2.507
  GridSpec g(kTwoPi, kTwoPi, 64, 64);
  double h1 = M_PI * std::sqrt(6.0), lap = 2.0 * M_PI * std::sqrt(2.0);
  double rhs = agmoN_rhs(g, 1.0, h1, lap);
  CHECK(rhs == doctest::Approx(5.0626).epsilon(1e-4));
  double term2 = std::sqrt(2.0 * M_PI);  // ||l|| lap / sqrt(32 pi^3) collapses to sqrt(2 pi)
  CHECK(rhs - term2 == doctest::Approx(2.5560).epsilon(1e-4));
  NormReport n = norms(VelocityField::taylor_green(g), 4);
  CHECK(n.linf <= rhs);
}

TEST_CASE("no sup-norm bound violations over random fields and gamma grid") {
  GridSpec g(kTwoPi, kTwoPi, 64, 64);
  RandomFieldSpec spec{314, 20, 1.5, 200, true};
  ViolationReport rep = check_agmoN(g, spec, gamma_grid());
  CHECK(rep.checked == 200 * 20);
  CHECK(rep.clean());
  CHECK(rep.worst_margin > 0.0);

  RandomFieldSpec flat = spec;
  flat.spectrum_decay = 0.0;
  flat.count = 100;
  CHECK(check_agmoN(g, flat, gamma_grid()).clean());
}

TEST_CASE("zero-count specs give empty reports") {
  GridSpec g(kTwoPi, kTwoPi, 32, 32);
  RandomFieldSpec spec{1, 8, 1.5, 0, true};
  ViolationReport rep = check_agmoN(g, spec, gamma_grid());
  CHECK(rep.checked == 0);
  CHECK(rep.clean());
}

TEST_CASE("corollary substitutions: identity for the log form, majorization for the other") {
  GridSpec g(kTwoPi, kTwoPi, 64, 64);
  RandomFieldSpec spec{2718, 18, 1.5, 100, true};
  ViolationReport agmon = check_agmon(g, spec);
  CHECK(agmon.clean());
  CHECK(agmon.worst_identity_defect <= 1e-12);
  ViolationReport brezis = check_brezis(g, spec);
  CHECK(brezis.clean());
  CHECK(brezis.worst_identity_defect <= 1e-12);

  RandomFieldSpec flat = spec;
  flat.spectrum_decay = 0.0;
  CHECK(check_agmon(g, flat).clean());
  CHECK(check_brezis(g, flat).clean());
}

TEST_CASE("taylor-green satisfies the agmon-type bound with unit margin") {
  GridSpec g(kTwoPi, kTwoPi, 64, 64);
  double h1 = M_PI * std::sqrt(6.0), lap = 2.0 * M_PI * std::sqrt(2.0);
  double elln = kTwoPi * std::sqrt(2.0);
  double printed = (std::sqrt(2.0 * M_PI / (kTwoPi * kTwoPi)) +
                    elln / std::sqrt(32.0 * M_PI * M_PI * M_PI)) *
                   std::sqrt(h1 * lap);
  NormReport n = norms(VelocityField::taylor_green(g), 4);
  CHECK(printed - n.linf > 1.0);
}

TEST_CASE("brezis log argument is scale invariant") {
  GridSpec g(kTwoPi, kTwoPi, 64, 64);
  VelocityField v = VelocityField::taylor_green(g);
  NormReport a = norms(v, 4);
  NormReport b = norms(7.0 * v, 4);
  double arg_a = a.lap_l2 * a.lap_l2 / (a.h1 * a.h1);
  double arg_b = b.lap_l2 * b.lap_l2 / (b.h1 * b.h1);
  CHECK(arg_a == doctest::Approx(arg_b).epsilon(1e-12));
}

TEST_CASE("appendix integral bounds on a gamma and domain sweep") {
  std::vector<double> gammas = gamma_grid(10, 1e-2, 1e3);
  for (auto [l1, l2] : {std::pair{kTwoPi, kTwoPi}, std::pair{kTwoPi, M_PI}, std::pair{1.0, 3.0}}) {
    GridSpec g(l1, l2, 8, 8);
    ViolationReport rep = check_appendix_integrals(g, gammas);
    CHECK(rep.clean());
    CHECK(rep.worst_identity_defect <= 1e-8);
  }
}

TEST_CASE("adaptive quadrature reproduces an arctan closed form") {
  double ell = kTwoPi;
  for (double gamma : {0.3, 2.0, 50.0}) {
    double quad = integrate(
        [&](double r) { return 1.0 / (ell * ell + 4.0 * M_PI * M_PI * r * r); }, 0.0, gamma,
        1e-12);
    double closed = std::atan(2.0 * M_PI * gamma / ell) / (2.0 * M_PI * ell);
    CHECK(quad == doctest::Approx(closed).epsilon(1e-10));
  }
}

TEST_CASE("disk integral meets its log bound with equality on square domains") {
  double ell = kTwoPi;
  for (double gamma : {0.3, 2.0, 50.0}) {
    double quad = integrate(
        [&](double r) {
          return 2.0 * M_PI * r / (ell * ell + 4.0 * M_PI * M_PI * r * r);
        },
        0.0, gamma, 1e-12);
    double bound = std::log(1.0 + 4.0 * gamma * gamma * M_PI * M_PI / (ell * ell)) / (4.0 * M_PI);
    CHECK(quad == doctest::Approx(bound).epsilon(1e-10));
  }
  // strictly below the bound once the sides differ
  double g2 = 1.7, l1 = kTwoPi, l2 = M_PI;
  double quad = integrate(
      [&](double r) {
        return 2.0 * M_PI * r /
               std::sqrt((l1 * l1 + 4.0 * M_PI * M_PI * r * r) *
                         (l2 * l2 + 4.0 * M_PI * M_PI * r * r));
      },
      0.0, g2, 1e-12);
  double bound = std::log(1.0 + 4.0 * g2 * g2 * M_PI * M_PI / (l1 * l2)) / (4.0 * M_PI);
  CHECK(quad < bound);
}

TEST_CASE("small gamma sends both the integral and its bound to zero") {
  GridSpec g(kTwoPi, kTwoPi, 8, 8);
  double gamma = 1e-9;
  double i1 = integrate(
      [&](double r) {
        return 1.0 / std::sqrt((g.ell1() * g.ell1() + 4.0 * M_PI * M_PI * r * r) *
                               (g.ell2() * g.ell2() + 4.0 * M_PI * M_PI * r * r));
      },
      0.0, gamma, 1e-14);
  double bound =
      std::log(1.0 + 4.0 * gamma * gamma * M_PI * M_PI / (g.ell1() * g.ell2())) / (4.0 * M_PI);
  CHECK(i1 <= 1e-9);
  CHECK(bound <= 1e-9);
}

TEST_CASE("detectability-proof ingredient inequalities on random fields") {
  GridSpec g(kTwoPi, kTwoPi, 64, 64);
  AverageOperator op(Partition(g, 16, 16));
  RandomFieldSpec spec{555, 20, 1.5, 300, true};
  ViolationReport rep = check_prop1_ingredients(g, spec, op);
  CHECK(rep.clean());
  CHECK(rep.checked == 300 * 4);

  RandomFieldSpec flat = spec;
  flat.spectrum_decay = 0.0;
  flat.count = 200;
  CHECK(check_prop1_ingredients(g, flat, op).clean());
}

TEST_CASE("piecewise-constant error fields make the observed term dominate") {
  // e in the range of the lift: Ce = e, so the interpolation bound reduces to
  // the first product plus the h-term
  GridSpec g(kTwoPi, kTwoPi, 64, 64);
  AverageOperator op(Partition(g, 8, 8));
  VelocityField raw = make_random_field(g, RandomFieldSpec{77, 12, 1.5, 1, true}, 0);
  VelocityField e = op.project(raw);
  double grad2 = inner_grad(e, e);
  double ce = norm_l2(op.project(e));
  CHECK(ce == doctest::Approx(norm_l2(e)).epsilon(1e-10));
  double lap = norm_lap(e);
  CHECK(grad2 <= ce * lap * (1.0 + 1e-10));
}

TEST_CASE("reports carry the seed and violations serialize to csv") {
  GridSpec g(kTwoPi, kTwoPi, 32, 32);
  RandomFieldSpec spec{424242, 8, 1.5, 3, true};
  ViolationReport rep = check_agmoN(g, spec, gamma_grid(5));
  CHECK(rep.seed == 424242);
  std::string csv = violations_csv({rep});
  CHECK(csv.substr(0, csv.find('\n')) == "check,seed,field_id,gamma,lhs,rhs,margin");

  ViolationReport fake;
  fake.check = "demo";
  fake.violations.push_back({"demo", 7, 3, 1.5, 2.0, 1.0, -1.0});
  std::string csv2 = violations_csv({fake});
  CHECK(csv2.find("demo,7,3,1.5,2,1,-1") != std::string::npos);
}

TEST_CASE("identical seeds reproduce identical reports") {
  GridSpec g(kTwoPi, kTwoPi, 32, 32);
  RandomFieldSpec spec{11, 10, 1.5, 20, true};
  ViolationReport a = check_agmoN(g, spec, gamma_grid(5));
  ViolationReport b = check_agmoN(g, spec, gamma_grid(5));
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.checked == b.checked);
}
