#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "nseobs.h"

namespace fs = std::filesystem;

namespace {
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("nseobs_capi_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};
}  // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(std::strlen(nseobs_version()) > 0);
  CHECK(nseobs_last_error() != nullptr);
}

TEST_CASE("grid lifecycle and validation") {
  nseobs_grid* g = nullptr;
  CHECK(nseobs_grid_create(2.0 * M_PI, 2.0 * M_PI, 64, 64, 2.0 / 3.0, &g) == NSEOBS_OK);
  REQUIRE(g != nullptr);
  CHECK(nseobs_grid_lambda1(g) == doctest::Approx(1.0));
  nseobs_grid_destroy(g);

  nseobs_grid* bad = nullptr;
  CHECK(nseobs_grid_create(-1.0, 1.0, 64, 64, 2.0 / 3.0, &bad) == NSEOBS_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(nseobs_last_error()) > 0);
  CHECK(nseobs_grid_create(1.0, 1.0, 7, 7, 2.0 / 3.0, &bad) == NSEOBS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("field constructors and norms through the c surface") {
  nseobs_grid* g = nullptr;
  REQUIRE(nseobs_grid_create(2.0 * M_PI, 2.0 * M_PI, 64, 64, 2.0 / 3.0, &g) == NSEOBS_OK);

  nseobs_field* tg = nullptr;
  REQUIRE(nseobs_field_taylor_green(g, &tg) == NSEOBS_OK);
  nseobs_norms n{};
  REQUIRE(nseobs_field_norms(tg, 4, &n) == NSEOBS_OK);
  CHECK(n.l2 == doctest::Approx(M_PI * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(n.grad_l2 == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
  CHECK(n.lap_l2 == doctest::Approx(2.0 * M_PI * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(n.linf == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(n.linf_oversampling == 4);

  nseobs_field* f = nullptr;
  REQUIRE(nseobs_field_kolmogorov(g, 6, 0.1, &f) == NSEOBS_OK);
  nseobs_norms nf{};
  REQUIRE(nseobs_field_norms(f, 1, &nf) == NSEOBS_OK);
  CHECK(nf.l2 == doctest::Approx(0.1).epsilon(1e-12));

  nseobs_field* out = nullptr;
  CHECK(nseobs_field_kolmogorov(g, 1000, 0.1, &out) == NSEOBS_ERR_INVALID_ARGUMENT);

  nseobs_field* pk = nullptr;
  REQUIRE(nseobs_field_peaks(g, &pk) == NSEOBS_OK);
  nseobs_norms np{};
  REQUIRE(nseobs_field_norms(pk, 1, &np) == NSEOBS_OK);
  CHECK(np.l2 > 1.0);

  nseobs_field_destroy(tg);
  nseobs_field_destroy(f);
  nseobs_field_destroy(pk);
  nseobs_grid_destroy(g);
}

TEST_CASE("snapshot save and load through the c surface") {
  TempDir tmp;
  nseobs_grid* g = nullptr;
  REQUIRE(nseobs_grid_create(2.0 * M_PI, 2.0 * M_PI, 32, 32, 2.0 / 3.0, &g) == NSEOBS_OK);
  nseobs_field* tg = nullptr;
  REQUIRE(nseobs_field_taylor_green(g, &tg) == NSEOBS_OK);
  std::string p = tmp.file("tg.nsef");
  REQUIRE(nseobs_field_save(tg, p.c_str()) == NSEOBS_OK);

  nseobs_field* back = nullptr;
  REQUIRE(nseobs_field_load(p.c_str(), &back) == NSEOBS_OK);
  nseobs_norms a{}, b{};
  nseobs_field_norms(tg, 1, &a);
  nseobs_field_norms(back, 1, &b);
  CHECK(a.l2 == doctest::Approx(b.l2).epsilon(1e-13));

  nseobs_field* missing = nullptr;
  CHECK(nseobs_field_load(tmp.file("nope.nsef").c_str(), &missing) == NSEOBS_ERR_IO);

  nseobs_field_destroy(tg);
  nseobs_field_destroy(back);
  nseobs_grid_destroy(g);
}

TEST_CASE("gain design through the c surface") {
  nseobs_gain_inputs in{};
  in.nu = 0.01;
  in.ell1 = in.ell2 = 2.0 * M_PI;
  in.f_l2 = 0.1;
  in.kappa = 1.1;
  in.c_omega = 1.0 / (4.0 * M_PI * M_PI);
  in.h = 2.0 * M_PI / 150.0;
  in.beta = 0.96;
  in.theta_factor = 1.1;
  in.grad_u0_l2 = 10.0;
  nseobs_gain_report rep{};
  REQUIRE(nseobs_gain_design(&in, &rep) == NSEOBS_OK);
  CHECK(rep.feasible == 1);
  CHECK(rep.h_feasible_c1 == 1);
  CHECK(rep.theta_at_max > 0.0);
  CHECK(rep.L_nabla > 380.0);
  CHECK(rep.L_nabla < 440.0);
  CHECK(rep.lambda1 == doctest::Approx(1.0));

  nseobs_gain_inputs bad = in;
  bad.kappa = 0.5;
  CHECK(nseobs_gain_design(&bad, &rep) == NSEOBS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("command dispatch through the c surface") {
  TempDir tmp;
  std::string cfg_path = tmp.file("cfg.ini");
  {
    std::ofstream os(cfg_path);
    os << "[grid]\nn1 = 32\nn2 = 32\n[solver]\ndt = 0.01\nt_end = 0.05\n";
  }
  std::string out = tmp.file("out");
  CHECK(nseobs_run("simulate", cfg_path.c_str(), out.c_str(), 1, "desk") == NSEOBS_OK);
  CHECK(fs::exists(out + "/trajectory.csv"));
  CHECK(fs::exists(out + "/manifest.json"));

  CHECK(nseobs_run("warp", nullptr, out.c_str(), 1, "desk") != NSEOBS_OK);
  CHECK(std::string(nseobs_last_error()).find("warp") != std::string::npos);
  CHECK(nseobs_run(nullptr, nullptr, out.c_str(), 1, "desk") == NSEOBS_ERR_INVALID_ARGUMENT);
}
