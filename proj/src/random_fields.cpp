#include "nseobs/random_fields.hpp"

#include <cmath>

#include "nseobs/spectral_ops.hpp"

namespace nseobs {
namespace {

// splitmix64; fully specified so streams are identical on every platform.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // in (0,1)
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }
  double gauss() {
    double u = uniform(), v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
  }
};

}  // namespace

VelocityField make_random_field(const GridSpec& grid, const RandomFieldSpec& spec,
                                std::uint64_t field_index) {
  Rng rng(spec.seed * 0x9e3779b97f4a7c15ULL + field_index + 1);
  int band = std::min({spec.band, grid.kmax1(), grid.kmax2()});
  VelocityField v(grid);
  // Populate the half lattice k1 > 0, plus k1 == 0 with k2 > 0; mirror the rest.
  for (int a = -band; a <= band; ++a) {
    for (int b = -band; b <= band; ++b) {
      if (a == 0 && b == 0) continue;
      bool primary = a > 0 || (a == 0 && b > 0);
      if (!primary) continue;
      double k = std::sqrt(static_cast<double>(a) * a + static_cast<double>(b) * b);
      double amp = std::pow(k, -spec.spectrum_decay);
      Complex c1{amp * rng.gauss(), amp * rng.gauss()};
      Complex c2{amp * rng.gauss(), amp * rng.gauss()};
      int i1 = a >= 0 ? a : a + grid.n1();
      int i2 = b >= 0 ? b : b + grid.n2();
      int j1 = (grid.n1() - i1) % grid.n1();
      int j2 = (grid.n2() - i2) % grid.n2();
      v.u1().at(i1, i2) = c1;
      v.u1().at(j1, j2) = std::conj(c1);
      v.u2().at(i1, i2) = c2;
      v.u2().at(j1, j2) = std::conj(c2);
    }
  }
  if (spec.divergence_free) return leray_project(v);
  return v;
}

std::vector<VelocityField> make_random_fields(const GridSpec& grid, const RandomFieldSpec& spec) {
  std::vector<VelocityField> out;
  out.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i)
    out.push_back(make_random_field(grid, spec, static_cast<std::uint64_t>(i)));
  return out;
}

VelocityField make_bounded_noise(const GridSpec& grid, std::uint64_t seed, double sup_bound,
                                 bool divergence_free) {
  RandomFieldSpec spec;
  spec.seed = seed;
  spec.band = std::min(grid.kmax1(), grid.kmax2());
  spec.spectrum_decay = 0.0;  // white across the band, like grid-sampled noise
  spec.divergence_free = divergence_free;
  VelocityField v = make_random_field(grid, spec, 0);
  double sup = norms(v, 4).linf;
  if (sup <= 0.0) return v;
  v *= sup_bound * 0.999 / sup;
  return v;
}

}  // namespace nseobs
