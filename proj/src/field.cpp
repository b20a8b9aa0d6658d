#include "nseobs/field.hpp"

#include <cmath>
#include <stdexcept>

#include "nseobs/fft.hpp"

namespace nseobs {

ScalarField::ScalarField(const GridSpec& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid.size())
    throw std::invalid_argument("ScalarField: coefficient count does not match grid");
}

ScalarField ScalarField::from_physical(const GridSpec& grid, const std::vector<double>& samples) {
  if (samples.size() != grid.size())
    throw std::invalid_argument("ScalarField::from_physical: sample count does not match grid");
  std::vector<Complex> tmp(samples.begin(), samples.end());
  ScalarField f(grid);
  fft::forward(grid.n1(), grid.n2(), tmp.data(), f.coeffs_.data());
  return f;
}

ScalarField ScalarField::sample(const GridSpec& grid,
                                const std::function<double(double, double)>& f) {
  std::vector<double> s(grid.size());
  for (int i1 = 0; i1 < grid.n1(); ++i1) {
    double x = grid.ell1() * i1 / grid.n1();
    for (int i2 = 0; i2 < grid.n2(); ++i2) {
      double y = grid.ell2() * i2 / grid.n2();
      s[grid.index(i1, i2)] = f(x, y);
    }
  }
  return from_physical(grid, s);
}

std::vector<double> ScalarField::to_physical(int oversample) const {
  if (oversample < 1) throw std::invalid_argument("to_physical: oversample must be >= 1");
  require_hermitian();
  const int n1 = grid_.n1(), n2 = grid_.n2();
  const int m1 = n1 * oversample, m2 = n2 * oversample;
  std::vector<Complex> big(static_cast<std::size_t>(m1) * m2, Complex{});
  // Nyquist rows/columns are split across +-n/2 on the finer lattice so the
  // trigonometric interpolant stays real.
  auto targets = [&](int k, int n, int m, int out[2], double w[2]) -> int {
    if (oversample > 1 && k == n / 2) {
      out[0] = n / 2;
      out[1] = m - n / 2;
      w[0] = w[1] = 0.5;
      return 2;
    }
    out[0] = k >= 0 ? k : k + m;
    w[0] = 1.0;
    return 1;
  };
  for (int i1 = 0; i1 < n1; ++i1) {
    int j1[2];
    double w1[2];
    int c1 = targets(grid_.k1(i1), n1, m1, j1, w1);
    for (int i2 = 0; i2 < n2; ++i2) {
      int j2[2];
      double w2[2];
      int c2 = targets(grid_.k2(i2), n2, m2, j2, w2);
      Complex v = coeffs_[grid_.index(i1, i2)];
      for (int a = 0; a < c1; ++a)
        for (int b = 0; b < c2; ++b)
          big[static_cast<std::size_t>(j1[a]) * m2 + j2[b]] += w1[a] * w2[b] * v;
    }
  }
  std::vector<Complex> phys = fft::inverse(m1, m2, big);
  std::vector<double> out(phys.size());
  for (std::size_t i = 0; i < phys.size(); ++i) out[i] = phys[i].real();
  return out;
}

double ScalarField::hermitian_defect() const {
  const int n1 = grid_.n1(), n2 = grid_.n2();
  double worst = 0.0;
  for (int i1 = 0; i1 < n1; ++i1) {
    int m1 = (n1 - i1) % n1;
    for (int i2 = 0; i2 < n2; ++i2) {
      int m2 = (n2 - i2) % n2;
      Complex d = coeffs_[grid_.index(i1, i2)] - std::conj(coeffs_[grid_.index(m1, m2)]);
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

void ScalarField::require_hermitian(double tol) const {
  double scale = std::max(max_abs_coeff(), 1e-300);
  if (hermitian_defect() > tol * scale)
    throw std::invalid_argument("field is not Hermitian-symmetric (not real-valued)");
}

void ScalarField::hermitian_symmetrize() {
  const int n1 = grid_.n1(), n2 = grid_.n2();
  for (int i1 = 0; i1 < n1; ++i1) {
    int m1 = (n1 - i1) % n1;
    for (int i2 = 0; i2 < n2; ++i2) {
      int m2 = (n2 - i2) % n2;
      if (m1 * n2 + m2 < i1 * n2 + i2) continue;  // visit each pair once
      Complex a = coeffs_[grid_.index(i1, i2)];
      Complex b = coeffs_[grid_.index(m1, m2)];
      Complex s = 0.5 * (a + std::conj(b));
      coeffs_[grid_.index(i1, i2)] = s;
      coeffs_[grid_.index(m1, m2)] = std::conj(s);
    }
  }
}

double ScalarField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  if (!(grid_ == o.grid_)) throw std::invalid_argument("field grids differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  if (!(grid_ == o.grid_)) throw std::invalid_argument("field grids differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double c) {
  for (auto& v : coeffs_) v *= c;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double c, ScalarField a) { return a *= c; }

VelocityField::VelocityField(ScalarField u1, ScalarField u2)
    : u1_(std::move(u1)), u2_(std::move(u2)) {
  if (!(u1_.grid() == u2_.grid()))
    throw std::invalid_argument("VelocityField: component grids differ");
}

VelocityField VelocityField::taylor_green(const GridSpec& grid) {
  return sample(
      grid, [](double x, double y) { return -std::cos(x) * std::sin(y); },
      [](double x, double y) { return std::sin(x) * std::cos(y); });
}

VelocityField VelocityField::sample(const GridSpec& grid,
                                    const std::function<double(double, double)>& f1,
                                    const std::function<double(double, double)>& f2) {
  return VelocityField(ScalarField::sample(grid, f1), ScalarField::sample(grid, f2));
}

double VelocityField::hermitian_defect() const {
  return std::max(u1_.hermitian_defect(), u2_.hermitian_defect());
}

void VelocityField::hermitian_symmetrize() {
  u1_.hermitian_symmetrize();
  u2_.hermitian_symmetrize();
}

double VelocityField::divergence_defect() const {
  const GridSpec& g = grid();
  double worst = 0.0;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      std::size_t idx = g.index(i1, i2);
      Complex d = g.kx(i1) * u1_.coeffs()[idx] + g.ky(i2) * u2_.coeffs()[idx];
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

double VelocityField::mean_defect() const {
  return std::max(std::abs(u1_.mean()), std::abs(u2_.mean()));
}

double VelocityField::max_abs_coeff() const {
  return std::max(u1_.max_abs_coeff(), u2_.max_abs_coeff());
}

VelocityField& VelocityField::operator+=(const VelocityField& o) {
  u1_ += o.u1_;
  u2_ += o.u2_;
  return *this;
}

VelocityField& VelocityField::operator-=(const VelocityField& o) {
  u1_ -= o.u1_;
  u2_ -= o.u2_;
  return *this;
}

VelocityField& VelocityField::operator*=(double c) {
  u1_ *= c;
  u2_ *= c;
  return *this;
}

VelocityField operator+(VelocityField a, const VelocityField& b) { return a += b; }
VelocityField operator-(VelocityField a, const VelocityField& b) { return a -= b; }
VelocityField operator*(double c, VelocityField a) { return a *= c; }

}  // namespace nseobs
