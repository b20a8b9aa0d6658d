#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "nseobs/grid.hpp"

namespace nseobs {

using Complex = std::complex<double>;

/// L2 / H1 / Laplacian norms computed spectrally plus an oversampled
/// pointwise maximum. linf is a lower bound of the true sup norm.
struct NormReport {
  double l2 = 0.0;
  double grad_l2 = 0.0;
  double h1 = 0.0;
  double lap_l2 = 0.0;
  double linf = 0.0;
  int linf_oversampling = 1;
};

/// Real periodic scalar field stored as the full centered array of Fourier
/// coefficients (Hermitian symmetry kept explicit rather than folded away).
class ScalarField {
 public:
  explicit ScalarField(const GridSpec& grid) : grid_(grid), coeffs_(grid.size(), Complex{}) {}
  ScalarField(const GridSpec& grid, std::vector<Complex> coeffs);

  static ScalarField from_physical(const GridSpec& grid, const std::vector<double>& samples);
  /// Builds coefficients by sampling f(x, y) on the collocation grid.
  static ScalarField sample(const GridSpec& grid, const std::function<double(double, double)>& f);

  const GridSpec& grid() const { return grid_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  std::vector<Complex>& coeffs() { return coeffs_; }
  Complex& at(int i1, int i2) { return coeffs_[grid_.index(i1, i2)]; }
  const Complex& at(int i1, int i2) const { return coeffs_[grid_.index(i1, i2)]; }

  /// Physical samples on the (oversample*n1) x (oversample*n2) grid, row-major.
  /// Requires Hermitian symmetry; throws otherwise.
  std::vector<double> to_physical(int oversample = 1) const;

  /// max |uhat_k - conj(uhat_{-k})| over the lattice.
  double hermitian_defect() const;
  void require_hermitian(double tol = 1e-12) const;
  /// Averages conjugate pairs; exact on already-symmetric fields. Difference
  /// fields near the roundoff floor need this before physical evaluation.
  void hermitian_symmetrize();

  double max_abs_coeff() const;
  Complex mean() const { return coeffs_[0]; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double c);

 private:
  GridSpec grid_;
  std::vector<Complex> coeffs_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField a);

/// Two-component real periodic vector field on a shared grid.
class VelocityField {
 public:
  explicit VelocityField(const GridSpec& grid) : u1_(grid), u2_(grid) {}
  VelocityField(ScalarField u1, ScalarField u2);

  static VelocityField zero(const GridSpec& grid) { return VelocityField(grid); }
  /// (-cos x sin y, sin x cos y); an exact NSE eigen-solution on the 2pi torus.
  static VelocityField taylor_green(const GridSpec& grid);
  static VelocityField sample(const GridSpec& grid,
                              const std::function<double(double, double)>& f1,
                              const std::function<double(double, double)>& f2);

  const GridSpec& grid() const { return u1_.grid(); }
  const ScalarField& u1() const { return u1_; }
  const ScalarField& u2() const { return u2_; }
  ScalarField& u1() { return u1_; }
  ScalarField& u2() { return u2_; }

  double hermitian_defect() const;
  void hermitian_symmetrize();
  /// max_k |k . uhat_k| (physical wavenumbers), the spectral divergence size.
  double divergence_defect() const;
  double mean_defect() const;
  double max_abs_coeff() const;

  VelocityField& operator+=(const VelocityField& o);
  VelocityField& operator-=(const VelocityField& o);
  VelocityField& operator*=(double c);

 private:
  ScalarField u1_, u2_;
};

VelocityField operator+(VelocityField a, const VelocityField& b);
VelocityField operator-(VelocityField a, const VelocityField& b);
VelocityField operator*(double c, VelocityField a);

}  // namespace nseobs
