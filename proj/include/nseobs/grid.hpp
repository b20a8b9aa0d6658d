#pragma once

#include <stdexcept>

namespace nseobs {

/// Periodic rectangular domain [0,ell1) x [0,ell2) with an n1 x n2 spectral
/// resolution. Owns the wavenumber lattice k = 2*pi*(k1/ell1, k2/ell2) over
/// the centered integer index box, and the dealiasing band.
class GridSpec {
 public:
  GridSpec(double ell1, double ell2, int n1, int n2, double dealias_fraction = 2.0 / 3.0)
      : ell1_(ell1), ell2_(ell2), n1_(n1), n2_(n2), dealias_fraction_(dealias_fraction) {
    if (!(ell1 > 0.0) || !(ell2 > 0.0))
      throw std::invalid_argument("GridSpec: period lengths must be positive");
    if (n1 < 4 || n2 < 4 || n1 % 2 != 0 || n2 % 2 != 0)
      throw std::invalid_argument("GridSpec: resolutions must be even and >= 4");
    if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
      throw std::invalid_argument("GridSpec: dealias_fraction must be in (0,1]");
  }

  double ell1() const { return ell1_; }
  double ell2() const { return ell2_; }
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  double dealias_fraction() const { return dealias_fraction_; }

  /// Smallest Stokes eigenvalue, 4*pi^2 / max(ell1, ell2)^2.
  double lambda1() const;

  /// Integer wavenumber of FFT-order row/column index (0..n/2-1, -n/2..-1).
  int k1(int i1) const { return i1 <= n1_ / 2 ? i1 : i1 - n1_; }
  int k2(int i2) const { return i2 <= n2_ / 2 ? i2 : i2 - n2_; }

  /// Physical wavenumbers 2*pi*k/ell.
  double kx(int i1) const;
  double ky(int i2) const;

  /// Largest retained integer wavenumber per direction under dealiasing.
  int kmax1() const { return static_cast<int>(n1_ * dealias_fraction_ / 2.0); }
  int kmax2() const { return static_cast<int>(n2_ * dealias_fraction_ / 2.0); }

  bool in_dealias_band(int i1, int i2) const {
    int a = k1(i1), b = k2(i2);
    return (a < 0 ? -a : a) <= kmax1() && (b < 0 ? -b : b) <= kmax2();
  }

  std::size_t size() const { return static_cast<std::size_t>(n1_) * n2_; }
  std::size_t index(int i1, int i2) const { return static_cast<std::size_t>(i1) * n2_ + i2; }

  bool operator==(const GridSpec&) const = default;

 private:
  double ell1_, ell2_;
  int n1_, n2_;
  double dealias_fraction_;
};

}  // namespace nseobs
