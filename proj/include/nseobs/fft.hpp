#pragma once

#include <complex>
#include <vector>

namespace nseobs::fft {

/// Forward 2D transform: physical samples -> Fourier coefficients of
/// u(x) = sum_k uhat_k exp(2*pi*i*(k1*x/ell1 + k2*y/ell2)), row-major n1 x n2,
/// wavenumbers in FFT order (0..n/2-1, -n/2..-1). Includes the 1/(n1*n2) factor.
void forward(int n1, int n2, const std::complex<double>* in, std::complex<double>* out);

/// Inverse of forward (unnormalized FFTW backward).
void inverse(int n1, int n2, const std::complex<double>* in, std::complex<double>* out);

std::vector<std::complex<double>> forward(int n1, int n2,
                                          const std::vector<std::complex<double>>& in);
std::vector<std::complex<double>> inverse(int n1, int n2,
                                          const std::vector<std::complex<double>>& in);

}  // namespace nseobs::fft
