#include "nseobs/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "nseobs/fft.hpp"

namespace nseobs {

VelocityField leray_project(const VelocityField& v) {
  const GridSpec& g = v.grid();
  VelocityField out = v;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    double kx = g.kx(i1);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      double ky = g.ky(i2);
      double k2 = kx * kx + ky * ky;
      std::size_t idx = g.index(i1, i2);
      if (k2 == 0.0) {
        out.u1().coeffs()[idx] = 0.0;
        out.u2().coeffs()[idx] = 0.0;
        continue;
      }
      Complex dot = (kx * out.u1().coeffs()[idx] + ky * out.u2().coeffs()[idx]) / k2;
      out.u1().coeffs()[idx] -= kx * dot;
      out.u2().coeffs()[idx] -= ky * dot;
    }
  }
  return out;
}

VelocityField stokes_apply(const VelocityField& v, double tol) {
  double scale = std::max(v.max_abs_coeff(), 1e-300);
  if (v.divergence_defect() > tol * scale * std::max(v.grid().kmax1(), v.grid().kmax2()))
    throw std::invalid_argument("stokes_apply: input is not divergence-free");
  if (v.mean_defect() > tol * scale)
    throw std::invalid_argument("stokes_apply: input does not have zero mean");
  const GridSpec& g = v.grid();
  VelocityField out = v;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    double kx = g.kx(i1);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      double k2 = kx * kx + g.ky(i2) * g.ky(i2);
      std::size_t idx = g.index(i1, i2);
      out.u1().coeffs()[idx] *= k2;
      out.u2().coeffs()[idx] *= k2;
    }
  }
  return out;
}

ScalarField minus_laplacian(const ScalarField& f) {
  const GridSpec& g = f.grid();
  ScalarField out = f;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    double kx = g.kx(i1);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      out.coeffs()[g.index(i1, i2)] *= kx * kx + g.ky(i2) * g.ky(i2);
    }
  }
  return out;
}

namespace {

// Odd derivatives zero the Nyquist modes; their ik factor has no
// Hermitian-compatible sign for even n.
ScalarField deriv(const ScalarField& f, bool along_x) {
  const GridSpec& g = f.grid();
  ScalarField out = f;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      std::size_t idx = g.index(i1, i2);
      bool nyq = (along_x && i1 == g.n1() / 2) || (!along_x && i2 == g.n2() / 2);
      double k = along_x ? g.kx(i1) : g.ky(i2);
      out.coeffs()[idx] *= nyq ? Complex{0.0, 0.0} : Complex{0.0, k};
    }
  }
  return out;
}

}  // namespace

ScalarField deriv_x(const ScalarField& f) { return deriv(f, true); }
ScalarField deriv_y(const ScalarField& f) { return deriv(f, false); }

void dealias_inplace(ScalarField& f) {
  const GridSpec& g = f.grid();
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      if (!g.in_dealias_band(i1, i2)) f.coeffs()[g.index(i1, i2)] = 0.0;
}

void dealias_inplace(VelocityField& v) {
  dealias_inplace(v.u1());
  dealias_inplace(v.u2());
}

VelocityField dealiased(VelocityField v) {
  dealias_inplace(v);
  return v;
}

namespace {

struct SumWeights {
  double w0 = 0.0, w1 = 0.0, w2 = 0.0;  // sums of |c|^2, k^2 |c|^2, k^4 |c|^2
};

SumWeights weighted_sums(const ScalarField& f) {
  const GridSpec& g = f.grid();
  SumWeights s;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    double kx = g.kx(i1);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      double k2 = kx * kx + g.ky(i2) * g.ky(i2);
      double a2 = std::norm(f.coeffs()[g.index(i1, i2)]);
      s.w0 += a2;
      s.w1 += k2 * a2;
      s.w2 += k2 * k2 * a2;
    }
  }
  return s;
}

double area(const GridSpec& g) { return g.ell1() * g.ell2(); }

}  // namespace

NormReport norms(const VelocityField& v, int oversample) {
  v.u1().require_hermitian();
  v.u2().require_hermitian();
  SumWeights a = weighted_sums(v.u1());
  SumWeights b = weighted_sums(v.u2());
  NormReport r;
  double s = area(v.grid());
  r.l2 = std::sqrt(s * (a.w0 + b.w0));
  r.grad_l2 = std::sqrt(s * (a.w1 + b.w1));
  r.lap_l2 = std::sqrt(s * (a.w2 + b.w2));
  r.h1 = std::sqrt(r.l2 * r.l2 + r.grad_l2 * r.grad_l2);
  r.linf_oversampling = oversample;
  std::vector<double> p1 = v.u1().to_physical(oversample);
  std::vector<double> p2 = v.u2().to_physical(oversample);
  double m = 0.0;
  for (std::size_t i = 0; i < p1.size(); ++i)
    m = std::max(m, p1[i] * p1[i] + p2[i] * p2[i]);
  r.linf = std::sqrt(m);
  return r;
}

NormReport norms(const ScalarField& f, int oversample) {
  f.require_hermitian();
  SumWeights a = weighted_sums(f);
  NormReport r;
  double s = area(f.grid());
  r.l2 = std::sqrt(s * a.w0);
  r.grad_l2 = std::sqrt(s * a.w1);
  r.lap_l2 = std::sqrt(s * a.w2);
  r.h1 = std::sqrt(r.l2 * r.l2 + r.grad_l2 * r.grad_l2);
  r.linf_oversampling = oversample;
  double m = 0.0;
  for (double x : f.to_physical(oversample)) m = std::max(m, std::abs(x));
  r.linf = m;
  return r;
}

double inner_l2(const VelocityField& a, const VelocityField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("inner_l2: grids differ");
  const GridSpec& g = a.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    s += (std::conj(a.u1().coeffs()[i]) * b.u1().coeffs()[i]).real();
    s += (std::conj(a.u2().coeffs()[i]) * b.u2().coeffs()[i]).real();
  }
  return area(g) * s;
}

double inner_grad(const VelocityField& a, const VelocityField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("inner_grad: grids differ");
  const GridSpec& g = a.grid();
  double s = 0.0;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    double kx = g.kx(i1);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      double k2 = kx * kx + g.ky(i2) * g.ky(i2);
      std::size_t idx = g.index(i1, i2);
      s += k2 * (std::conj(a.u1().coeffs()[idx]) * b.u1().coeffs()[idx]).real();
      s += k2 * (std::conj(a.u2().coeffs()[idx]) * b.u2().coeffs()[idx]).real();
    }
  }
  return area(g) * s;
}

double norm_l2(const VelocityField& a) { return std::sqrt(std::max(0.0, inner_l2(a, a))); }
double norm_grad(const VelocityField& a) { return std::sqrt(std::max(0.0, inner_grad(a, a))); }

double norm_lap(const VelocityField& a) {
  SumWeights s1 = weighted_sums(a.u1());
  SumWeights s2 = weighted_sums(a.u2());
  return std::sqrt(area(a.grid()) * (s1.w2 + s2.w2));
}

double norm_h1(const VelocityField& a) {
  double l2 = norm_l2(a), gr = norm_grad(a);
  return std::sqrt(l2 * l2 + gr * gr);
}

double norm_l2(const ScalarField& a) {
  return std::sqrt(area(a.grid()) * weighted_sums(a).w0);
}

double bilinear_b(const VelocityField& u, const VelocityField& w, const VelocityField& phi) {
  if (!(u.grid() == w.grid()) || !(u.grid() == phi.grid()))
    throw std::invalid_argument("bilinear_b: grids differ");
  const int os = 2;
  std::vector<double> u1 = u.u1().to_physical(os), u2 = u.u2().to_physical(os);
  std::vector<double> w1x = deriv_x(w.u1()).to_physical(os), w1y = deriv_y(w.u1()).to_physical(os);
  std::vector<double> w2x = deriv_x(w.u2()).to_physical(os), w2y = deriv_y(w.u2()).to_physical(os);
  std::vector<double> p1 = phi.u1().to_physical(os), p2 = phi.u2().to_physical(os);
  double s = 0.0;
  for (std::size_t i = 0; i < u1.size(); ++i)
    s += (u1[i] * w1x[i] + u2[i] * w1y[i]) * p1[i] + (u1[i] * w2x[i] + u2[i] * w2y[i]) * p2[i];
  return s * area(u.grid()) / static_cast<double>(u1.size());
}

VelocityField nonlinear_term(const VelocityField& v) {
  // divergence form (u.grad)u = div(u x u), exact for the divergence-free
  // states this is called on; 5 transforms instead of 8
  const GridSpec& g = v.grid();
  const int n1 = g.n1(), n2 = g.n2();
  const std::size_t total = g.size();

  struct Workspace {
    std::vector<Complex> a, b, p11, p12, p22;
  };
  thread_local Workspace ws;
  ws.a.resize(total);
  ws.b.resize(total);
  ws.p11.resize(total);
  ws.p12.resize(total);
  ws.p22.resize(total);

  // physical samples of both components (dealiased input)
  for (std::size_t i = 0; i < total; ++i) ws.p11[i] = v.u1().coeffs()[i];
  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      if (!g.in_dealias_band(i1, i2)) ws.p11[g.index(i1, i2)] = 0.0;
  fft::inverse(n1, n2, ws.p11.data(), ws.a.data());
  for (std::size_t i = 0; i < total; ++i) ws.p11[i] = v.u2().coeffs()[i];
  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      if (!g.in_dealias_band(i1, i2)) ws.p11[g.index(i1, i2)] = 0.0;
  fft::inverse(n1, n2, ws.p11.data(), ws.b.data());

  for (std::size_t i = 0; i < total; ++i) {
    double x = ws.a[i].real(), y = ws.b[i].real();
    ws.p11[i] = x * x;
    ws.p12[i] = x * y;
    ws.p22[i] = y * y;
  }
  fft::forward(n1, n2, ws.p11.data(), ws.a.data());
  std::swap(ws.a, ws.p11);
  fft::forward(n1, n2, ws.p12.data(), ws.a.data());
  std::swap(ws.a, ws.p12);
  fft::forward(n1, n2, ws.p22.data(), ws.a.data());
  std::swap(ws.a, ws.p22);

  VelocityField adv(g);
  for (int i1 = 0; i1 < n1; ++i1) {
    double kx = g.kx(i1);
    for (int i2 = 0; i2 < n2; ++i2) {
      std::size_t idx = g.index(i1, i2);
      if (!g.in_dealias_band(i1, i2)) continue;
      Complex ikx{0.0, kx}, iky{0.0, g.ky(i2)};
      adv.u1().coeffs()[idx] = ikx * ws.p11[idx] + iky * ws.p12[idx];
      adv.u2().coeffs()[idx] = ikx * ws.p12[idx] + iky * ws.p22[idx];
    }
  }
  return leray_project(adv);
}

ScalarField poisson_solve(const ScalarField& omega, double tol) {
  double scale = std::max(omega.max_abs_coeff(), 1e-300);
  if (std::abs(omega.mean()) > tol * scale)
    throw std::invalid_argument("poisson_solve: input must have zero mean");
  const GridSpec& g = omega.grid();
  ScalarField psi = omega;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    double kx = g.kx(i1);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      double k2 = kx * kx + g.ky(i2) * g.ky(i2);
      std::size_t idx = g.index(i1, i2);
      psi.coeffs()[idx] = k2 == 0.0 ? Complex{} : psi.coeffs()[idx] / k2;
    }
  }
  return psi;
}

ScalarField vorticity(const VelocityField& v) {
  return deriv_x(v.u2()) - deriv_y(v.u1());
}

VelocityField velocity_from_streamfunction(const ScalarField& psi) {
  ScalarField u1 = deriv_y(psi);
  ScalarField u2 = deriv_x(psi);
  u2 *= -1.0;
  return VelocityField(std::move(u1), std::move(u2));
}

}  // namespace nseobs
