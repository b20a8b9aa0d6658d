#pragma once

#include "nseobs/field.hpp"

namespace nseobs {

/// Helmholtz-Leray projection onto divergence-free zero-mean fields,
/// modewise uhat <- uhat - k (k.uhat)/|k|^2 with the mean mode zeroed.
VelocityField leray_project(const VelocityField& v);

/// Stokes operator A = -Delta on periodic div-free fields: uhat <- |k|^2 uhat.
/// Rejects inputs that are not divergence-free / zero-mean within tol.
VelocityField stokes_apply(const VelocityField& v, double tol = 1e-10);

/// Laplacian with sign: returns -Delta u applied modewise (no div-free check).
ScalarField minus_laplacian(const ScalarField& f);

ScalarField deriv_x(const ScalarField& f);
ScalarField deriv_y(const ScalarField& f);

/// Zeroes every coefficient outside the grid's dealias band.
void dealias_inplace(ScalarField& f);
void dealias_inplace(VelocityField& v);
VelocityField dealiased(VelocityField v);

NormReport norms(const VelocityField& v, int oversample = 4);
NormReport norms(const ScalarField& f, int oversample = 4);

/// L2 inner products via Parseval (exact for the stored coefficients).
double inner_l2(const VelocityField& a, const VelocityField& b);
double inner_grad(const VelocityField& a, const VelocityField& b);
double norm_l2(const VelocityField& a);
double norm_grad(const VelocityField& a);
double norm_lap(const VelocityField& a);
double norm_h1(const VelocityField& a);
double norm_l2(const ScalarField& a);

/// Trilinear advection form b(u,w,phi) = (u . grad w1, phi1) + (u . grad w2, phi2),
/// integrated on a 2x-oversampled grid (exact quadrature for band-limited input).
double bilinear_b(const VelocityField& u, const VelocityField& w, const VelocityField& phi);

/// P_l[(v . grad) v] with 2/3-rule dealiasing; output div-free, zero-mean.
VelocityField nonlinear_term(const VelocityField& v);

/// Solves Delta psi = -omega for zero-mean omega; rejects nonzero-mean input.
ScalarField poisson_solve(const ScalarField& omega, double tol = 1e-10);

/// Scalar vorticity del x v = d(u2)/dx - d(u1)/dy.
ScalarField vorticity(const VelocityField& v);

/// Velocity with streamfunction psi: u = (dpsi/dy, -dpsi/dx).
VelocityField velocity_from_streamfunction(const ScalarField& psi);

}  // namespace nseobs
