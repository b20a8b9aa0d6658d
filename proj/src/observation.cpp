#include "nseobs/observation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nseobs/fft.hpp"
#include "nseobs/io.hpp"
#include "nseobs/spectral_ops.hpp"

namespace nseobs {

Partition::Partition(const GridSpec& g, int nx_, int ny_) : grid(g), nx(nx_), ny(ny_) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("Partition: counts must be >= 1");
}

std::string ObservationVector::to_csv(bool cells) const {
  std::ostringstream os;
  os << (cells ? "cell_ix,cell_iy,c1,c2" : "node_ix,node_iy,u1,u2") << '\n';
  for (int ix = 0; ix < nx; ++ix)
    for (int iy = 0; iy < ny; ++iy) {
      std::size_t i = static_cast<std::size_t>(ix) * ny + iy;
      os << ix << ',' << iy << ',' << format_double(c1[i]) << ',' << format_double(c2[i]) << '\n';
    }
  return os.str();
}

namespace detail {
namespace {

enum class OpKind { average, point };

// apply_factor a_k maps field coefficients to the folded nc-lattice DFT of the
// observations; lift_factor b_k spreads the observation DFT back to the band.
// t_norm(q) = sum_{k == q mod nc} a_k b_k, so apply(lift(.)) is the identity.
// The Nyquist modes are excluded from the lift to keep it Hermitian.
FoldDir make_fold(const GridSpec& g, bool along_x, int nc, OpKind kind) {
  int n = along_x ? g.n1() : g.n2();
  FoldDir d;
  d.apply_factor.resize(n);
  d.lift_factor.resize(n);
  d.fold_index.resize(n);
  d.t_norm.assign(nc, 0.0);
  for (int i = 0; i < n; ++i) {
    int k = along_x ? g.k1(i) : g.k2(i);
    int q = ((k % nc) + nc) % nc;
    d.fold_index[i] = q;
    double t = M_PI * k / nc;
    Complex a, b;
    if (kind == OpKind::average) {
      // (1/w) int_0^w exp(2 pi i k x / ell) dx
      a = k == 0 ? Complex{1.0, 0.0}
                 : std::exp(Complex{0.0, t}) * (std::sin(t) / t);
      b = std::conj(a);
    } else {
      a = Complex{1.0, 0.0};  // exact node evaluation
      double s = k == 0 ? 1.0 : std::sin(t) / t;
      b = Complex{s * s, 0.0};  // periodic hat (Fejer) factor
    }
    bool nyquist = (i == n / 2);
    d.apply_factor[i] = a;
    d.lift_factor[i] = nyquist ? Complex{} : b;
    if (!nyquist) d.t_norm[q] += (a * b).real();
  }
  for (double t : d.t_norm)
    if (!(t > 1e-9))
      throw std::invalid_argument(
          "observation lattice too fine for the grid band (unrepresentable fold mode)");
  return d;
}

// Folded DFT of one component: F[q1,q2] = sum_{k == q} a_k uhat_k, then
// observations = unnormalized inverse DFT of F on the nc1 x nc2 lattice.
std::vector<double> apply_component(const GridSpec& g, const FoldDir& dx, const FoldDir& dy,
                                    int nx, int ny, const ScalarField& f) {
  std::vector<Complex> F(static_cast<std::size_t>(nx) * ny, Complex{});
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    Complex a1 = dx.apply_factor[i1];
    int q1 = dx.fold_index[i1];
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      F[static_cast<std::size_t>(q1) * ny + dy.fold_index[i2]] +=
          a1 * dy.apply_factor[i2] * f.coeffs()[g.index(i1, i2)];
    }
  }
  std::vector<Complex> vals = fft::inverse(nx, ny, F);
  std::vector<double> out(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) out[i] = vals[i].real();
  return out;
}

ScalarField lift_component(const GridSpec& g, const FoldDir& dx, const FoldDir& dy, int nx, int ny,
                           const std::vector<double>& values) {
  std::vector<Complex> tmp(values.begin(), values.end());
  std::vector<Complex> V(tmp.size());
  fft::forward(nx, ny, tmp.data(), V.data());
  ScalarField out(g);
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    Complex b1 = dx.lift_factor[i1];
    int q1 = dx.fold_index[i1];
    double t1 = dx.t_norm[q1];
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      Complex b2 = dy.lift_factor[i2];
      if (b1 == Complex{} || b2 == Complex{}) continue;
      int q2 = dy.fold_index[i2];
      out.coeffs()[g.index(i1, i2)] =
          b1 * b2 * V[static_cast<std::size_t>(q1) * ny + q2] / (t1 * dy.t_norm[q2]);
    }
  }
  return out;
}

}  // namespace
}  // namespace detail

AverageOperator::AverageOperator(const Partition& partition)
    : partition_(partition),
      c_omega_(1.0 / (4.0 * M_PI * M_PI)),
      dx_(detail::make_fold(partition.grid, true, partition.nx, detail::OpKind::average)),
      dy_(detail::make_fold(partition.grid, false, partition.ny, detail::OpKind::average)) {}

ObservationVector AverageOperator::apply(const VelocityField& v) const {
  if (!(v.grid() == partition_.grid))
    throw std::invalid_argument("AverageOperator::apply: grid mismatch");
  ObservationVector obs;
  obs.nx = partition_.nx;
  obs.ny = partition_.ny;
  obs.c1 = detail::apply_component(v.grid(), dx_, dy_, obs.nx, obs.ny, v.u1());
  obs.c2 = detail::apply_component(v.grid(), dx_, dy_, obs.nx, obs.ny, v.u2());
  obs.provenance = "average";
  return obs;
}

VelocityField AverageOperator::lift(const ObservationVector& obs) const {
  if (obs.nx != partition_.nx || obs.ny != partition_.ny)
    throw std::invalid_argument("AverageOperator::lift: observation shape mismatch");
  const GridSpec& g = partition_.grid;
  return VelocityField(detail::lift_component(g, dx_, dy_, obs.nx, obs.ny, obs.c1),
                       detail::lift_component(g, dx_, dy_, obs.nx, obs.ny, obs.c2));
}

PointOperator::PointOperator(const GridSpec& grid, int nx, int ny)
    : grid_(grid),
      nx_(nx),
      ny_(ny),
      c_omega_hat_(0.0),
      dx_(detail::make_fold(grid, true, nx, detail::OpKind::point)),
      dy_(detail::make_fold(grid, false, ny, detail::OpKind::point)) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("PointOperator: counts must be >= 1");
}

ObservationVector PointOperator::apply(const VelocityField& v) const {
  if (!(v.grid() == grid_)) throw std::invalid_argument("PointOperator::apply: grid mismatch");
  ObservationVector obs;
  obs.nx = nx_;
  obs.ny = ny_;
  obs.c1 = detail::apply_component(grid_, dx_, dy_, nx_, ny_, v.u1());
  obs.c2 = detail::apply_component(grid_, dx_, dy_, nx_, ny_, v.u2());
  obs.provenance = "point";
  return obs;
}

VelocityField PointOperator::lift(const ObservationVector& obs) const {
  if (obs.nx != nx_ || obs.ny != ny_)
    throw std::invalid_argument("PointOperator::lift: observation shape mismatch");
  return VelocityField(detail::lift_component(grid_, dx_, dy_, nx_, ny_, obs.c1),
                       detail::lift_component(grid_, dx_, dy_, nx_, ny_, obs.c2));
}

ObservationVector IdentityObservation::apply(const VelocityField& v) const {
  if (!(v.grid() == grid_))
    throw std::invalid_argument("IdentityObservation::apply: grid mismatch");
  ObservationVector obs;
  obs.nx = grid_.n1();
  obs.ny = grid_.n2();
  obs.c1 = v.u1().to_physical(1);
  obs.c2 = v.u2().to_physical(1);
  obs.provenance = "identity";
  return obs;
}

VelocityField IdentityObservation::lift(const ObservationVector& obs) const {
  return VelocityField(ScalarField::from_physical(grid_, obs.c1),
                       ScalarField::from_physical(grid_, obs.c2));
}

namespace {

template <class Op>
CertificateReport certify_impl(const Op& op, const std::vector<VelocityField>& fields,
                               bool gradient_denominator) {
  if (fields.empty()) throw std::invalid_argument("certify_class: empty sample set");
  CertificateReport rep;
  rep.operator_kind = op.kind();
  rep.sample_count = fields.size();
  double h2 = op.h() * op.h();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const VelocityField& u = fields[i];
    VelocityField residual = u - op.project(u);
    double num = inner_l2(residual, residual);
    double den = gradient_denominator ? inner_grad(u, u) : norm_lap(u) * norm_lap(u);
    if (den <= 0.0) continue;
    double raw = num / (h2 * den);
    if (raw > rep.max_raw_ratio) {
      rep.max_raw_ratio = raw;
      rep.worst_index = i;
    }
  }
  rep.calibrated_c_omega = rep.max_raw_ratio * 1.5;
  rep.max_ratio = op.c_omega() > 0.0 ? rep.max_raw_ratio / op.c_omega() : rep.max_raw_ratio;
  return rep;
}

}  // namespace

CertificateReport certify_class(const AverageOperator& op,
                                const std::vector<VelocityField>& fields) {
  return certify_impl(op, fields, true);
}

CertificateReport certify_class(const PointOperator& op, const std::vector<VelocityField>& fields) {
  return certify_impl(op, fields, false);
}

CertificateReport calibrate_point_operator(PointOperator& op,
                                           const std::vector<VelocityField>& fields) {
  CertificateReport rep = certify_impl(op, fields, false);
  op.set_c_omega_hat(rep.calibrated_c_omega);
  rep.max_ratio = rep.max_raw_ratio / rep.calibrated_c_omega;
  return rep;
}

}  // namespace nseobs
