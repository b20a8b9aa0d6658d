#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nseobs/field.hpp"

namespace nseobs {

/// Uniform nx x ny rectangle partition of the domain; h is the largest cell side.
struct Partition {
  GridSpec grid;
  int nx = 1, ny = 1;

  Partition(const GridSpec& g, int nx_, int ny_);
  double h() const { return std::max(grid.ell1() / nx, grid.ell2() / ny); }
};

/// Finite observation output: one pair of values per cell (averages) or per
/// node (point samples), row-major ix-major layout.
struct ObservationVector {
  int nx = 0, ny = 0;
  std::vector<double> c1, c2;
  std::string provenance;

  std::size_t size() const { return c1.size() + c2.size(); }
  /// CSV with header cell_ix,cell_iy,c1,c2 (averages) or node_ix,node_iy,u1,u2.
  std::string to_csv(bool cells) const;
};

/// Common surface of the observation operators used for observer injection.
class LinearObservation {
 public:
  virtual ~LinearObservation() = default;
  virtual ObservationVector apply(const VelocityField& v) const = 0;
  virtual VelocityField lift(const ObservationVector& obs) const = 0;
  virtual double h() const = 0;
  virtual double c_omega() const = 0;
  virtual const GridSpec& grid() const = 0;
  virtual std::string kind() const = 0;

  VelocityField project(const VelocityField& v) const { return lift(apply(v)); }
};

namespace detail {

/// Per-direction fold tables: exact cell-integral / node-evaluation factors
/// and the folded normalization that makes apply(lift(obs)) == obs.
struct FoldDir {
  std::vector<Complex> apply_factor;
  std::vector<Complex> lift_factor;
  std::vector<int> fold_index;
  std::vector<double> t_norm;
};

}  // namespace detail

/// Partition-average operator (class C1): exact spectral cell means, lifted to
/// the band-limited orthogonal projection onto piecewise-constant fields.
class AverageOperator : public LinearObservation {
 public:
  explicit AverageOperator(const Partition& partition);

  ObservationVector apply(const VelocityField& v) const override;
  VelocityField lift(const ObservationVector& obs) const override;
  double h() const override { return partition_.h(); }
  double c_omega() const override { return c_omega_; }
  const GridSpec& grid() const override { return partition_.grid; }
  std::string kind() const override { return "average"; }
  const Partition& partition() const { return partition_; }

 private:
  Partition partition_;
  double c_omega_;
  detail::FoldDir dx_, dy_;
};

/// Point-sampling operator (class C2): exact spectral evaluation on a uniform
/// node lattice, lifted to the band-limited periodic bilinear interpolant.
class PointOperator : public LinearObservation {
 public:
  PointOperator(const GridSpec& grid, int nx, int ny);

  ObservationVector apply(const VelocityField& v) const override;
  VelocityField lift(const ObservationVector& obs) const override;
  double h() const override { return std::max(grid_.ell1() / nx_, grid_.ell2() / ny_); }
  double c_omega() const override { return c_omega_hat_; }
  const GridSpec& grid() const override { return grid_; }
  std::string kind() const override { return "point"; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  /// Sets the empirical class-C2 constant (max observed ratio x safety margin).
  void set_c_omega_hat(double v) { c_omega_hat_ = v; }

 private:
  GridSpec grid_;
  int nx_, ny_;
  double c_omega_hat_;
  detail::FoldDir dx_, dy_;
};

/// Full-information operator (Cu = u on the collocation lattice); test use.
class IdentityObservation : public LinearObservation {
 public:
  explicit IdentityObservation(const GridSpec& grid) : grid_(grid) {}
  ObservationVector apply(const VelocityField& v) const override;
  VelocityField lift(const ObservationVector& obs) const override;
  double h() const override { return 0.0; }
  double c_omega() const override { return 0.0; }
  const GridSpec& grid() const override { return grid_; }
  std::string kind() const override { return "identity"; }

 private:
  GridSpec grid_;
};

struct CertificateReport {
  std::string operator_kind;
  std::size_t sample_count = 0;
  double max_ratio = 0.0;       ///< vs h^2 c_omega ||grad u||^2 (C1) or ||lap u||^2 (C2)
  double max_raw_ratio = 0.0;   ///< same without the c_omega factor
  std::size_t worst_index = 0;
  double calibrated_c_omega = 0.0;  ///< point operators: max_raw_ratio * 1.5
};

CertificateReport certify_class(const AverageOperator& op,
                                const std::vector<VelocityField>& fields);
CertificateReport certify_class(const PointOperator& op, const std::vector<VelocityField>& fields);

/// Calibrates and installs c_omega_hat on the operator; returns the report.
CertificateReport calibrate_point_operator(PointOperator& op,
                                           const std::vector<VelocityField>& fields);

}  // namespace nseobs
