#pragma once

#include <string>
#include <vector>

#include "nseobs/observation.hpp"
#include "nseobs/random_fields.hpp"

namespace nseobs {

struct ViolationRow {
  std::string check;
  std::uint64_t seed = 0;
  std::int64_t field_id = -1;
  double gamma = 0.0;
  double lhs = 0.0, rhs = 0.0;
  double margin = 0.0;   ///< rhs - lhs; negative means violated
};

struct ViolationReport {
  std::string check;
  std::uint64_t seed = 0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  double worst_margin = 0.0;           ///< min over all checks of rhs - lhs
  double worst_identity_defect = 0.0;  ///< corollary-substitution checks only
  std::vector<ViolationRow> violations;

  bool clean() const { return violations.empty(); }
};

std::string violations_csv(const std::vector<ViolationReport>& reports);

/// gamma-parametric sup-norm bound: ||u||_inf bounded through ||u||_H1 and
/// ||Delta u||_L2 for zero-mean fields. The sampled max is used on the left.
double agmoN_rhs(const GridSpec& grid, double gamma, double h1, double lap);
ViolationReport check_agmoN(const GridSpec& grid, const RandomFieldSpec& spec,
                            const std::vector<double>& gammas);

/// Specializations at gamma = ||u||_H1^(-1/2) ||Du||^(1/2) (Agmon form) and
/// gamma = ||u||_H1^(-1) ||Du|| (Brezis form); asserts the printed closed
/// forms bound linf and agree with the gamma-substituted generic bound.
ViolationReport check_agmon(const GridSpec& grid, const RandomFieldSpec& spec);
ViolationReport check_brezis(const GridSpec& grid, const RandomFieldSpec& spec);

/// I1(gamma) quadrature vs its log bound, and the closed-form I2 vs direct
/// quadrature of its defining integral.
ViolationReport check_appendix_integrals(const GridSpec& grid, const std::vector<double>& gammas,
                                         double quad_tol = 1e-10);

/// Ingredient inequalities of the detectability proof: the interpolation bound
/// routed through the observation operator, Poincare, and ||Au||^2 >= lambda1
/// ||grad u||^2.
ViolationReport check_prop1_ingredients(const GridSpec& grid, const RandomFieldSpec& spec,
                                        const AverageOperator& op);

}  // namespace nseobs
