#pragma once

#include <string>
#include <vector>

namespace nseobs {

/// Inputs to the closed-form observer gain design.
struct DesignInputs {
  double nu = 0.01;
  double ell1 = 2.0 * 3.14159265358979323846;
  double ell2 = 2.0 * 3.14159265358979323846;
  double f_l2 = 0.1;
  double kappa = 1.1;          ///< > 1
  double c_omega = 0.0;        ///< certificate constant of the operator in use
  double h = 0.0;              ///< operator resolution
  double beta = 0.96;          ///< in (0,1]
  double theta_factor = 1.1;   ///< > 1, class-C2 gain multiplier
  double grad_u0_l2 = 0.0;

  void validate() const;
  double lambda1() const;
  double ell_norm() const;   ///< ||(ell1, ell2)||
};

struct GainConstants {
  double lambda1 = 0.0;
  double c1 = 0.0;   ///< C1^2 = (1 + lambda1^-1) / (2 pi)
  double c2 = 0.0;   ///< C2^2 = ||ell||^2 / (32 pi^3)
};

GainConstants constants(const DesignInputs& in);

/// Windowed bound on the time-averaged ||Au||^2:
/// 2 f^2/(T nu^3 lambda1) + 2 exp(-lambda1 nu t) |grad u0|^2/(T nu) + f^2/nu^2.
double theta_tT(const DesignInputs& in, double t, double T);

/// The Theorem-1 design function Theta(Gamma); negative for Gamma below the
/// zero of nu - C2/(lambda1 Gamma). Rejects Gamma <= 0.
double theta_of_gamma(const DesignInputs& in, double gamma);

struct ArgmaxResult {
  bool feasible = false;
  double gamma_max = 0.0;
  double theta_max = 0.0;
  double gamma_zero = 0.0;   ///< zero of the numerator factor (bracket anchor)
};

/// Log-spaced 2000-point grid over [gamma_zero (1+1e-6), gamma_zero 1e6]
/// refined by golden-section to 1e-6 relative in Gamma.
ArgmaxResult argmax_theta(const DesignInputs& in);

/// beta * Lhat_nabla with Lhat_nabla = 2 (nu - C2/(lambda1 Gamma)) / (h^2 C_Omega).
double gain_L_nabla(const DesignInputs& in, double gamma_max);

/// theta_factor * Lhat_Delta (class C2 gain).
double gain_L_delta(const DesignInputs& in, double gamma_max);

enum class OperatorClass { C1, C2 };

/// Right-hand side of the detectability h-bound with C_nabla = 1; the class-C2
/// variant drops the lambda1^(1/2) factor. Returns 0 when the numerator is
/// nonpositive (no certified h).
double detectability_h_bound(const DesignInputs& in, double gamma, OperatorClass cls);

/// Prior-art h^2 bound nu * T(nu) with G = f/(lambda1 nu^2) and the Brezis
/// constant c; the comparison uses c = 1/(2 pi).
double azouani_bound(const DesignInputs& in, double c);

struct TStarWindow {
  double t_star = 0.0;
  double T = 0.0;
};

/// Smallest t* and a window T with theta_{t*,T} <= kappa f^2 / nu^2.
TStarWindow pick_t_star(const DesignInputs& in);

struct GainReport {
  DesignInputs inputs;
  bool feasible = false;
  double lambda1 = 0.0, c1 = 0.0, c2 = 0.0, c_nabla = 1.0;
  double gamma_zero = 0.0, gamma_max = 0.0, theta_at_max = 0.0;
  double theta_tT_value = 0.0;
  double t_star = 0.0, T_window = 0.0;
  double h2_bound_c1 = 0.0;     ///< beta * Theta(Gamma_max)
  double h_bound_c2 = 0.0;      ///< beta C_Omega^(1/2) theta^-1 Theta(Gamma_max)
  double L_nabla = 0.0;         ///< beta * Lhat_nabla
  double L_delta = 0.0;         ///< theta_factor * Lhat_Delta
  double detect_h_bound_c1 = 0.0, detect_h_bound_c2 = 0.0;
  double azouani = 0.0;         ///< nu T(nu) at c = 1/(2 pi)
  double log10_ratio = 0.0;     ///< log10(Theta(Gamma_max) / azouani)
  bool h_feasible_c1 = false;   ///< h^2 < beta Theta(Gamma_max)
};

GainReport build_gain_report(const DesignInputs& in);

/// Flat key = value rendering of the report.
std::string gain_report_text(const GainReport& r);

struct ComparisonRow {
  double nu = 0.0;
  double gamma_max = 0.0;
  double theta_max = 0.0;
  double azouani = 0.0;
  double log10_ratio = 0.0;
  bool feasible = false;
};

std::vector<ComparisonRow> compare_bounds(DesignInputs in, const std::vector<double>& nu_grid,
                                          double c);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace nseobs
