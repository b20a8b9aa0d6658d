#include "nseobs/gain.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nseobs/io.hpp"

namespace nseobs {

void DesignInputs::validate() const {
  if (!(nu > 0.0) || !(ell1 > 0.0) || !(ell2 > 0.0) || !(f_l2 > 0.0))
    throw std::invalid_argument("DesignInputs: nu, ell1, ell2, f_l2 must be positive");
  if (!(kappa > 1.0)) throw std::invalid_argument("DesignInputs: kappa must exceed 1");
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("DesignInputs: beta must be in (0,1]");
  if (!(theta_factor > 1.0))
    throw std::invalid_argument("DesignInputs: theta_factor must exceed 1");
  if (grad_u0_l2 < 0.0) throw std::invalid_argument("DesignInputs: grad_u0_l2 must be >= 0");
}

double DesignInputs::lambda1() const {
  double ell = std::max(ell1, ell2);
  return 4.0 * M_PI * M_PI / (ell * ell);
}

double DesignInputs::ell_norm() const { return std::hypot(ell1, ell2); }

GainConstants constants(const DesignInputs& in) {
  GainConstants c;
  c.lambda1 = in.lambda1();
  c.c1 = std::sqrt((1.0 + 1.0 / c.lambda1) / (2.0 * M_PI));
  c.c2 = std::sqrt(in.ell_norm() * in.ell_norm() / (32.0 * M_PI * M_PI * M_PI));
  return c;
}

double theta_tT(const DesignInputs& in, double t, double T) {
  if (!(t > 0.0) || !(T > 0.0)) throw std::invalid_argument("theta_tT: t, T must be positive");
  double lam = in.lambda1();
  double f2 = in.f_l2 * in.f_l2;
  return 2.0 * f2 / (T * in.nu * in.nu * in.nu * lam) +
         2.0 * std::exp(-lam * in.nu * t) * in.grad_u0_l2 * in.grad_u0_l2 / (T * in.nu) +
         f2 / (in.nu * in.nu);
}

namespace {

double log_factor(const DesignInputs& in, double gamma) {
  double f2 = in.f_l2 * in.f_l2;
  return std::log(1.0 + 4.0 * M_PI * M_PI * in.kappa * f2 * gamma * gamma /
                            (in.nu * in.nu * in.ell1 * in.ell2));
}

}  // namespace

double theta_of_gamma(const DesignInputs& in, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("theta_of_gamma: gamma must be positive");
  double lam = in.lambda1();
  double psi = in.nu - in.ell_norm() / (std::sqrt(32.0 * M_PI * M_PI * M_PI) * lam * gamma);
  double ell_max = std::max(in.ell1, in.ell2);
  double denom = in.c_omega * std::sqrt(4.0 * in.kappa * M_PI * M_PI + in.kappa * ell_max * ell_max) *
                 in.f_l2;
  return std::pow(2.0 * M_PI, 1.5) * in.nu * psi / (std::sqrt(log_factor(in, gamma)) * denom);
}

ArgmaxResult argmax_theta(const DesignInputs& in) {
  in.validate();
  if (!(in.c_omega > 0.0)) throw std::invalid_argument("argmax_theta: c_omega must be positive");
  GainConstants c = constants(in);
  ArgmaxResult res;
  res.gamma_zero = c.c2 / (c.lambda1 * in.nu);

  const double lo = std::log(res.gamma_zero * (1.0 + 1e-6));
  const double hi = std::log(res.gamma_zero * 1e6);
  const int npts = 2000;
  double best_val = -1e300;
  int best_i = 0;
  for (int i = 0; i < npts; ++i) {
    double g = std::exp(lo + (hi - lo) * i / (npts - 1));
    double v = theta_of_gamma(in, g);
    if (v > best_val) {
      best_val = v;
      best_i = i;
    }
  }
  if (!(best_val > 0.0) || !std::isfinite(best_val)) {
    res.feasible = false;
    return res;
  }
  // golden-section refinement on log(gamma) around the best grid point
  double a = lo + (hi - lo) * std::max(0, best_i - 1) / (npts - 1);
  double b = lo + (hi - lo) * std::min(npts - 1, best_i + 1) / (npts - 1);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = theta_of_gamma(in, std::exp(x1)), f2 = theta_of_gamma(in, std::exp(x2));
  while (b - a > 1e-6) {  // log-space width == relative gamma tolerance
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = theta_of_gamma(in, std::exp(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = theta_of_gamma(in, std::exp(x1));
    }
  }
  res.gamma_max = std::exp(0.5 * (a + b));
  res.theta_max = theta_of_gamma(in, res.gamma_max);
  res.feasible = res.theta_max > 0.0 && std::isfinite(res.theta_max);
  return res;
}

double gain_L_nabla(const DesignInputs& in, double gamma_max) {
  if (!(in.h > 0.0) || !(in.c_omega > 0.0))
    throw std::invalid_argument("gain_L_nabla: h and c_omega must be positive");
  GainConstants c = constants(in);
  double psi = in.nu - c.c2 / (c.lambda1 * gamma_max);
  if (!(psi > 0.0))
    throw std::invalid_argument("gain_L_nabla: infeasible gamma (nonpositive numerator)");
  return in.beta * 2.0 * psi / (in.h * in.h * in.c_omega);
}

double gain_L_delta(const DesignInputs& in, double gamma_max) {
  GainConstants c = constants(in);
  double psi = in.nu - c.c2 / (c.lambda1 * gamma_max);
  if (!(psi > 0.0))
    throw std::invalid_argument("gain_L_delta: infeasible gamma (nonpositive numerator)");
  double lhat = std::sqrt(in.kappa + in.kappa / c.lambda1) * in.f_l2 /
                (in.nu * std::sqrt(2.0 * M_PI)) * std::sqrt(log_factor(in, gamma_max));
  return in.theta_factor * lhat;
}

double detectability_h_bound(const DesignInputs& in, double gamma, OperatorClass cls) {
  GainConstants c = constants(in);
  double num = in.nu * (0.75 * in.nu - c.c2 / (c.lambda1 * gamma));
  if (cls == OperatorClass::C1) num *= std::sqrt(c.lambda1);
  if (!(num > 0.0)) return 0.0;
  const double c_nabla = 1.0;
  double den = c.c1 * c_nabla * std::sqrt(in.c_omega) * std::sqrt(in.kappa) * in.f_l2 *
               std::sqrt(log_factor(in, gamma));
  return num / den;
}

double azouani_bound(const DesignInputs& in, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("azouani_bound: c must be positive");
  double lam = in.lambda1();
  double G = in.f_l2 / (lam * in.nu * in.nu);
  double bracket = 2.0 * c * std::log(2.0) * std::pow(c, 1.5) + 8.0 * c * std::log1p(G);
  return in.nu / (in.c_omega * 3.0 * in.nu * lam * bracket * G);
}

TStarWindow pick_t_star(const DesignInputs& in) {
  in.validate();
  double lam = in.lambda1();
  double f2 = in.f_l2 * in.f_l2;
  double target = in.kappa * f2 / (in.nu * in.nu);
  // give the 1/T term a share of the budget above f^2/nu^2 that always leaves
  // room for the exponential term
  double share = std::min(0.05 * in.kappa, 0.5 * (in.kappa - 1.0)) * f2 / (in.nu * in.nu);
  TStarWindow w;
  w.T = 2.0 * f2 / (in.nu * in.nu * in.nu * lam) / share;
  double budget = target - f2 / (in.nu * in.nu) - share;
  if (in.grad_u0_l2 <= 0.0 || budget <= 0.0) {
    w.t_star = budget > 0.0 ? 0.0 : 1e300;
    return w;
  }
  double e0 = 2.0 * in.grad_u0_l2 * in.grad_u0_l2 / (w.T * in.nu);
  w.t_star = e0 <= budget ? 0.0 : std::log(e0 / budget) / (lam * in.nu);
  return w;
}

GainReport build_gain_report(const DesignInputs& in) {
  in.validate();
  GainReport r;
  r.inputs = in;
  GainConstants c = constants(in);
  r.lambda1 = c.lambda1;
  r.c1 = c.c1;
  r.c2 = c.c2;
  ArgmaxResult am = argmax_theta(in);
  r.feasible = am.feasible;
  r.gamma_zero = am.gamma_zero;
  if (!am.feasible) return r;
  r.gamma_max = am.gamma_max;
  r.theta_at_max = am.theta_max;
  TStarWindow w = pick_t_star(in);
  r.t_star = w.t_star;
  r.T_window = w.T;
  r.theta_tT_value = theta_tT(in, std::max(w.t_star, 1e-12), w.T);
  r.h2_bound_c1 = in.beta * am.theta_max;
  r.h_bound_c2 = in.beta * std::sqrt(in.c_omega) / in.theta_factor * am.theta_max;
  if (in.h > 0.0) {
    r.h_feasible_c1 = in.h * in.h < r.h2_bound_c1;
    r.L_nabla = gain_L_nabla(in, am.gamma_max);
  }
  r.L_delta = gain_L_delta(in, am.gamma_max);
  r.detect_h_bound_c1 = detectability_h_bound(in, am.gamma_max, OperatorClass::C1);
  r.detect_h_bound_c2 = detectability_h_bound(in, am.gamma_max, OperatorClass::C2);
  r.azouani = azouani_bound(in, 1.0 / (2.0 * M_PI));
  r.log10_ratio = std::log10(am.theta_max / r.azouani);
  return r;
}

std::string gain_report_text(const GainReport& r) {
  std::ostringstream os;
  auto kv = [&](const char* k, double v) { os << k << " = " << format_double(v) << '\n'; };
  os << "# observer gain design report\n";
  kv("nu", r.inputs.nu);
  kv("ell1", r.inputs.ell1);
  kv("ell2", r.inputs.ell2);
  kv("f_l2", r.inputs.f_l2);
  kv("kappa", r.inputs.kappa);
  kv("c_omega", r.inputs.c_omega);
  kv("h", r.inputs.h);
  kv("beta", r.inputs.beta);
  kv("theta_factor", r.inputs.theta_factor);
  kv("grad_u0_l2", r.inputs.grad_u0_l2);
  os << "feasible = " << (r.feasible ? "true" : "false") << '\n';
  kv("lambda1", r.lambda1);
  kv("c1", r.c1);
  kv("c2", r.c2);
  kv("c_nabla", r.c_nabla);
  kv("gamma_zero", r.gamma_zero);
  kv("gamma_max", r.gamma_max);
  kv("theta_at_max", r.theta_at_max);
  kv("theta_tT", r.theta_tT_value);
  kv("t_star", r.t_star);
  kv("T_window", r.T_window);
  kv("h2_bound_c1", r.h2_bound_c1);
  kv("h_bound_c2", r.h_bound_c2);
  kv("L_nabla", r.L_nabla);
  kv("L_delta", r.L_delta);
  kv("detect_h_bound_c1", r.detect_h_bound_c1);
  kv("detect_h_bound_c2", r.detect_h_bound_c2);
  kv("azouani_h2_bound", r.azouani);
  kv("log10_theta_over_azouani", r.log10_ratio);
  os << "h_feasible_c1 = " << (r.h_feasible_c1 ? "true" : "false") << '\n';
  return os.str();
}

std::vector<ComparisonRow> compare_bounds(DesignInputs in, const std::vector<double>& nu_grid,
                                          double c) {
  std::vector<ComparisonRow> rows;
  rows.reserve(nu_grid.size());
  for (double nu : nu_grid) {
    in.nu = nu;
    ComparisonRow row;
    row.nu = nu;
    ArgmaxResult am = argmax_theta(in);
    row.feasible = am.feasible;
    if (am.feasible) {
      row.gamma_max = am.gamma_max;
      row.theta_max = am.theta_max;
      row.azouani = azouani_bound(in, c);
      row.log10_ratio = std::log10(row.theta_max / row.azouani);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream os;
  os << "nu,gamma_max,theta_max,azouani,log10_ratio,feasible\n";
  for (const auto& r : rows) {
    os << format_double(r.nu) << ',' << format_double(r.gamma_max) << ','
       << format_double(r.theta_max) << ',' << format_double(r.azouani) << ','
       << format_double(r.log10_ratio) << ',' << (r.feasible ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace nseobs
