#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace nseobs {

/// Adaptive Simpson quadrature on [a, b]; throws on non-convergence.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 40) {
  struct Rec {
    static double simpson(double a, double fa, double b, double fb, double fm) {
      return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }
    static double go(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
      double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      double flm = f(lm), frm = f(rm);
      double left = simpson(a, fa, m, fm, flm);
      double right = simpson(m, fm, b, fb, frm);
      double delta = left + right - whole;
      if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      if (depth <= 0) throw std::runtime_error("integrate: adaptive quadrature did not converge");
      return go(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
             go(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
    }
  };
  if (!(b > a)) return 0.0;
  double m = 0.5 * (a + b), fa = f(a), fb = f(b), fm = f(m);
  double whole = Rec::simpson(a, fa, b, fb, fm);
  return Rec::go(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace nseobs
