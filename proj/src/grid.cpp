#include "nseobs/grid.hpp"

#include <cmath>

namespace nseobs {

double GridSpec::lambda1() const {
  double ell = std::max(ell1_, ell2_);
  return 4.0 * M_PI * M_PI / (ell * ell);
}

double GridSpec::kx(int i1) const { return 2.0 * M_PI * k1(i1) / ell1_; }
double GridSpec::ky(int i2) const { return 2.0 * M_PI * k2(i2) / ell2_; }

}  // namespace nseobs
