#include "nseobs/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace nseobs::fft {
namespace {

// FFTW planning is not thread-safe; execution via fftw_execute_dft on
// distinct arrays is. Plans are cached per (n1, n2, sign) and created with
// FFTW_ESTIMATE so planning is deterministic and does not touch the data.
class PlanCache {
 public:
  fftw_plan get(int n1, int n2, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(n1, n2, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> a(static_cast<size_t>(n1) * n2);
    std::vector<std::complex<double>> b(a.size());
    fftw_plan plan = fftw_plan_dft_2d(n1, n2, reinterpret_cast<fftw_complex*>(a.data()),
                                      reinterpret_cast<fftw_complex*>(b.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void forward(int n1, int n2, const std::complex<double>* in, std::complex<double>* out) {
  fftw_plan plan = cache().get(n1, n2, FFTW_FORWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / (static_cast<double>(n1) * n2);
  const size_t total = static_cast<size_t>(n1) * n2;
  for (size_t i = 0; i < total; ++i) out[i] *= scale;
}

void inverse(int n1, int n2, const std::complex<double>* in, std::complex<double>* out) {
  fftw_plan plan = cache().get(n1, n2, FFTW_BACKWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

std::vector<std::complex<double>> forward(int n1, int n2,
                                          const std::vector<std::complex<double>>& in) {
  std::vector<std::complex<double>> out(in.size());
  forward(n1, n2, in.data(), out.data());
  return out;
}

std::vector<std::complex<double>> inverse(int n1, int n2,
                                          const std::vector<std::complex<double>>& in) {
  std::vector<std::complex<double>> out(in.size());
  inverse(n1, n2, in.data(), out.data());
  return out;
}

}  // namespace nseobs::fft
