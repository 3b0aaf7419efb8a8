#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace qlg::detail {

namespace {

// FFTW planning is not thread-safe; execution on private buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>> transform(const std::vector<std::complex<double>>& in,
                                            int sign) {
  const int n = static_cast<int>(in.size());
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * in.size()));
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
  }
  std::copy(in.begin(), in.end(), reinterpret_cast<std::complex<double>*>(buf));
  fftw_execute(plan);
  std::vector<std::complex<double>> out(reinterpret_cast<std::complex<double>*>(buf),
                                        reinterpret_cast<std::complex<double>*>(buf) + n);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

}  // namespace

std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& in) {
  return transform(in, FFTW_FORWARD);
}

std::vector<std::complex<double>> fft_inverse(const std::vector<std::complex<double>>& in) {
  auto out = transform(in, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(in.size());
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace qlg::detail
