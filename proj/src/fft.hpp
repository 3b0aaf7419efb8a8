#pragma once

#include <complex>
#include <vector>

namespace qlg::detail {

// Unnormalized forward DFT (sign -1) and normalized inverse (divides by n).
// Plans use FFTW_ESTIMATE so identical inputs give identical outputs.
std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& in);
std::vector<std::complex<double>> fft_inverse(const std::vector<std::complex<double>>& in);

}  // namespace qlg::detail
