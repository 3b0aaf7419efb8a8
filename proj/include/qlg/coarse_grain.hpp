#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qlg/core_states.hpp"

namespace qlg {

enum class FilterKind { GaussianPosition, LorentzianMomentum };

std::string_view to_string(FilterKind kind);
/// Accepts "gaussian-position" and "lorentzian-momentum".
FilterKind filter_kind_from_string(std::string_view text);

/// Coarse-graining scale l_c = 1 / Lambda and the smearing family.
struct FilterSpec {
  double cutoff_length = 1.0;
  FilterKind kind = FilterKind::GaussianPosition;
};

/// Throws unless spacing < cutoff_length < domain length.
void check_resolvable(const FilterSpec& filter, const Grid1D& grid);

/// Coherence multiplier applied by the channel at separation `delta`.
///
/// Gaussian kind: the autocorrelation of a smearing kernel with standard deviation
/// l_c / sqrt(2), normalized to 1 at the origin: exp(-delta^2 / (2 l_c^2)).
/// Lorentzian kind: exp(-|delta| / l_c), whose Fourier transform is the Lorentzian W.
/// Both are positive-definite functions, so the Schur product preserves positivity.
double channel_multiplier(double delta, const FilterSpec& filter);

/// Normalized real smearing kernel f_Lambda(u) (integrates to 1).
/// Gaussian kind: standard deviation l_c / sqrt(2). Lorentzian kind: exp(-|u|/l_c) / (2 l_c).
double smearing_kernel(double u, const FilterSpec& filter);

/// rho'(x, x') = G(x - x') rho(x, x'). The diagonal is copied, so trace is preserved
/// bit-exactly. The multiplier table is rebuilt per call; it is O(N) memory.
DensityKernel apply_channel(const DensityKernel& rho, const FilterSpec& filter);

/// W(k) = 1 / (1 + k^2 l_c^2).
double momentum_filter(double k, const FilterSpec& filter);

struct CurrentSplit {
  std::vector<cplx> classical;
  std::vector<cplx> coherent;
};

/// Splits k-space samples on the FFT dual of `grid` (standard FFT ordering):
/// classical = W * input, coherent = input - classical, so the sum is exact.
CurrentSplit split_current_momentum(std::span<const cplx> samples, const Grid1D& grid,
                                    const FilterSpec& filter);

}  // namespace qlg
