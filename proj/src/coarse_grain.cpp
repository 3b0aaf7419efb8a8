#include "qlg/coarse_grain.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "qlg/constants.hpp"
#include "qlg/errors.hpp"

namespace qlg {

std::string_view to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::GaussianPosition:
      return "gaussian-position";
    case FilterKind::LorentzianMomentum:
      return "lorentzian-momentum";
  }
  return "unknown";
}

FilterKind filter_kind_from_string(std::string_view text) {
  if (text == "gaussian-position") return FilterKind::GaussianPosition;
  if (text == "lorentzian-momentum") return FilterKind::LorentzianMomentum;
  throw PreconditionError("unknown filter kind '" + std::string(text) + "'");
}

void check_resolvable(const FilterSpec& filter, const Grid1D& grid) {
  std::ostringstream msg;
  msg << "filter cutoff_length " << filter.cutoff_length << " must lie strictly between the "
      << "grid spacing " << grid.spacing() << " and the domain length " << grid.length();
  require(filter.cutoff_length > grid.spacing() && filter.cutoff_length < grid.length(),
          msg.str());
}

double channel_multiplier(double delta, const FilterSpec& filter) {
  const double lc = filter.cutoff_length;
  if (filter.kind == FilterKind::GaussianPosition) return std::exp(-delta * delta / (2.0 * lc * lc));
  return std::exp(-std::abs(delta) / lc);
}

double smearing_kernel(double u, const FilterSpec& filter) {
  const double lc = filter.cutoff_length;
  if (filter.kind == FilterKind::GaussianPosition)
    return std::exp(-u * u / (lc * lc)) / (lc * std::sqrt(constants::kPi));
  return std::exp(-std::abs(u) / lc) / (2.0 * lc);
}

DensityKernel apply_channel(const DensityKernel& rho, const FilterSpec& filter) {
  const Grid1D& grid = rho.grid();
  check_resolvable(filter, grid);
  const auto n = static_cast<Eigen::Index>(grid.size());
  const double h = grid.spacing();
  // Multiplier depends only on |i - j|.
  std::vector<double> table(grid.size());
  for (std::size_t d = 0; d < grid.size(); ++d)
    table[d] = channel_multiplier(static_cast<double>(d) * h, filter);

  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i, i) = rho.values()(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const cplx v = table[static_cast<std::size_t>(j - i)] * rho.values()(i, j);
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return DensityKernel(grid, std::move(out));
}

double momentum_filter(double k, const FilterSpec& filter) {
  const double klc = k * filter.cutoff_length;
  return 1.0 / (1.0 + klc * klc);
}

CurrentSplit split_current_momentum(std::span<const cplx> samples, const Grid1D& grid,
                                    const FilterSpec& filter) {
  require(samples.size() == grid.size(), "k-space samples must match the grid size");
  CurrentSplit out;
  out.classical.resize(samples.size());
  out.coherent.resize(samples.size());
  // Round the larger share and take the other as a difference; by Sterbenz's lemma that
  // difference is exact, so classical + coherent reproduces the input bit-exactly.
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double w = momentum_filter(grid.wavenumber(j), filter);
    if (w >= 0.5) {
      out.classical[j] = w * samples[j];
      out.coherent[j] = samples[j] - out.classical[j];
    } else {
      out.coherent[j] = (1.0 - w) * samples[j];
      out.classical[j] = samples[j] - out.coherent[j];
    }
  }
  return out;
}

}  // namespace qlg
