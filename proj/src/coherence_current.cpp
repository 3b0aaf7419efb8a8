#include "qlg/coherence_current.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "qlg/constants.hpp"
#include "qlg/errors.hpp"

namespace qlg {

namespace {

std::vector<double> smearing_table(const Grid1D& grid, const FilterSpec& filter) {
  // f at periodic separation depends on (i - j) mod n only.
  std::vector<double> table(grid.size());
  for (std::size_t d = 0; d < grid.size(); ++d)
    table[d] = smearing_kernel(grid.periodic_separation(d, 0), filter);
  return table;
}

std::size_t wrap_index(std::size_t i, std::size_t n) { return i % n; }

Eigen::VectorXcd central_difference(const Eigen::VectorXcd& v, double h) {
  const auto n = v.size();
  Eigen::VectorXcd d(n);
  for (Eigen::Index i = 0; i < n; ++i)
    d(i) = (v((i + 1) % n) - v((i + n - 1) % n)) / (2.0 * h);
  return d;
}

}  // namespace

double ScalarField::max_abs_real() const { return values.real().cwiseAbs().maxCoeff(); }

ScalarField density(const DensityKernel& rho) {
  return ScalarField{rho.grid(), rho.values().diagonal()};
}

ScalarField coherence_density(const DensityKernel& rho, const FilterSpec& filter) {
  const Grid1D& grid = rho.grid();
  check_resolvable(filter, grid);
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const auto f = smearing_table(grid, filter);
  const auto off = split_diag_offdiag(rho).off_diagonal;
  const auto& m = off.values();

  Eigen::VectorXcd out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      acc += f[wrap_index(i + n - j, n)] *
             m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    out(static_cast<Eigen::Index>(i)) = acc * h;
  }
  return ScalarField{grid, std::move(out)};
}

VectorField coherence_current_density(const DensityKernel& rho, const FilterSpec& filter,
                                      double mass) {
  const Grid1D& grid = rho.grid();
  check_resolvable(filter, grid);
  std::ostringstream msg;
  msg << "mass must be positive, got " << mass;
  require(mass > 0.0, msg.str());
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const auto f = smearing_table(grid, filter);
  const auto off = split_diag_offdiag(rho).off_diagonal;
  const auto& r = off.values();
  const auto entry = [&](std::size_t i, std::size_t j) {
    return r(static_cast<Eigen::Index>(i % n), static_cast<Eigen::Index>(j % n));
  };
  // The stencil may land on x = x', where rho_off stores zero by construction. There the
  // smooth off-diagonal kernel is continued from its two neighbours along x (second order),
  // so a strictly diagonal input still yields J = 0 exactly.
  const auto at = [&](std::size_t i, std::size_t j) {
    if (i % n != j % n) return entry(i, j);
    return 0.5 * (entry(i + n - 1, j) + entry(i + 1, j));
  };
  const cplx prefactor = constants::kHbar / (2.0 * mass) / cplx(0.0, 1.0);

  Eigen::VectorXcd out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const cplx dx = at(i + 1, j) - at(i + n - 1, j);
      const cplx dxp = at(i, j + 1) - at(i, j + n - 1);
      acc += f[wrap_index(i + n - j, n)] * (dx - dxp);
    }
    out(static_cast<Eigen::Index>(i)) = prefactor * acc / (2.0 * h) * h;
  }
  return VectorField{grid, std::move(out)};
}

double continuity_residual(std::span<const DensityKernel> trajectory,
                           std::span<const double> times, const FilterSpec& filter,
                           double mass) {
  require(trajectory.size() >= 3, "continuity residual needs at least 3 snapshots");
  require(times.size() == trajectory.size(), "one time stamp per snapshot is required");
  const Grid1D& grid = trajectory.front().grid();
  for (const auto& k : trajectory) require(k.grid() == grid, "snapshots must share a grid");

  const bool all_identical = std::all_of(trajectory.begin(), trajectory.end(), [&](const auto& k) {
    return k.values() == trajectory.front().values();
  });
  if (all_identical) return 0.0;

  const double dt = times[1] - times[0];
  require(dt > 0.0, "time stamps must increase");
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double step = times[k] - times[k - 1];
    std::ostringstream msg;
    msg << "time steps must be uniform: step " << k << " is " << step << ", expected " << dt;
    require(std::abs(step - dt) <= 1e-9 * dt, msg.str());
  }

  std::vector<Eigen::VectorXcd> n_coh;
  n_coh.reserve(trajectory.size());
  for (const auto& k : trajectory) n_coh.push_back(coherence_density(k, filter).values);

  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 1; k + 1 < trajectory.size(); ++k) {
    const Eigen::VectorXcd dndt = (n_coh[k + 1] - n_coh[k - 1]) / (2.0 * dt);
    const auto current = coherence_current_density(trajectory[k], filter, mass);
    const Eigen::VectorXcd div = central_difference(current.values, grid.spacing());
    num += (dndt + div).squaredNorm();
    den += dndt.squaredNorm();
  }
  if (den == 0.0) return 0.0;
  return std::sqrt(num / den);
}

double classical_suppression(const DensityKernel& mixture, const DensityKernel& superposition,
                             const FilterSpec& filter) {
  require(mixture.grid() == superposition.grid(), "both states must share a grid");
  const double sup = coherence_density(superposition, filter).max_abs_real();
  require(sup > 0.0, "superposition produces an identically zero coherence density");
  return coherence_density(mixture, filter).max_abs_real() / sup;
}

}  // namespace qlg
