#pragma once

#include <span>

#include "qlg/coarse_grain.hpp"
#include "qlg/core_states.hpp"

namespace qlg {

/// Complex samples of n_coh (or the full density) on a grid. The physical source is the
/// real part; the imaginary part is kept as a diagnostic.
struct ScalarField {
  Grid1D grid;
  Eigen::VectorXcd values;

  Eigen::VectorXd real() const { return values.real(); }
  double max_abs_real() const;
};

/// One-dimensional current component on a grid, complex for the same reason.
struct VectorField {
  Grid1D grid;
  Eigen::VectorXcd values;

  Eigen::VectorXd real() const { return values.real(); }
};

/// Local probability density n(x_i) = rho(x_i, x_i).
ScalarField density(const DensityKernel& rho);

/// n_coh(x_i) = sum_j f(x_i - x_j) rho_off(x_i, x_j) * spacing with rho_off from
/// split_diag_offdiag and f the normalized smearing kernel at periodic separation.
ScalarField coherence_density(const DensityKernel& rho, const FilterSpec& filter);

/// J_coh(x_i) = (hbar / 2 m i) sum_j f(x_i - x_j) [(d_x - d_x') rho_off](x_i, x_j) * spacing.
///
/// Derivatives are second-order central differences with periodic wraparound on rho_off.
/// Where a stencil point falls on x = x' (stored as zero in rho_off) the off-diagonal
/// kernel is continued from its neighbours along x; the j == i term is dropped, mirroring
/// coherence_density. `mass` is in kg and hbar is the SI value.
VectorField coherence_current_density(const DensityKernel& rho, const FilterSpec& filter,
                                      double mass);

/// Relative residual || d_t n_coh + d_x J_coh ||_2 / || d_t n_coh ||_2 over all interior
/// snapshots, using central differences in t and x. Snapshots must be uniformly spaced;
/// a trajectory of identical snapshots has residual 0 by convention.
double continuity_residual(std::span<const DensityKernel> trajectory,
                           std::span<const double> times, const FilterSpec& filter,
                           double mass);

/// max |Re n_coh[mix]| / max |Re n_coh[sup]|. Throws when the superposition gives a
/// zero field.
double classical_suppression(const DensityKernel& mixture, const DensityKernel& superposition,
                             const FilterSpec& filter);

}  // namespace qlg
