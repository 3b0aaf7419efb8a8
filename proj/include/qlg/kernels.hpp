#pragma once

#include <vector>

#include "qlg/coarse_grain.hpp"

namespace qlg {

struct QuadratureSpec {
  double k_max_over_cutoff = 10.0;  // UV cutoff in units of Lambda = 1 / l_c
  int n_nodes = 256;
  double regulator_epsilon = 1.0;   // starting damping length for oscillatory integrals
  /// Stop once successive extrapolated estimates change by less than this (relative).
  double regulator_tolerance = 1e-7;
};

void check_valid(const QuadratureSpec& quad);

/// f(dx) = 1 - sin(dx/l_c) / (dx/l_c), with the removable limit f(0) = 0.
double decoherence_form_factor(double delta_x, double cutoff_length);

/// K(R) = exp(-R/l_c) / (4 pi R). Throws at R = 0.
double yukawa_kernel(double r, double cutoff_length);

/// sinc(u) = sin(u)/u with sinc(0) = 1.
double sinc(double u);

struct Gamma0Result {
  double value = 0.0;
  /// Closed-form antiderivative for the Lorentzian filter; NaN for other kinds.
  double analytic = 0.0;
  bool analytic_checked = false;
};

/// (1/hbar^2) (1/2 pi^2) int_0^{k_max} k^2 [1 - W(k)]^2 / (2 c k) dk with
/// W = filter_transfer, by composite Gauss-Legendre quadrature on panels graded
/// geometrically away from k = 0. For the Lorentzian kind the closed-form antiderivative
/// is evaluated alongside; for other kinds the check is skipped.
Gamma0Result gamma0_quadrature(const FilterSpec& filter, const QuadratureSpec& quad,
                               double hbar, double c);

/// Fourier transform of the normalized smearing kernel for `filter.kind`:
/// Lorentzian 1/(1 + k^2 l_c^2), Gaussian exp(-k^2 l_c^2 / 4).
double filter_transfer(double k, const FilterSpec& filter);

struct EntanglementKernelResult {
  double value = 0.0;                  // Richardson-extrapolated to zero regulator
  std::vector<double> epsilons;        // regulator sequence
  std::vector<double> raw_estimates;   // regulated integrals, one per epsilon
  double last_relative_change = 0.0;
  int halvings = 0;
};

/// (1/(2 pi^2 c^2)) int_0^inf [1 - W(k)]^2 sinc(kR) dk, regulated by exp(-eps k).
/// eps starts at quad.regulator_epsilon and is halved; the regulated values feed a
/// Romberg table (up to 6 columns) and halving stops once successive extrapolated
/// estimates differ by less than quad.regulator_tolerance.
/// Even in R by construction. Throws ConvergenceError after 12 halvings.
EntanglementKernelResult entanglement_kernel_momentum(double r, const FilterSpec& filter,
                                                      const QuadratureSpec& quad, double c);

}  // namespace qlg
