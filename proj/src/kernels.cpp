#include "qlg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qlg/constants.hpp"
#include "qlg/errors.hpp"
#include "quadrature.hpp"

namespace qlg {

namespace {

using constants::kPi;

using detail::gauss_legendre16;
using detail::integrate_uniform;

}  // namespace

void check_valid(const QuadratureSpec& quad) {
  require(quad.k_max_over_cutoff > 1.0, "k_max_over_cutoff must exceed 1");
  require(quad.n_nodes >= 64, "quadrature needs at least 64 nodes");
  require(quad.regulator_epsilon > 0.0, "regulator_epsilon must be positive");
  require(quad.regulator_tolerance > 0.0 && quad.regulator_tolerance <= 0.01,
          "regulator_tolerance must lie in (0, 0.01]");
}

double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

double decoherence_form_factor(double delta_x, double cutoff_length) {
  require(cutoff_length > 0.0, "cutoff_length must be positive");
  require(delta_x >= 0.0, "delta_x must be nonnegative");
  const double u = delta_x / cutoff_length;
  if (u < 0.1) {
    // Taylor series of 1 - sin(u)/u; avoids cancellation near the origin.
    const double u2 = u * u;
    return u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0 * (1.0 - u2 / 72.0)));
  }
  return 1.0 - std::sin(u) / u;
}

double yukawa_kernel(double r, double cutoff_length) {
  require(r > 0.0, "Yukawa kernel is singular at R = 0");
  require(cutoff_length > 0.0, "cutoff_length must be positive");
  return std::exp(-r / cutoff_length) / (4.0 * kPi * r);
}

double filter_transfer(double k, const FilterSpec& filter) {
  const double klc = k * filter.cutoff_length;
  if (filter.kind == FilterKind::LorentzianMomentum) return 1.0 / (1.0 + klc * klc);
  return std::exp(-0.25 * klc * klc);
}

Gamma0Result gamma0_quadrature(const FilterSpec& filter, const QuadratureSpec& quad, double hbar,
                               double c) {
  check_valid(quad);
  require(filter.cutoff_length > 0.0, "cutoff_length must be positive");
  require(hbar > 0.0 && c > 0.0, "hbar and c must be positive");
  const double lambda = 1.0 / filter.cutoff_length;
  const double k_max = quad.k_max_over_cutoff * lambda;

  // k^2 [1 - W]^2 / (2 c k); 1 - W is formed as k^2 l_c^2 W for the Lorentzian to keep
  // precision at small k.
  const auto integrand = [&](double k) {
    double one_minus_w;
    if (filter.kind == FilterKind::LorentzianMomentum) {
      const double klc = k * filter.cutoff_length;
      one_minus_w = klc * klc / (1.0 + klc * klc);
    } else {
      one_minus_w = -std::expm1(-0.25 * k * k * filter.cutoff_length * filter.cutoff_length);
    }
    return k * one_minus_w * one_minus_w / (2.0 * c);
  };

  std::vector<double> edges{0.0};
  double e = lambda / 8.0;
  while (e < k_max) {
    edges.push_back(e);
    e *= 2.0;
  }
  edges.push_back(k_max);
  const std::size_t panels = edges.size() - 1;
  const auto per_panel = static_cast<std::size_t>(
      std::max<long>(1, static_cast<long>(quad.n_nodes) / static_cast<long>(16 * panels)));

  double integral = 0.0;
  for (std::size_t p = 0; p < panels; ++p)
    integral += integrate_uniform(integrand, edges[p], edges[p + 1], per_panel, gauss_legendre16());

  const double prefactor = 1.0 / (hbar * hbar) / (2.0 * kPi * kPi);
  Gamma0Result result;
  result.value = prefactor * integral;
  if (filter.kind == FilterKind::LorentzianMomentum) {
    // int_0^K k^5/(L^2+k^2)^2 dk = L^2/2 [U - 2 ln(1+U) - 1/(1+U) + 1], U = (K/L)^2.
    const double u = (k_max / lambda) * (k_max / lambda);
    const double k_integral =
        0.5 * lambda * lambda * (u - 2.0 * std::log1p(u) - 1.0 / (1.0 + u) + 1.0);
    result.analytic = prefactor * k_integral / (2.0 * c);
    result.analytic_checked = true;
  } else {
    result.analytic = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

EntanglementKernelResult entanglement_kernel_momentum(double r, const FilterSpec& filter,
                                                      const QuadratureSpec& quad, double c) {
  check_valid(quad);
  require(r != 0.0 && std::isfinite(r), "entanglement kernel requires R != 0");
  require(filter.cutoff_length > 0.0, "cutoff_length must be positive");
  require(c > 0.0, "c must be positive");
  const double dist = std::abs(r);
  const double lambda = 1.0 / filter.cutoff_length;
  const double panel_width = std::min(kPi / dist, 0.5 * lambda);
  const double prefactor = 1.0 / (2.0 * kPi * kPi * c * c);
  // Scale of the unscreened 1/(4 pi c^2 R) kernel, used as an absolute floor when the
  // screened value passes through zero.
  const double bare = 1.0 / (4.0 * kPi * c * c * dist);

  const auto regulated = [&](double eps) {
    const auto integrand = [&](double k) {
      const double one_minus_w = 1.0 - filter_transfer(k, filter);
      return one_minus_w * one_minus_w * sinc(k * dist) * std::exp(-eps * k);
    };
    // exp(-40) is far below double resolution relative to the O(1) integrand.
    const double k_end = 40.0 / eps;
    const auto panels = static_cast<std::size_t>(std::ceil(k_end / panel_width));
    return prefactor * integrate_uniform(integrand, 0.0, panel_width * static_cast<double>(panels),
                                         panels, gauss_legendre16());
  };

  constexpr int kMaxHalvings = 12;
  constexpr int kRombergDepth = 6;
  EntanglementKernelResult out;
  std::vector<std::vector<double>> table;
  double eps = quad.regulator_epsilon;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int level = 0; level <= kMaxHalvings; ++level) {
    out.epsilons.push_back(eps);
    out.raw_estimates.push_back(regulated(eps));
    std::vector<double> row{out.raw_estimates.back()};
    for (int j = 1; j <= std::min(level, kRombergDepth); ++j) {
      const double factor = std::ldexp(1.0, j) - 1.0;
      row.push_back(row[j - 1] + (row[j - 1] - table.back()[j - 1]) / factor);
    }
    table.push_back(row);
    const double estimate = row.back();
    out.halvings = level;
    if (level >= 2) {
      out.last_relative_change = std::abs(estimate - previous) /
                                 std::max(std::abs(estimate), 1e-6 * bare);
      if (out.last_relative_change < quad.regulator_tolerance) {
        out.value = estimate;
        return out;
      }
    }
    previous = estimate;
    eps *= 0.5;
  }
  std::ostringstream msg;
  msg << "entanglement kernel at R = " << r << " did not converge after " << kMaxHalvings
      << " regulator halvings; last relative change " << out.last_relative_change
      << ", last estimate " << previous;
  throw ConvergenceError(msg.str());
}

}  // namespace qlg
