#include "qlg/signals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qlg/constants.hpp"
#include "qlg/errors.hpp"
#include "qlg/kernels.hpp"
#include "quadrature.hpp"

namespace qlg {

namespace {

using constants::kPi;

constexpr double kRegulatorFraction = 0.01;

void require_positive(double v, const char* name) {
  std::ostringstream msg;
  msg << name << " must be positive and finite, got " << v;
  require(std::isfinite(v) && v > 0.0, msg.str());
}

// l_c K(u l_c) as a function of u = R / l_c.
double scaled_yukawa(double u) { return std::exp(-u) / (4.0 * kPi * u); }

// int_0^1 2 (1 - z) l_c K(l_c (x z + delta)) dz: the unit-square double integral of the
// triangular profile, whose separation values are uniformly distributed over [0, 1].
double triangular_integral(double x, double delta) {
  const auto integrand = [&](double z) { return 2.0 * (1.0 - z) * scaled_yukawa(x * z + delta); };
  std::vector<double> edges{0.0};
  double e = 0.25 * delta / x;
  while (e < 1.0) {
    edges.push_back(e);
    e *= 2.0;
  }
  edges.push_back(1.0);
  double acc = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p)
    acc += detail::integrate_panel(integrand, edges[p], edges[p + 1], detail::gauss_legendre16());
  return acc;
}

double interpolate(const std::vector<double>& samples, double s) {
  const double pos = s * static_cast<double>(samples.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(pos), samples.size() - 2);
  const double frac = pos - static_cast<double>(i);
  return samples[i] + frac * (samples[i + 1] - samples[i]);
}

// Product Gauss-Legendre over the unit square for a sampled profile scaled by x = d_max/l_c.
double sampled_integral(const std::vector<double>& samples, double x, double delta) {
  constexpr std::size_t kPanels = 128;
  const auto& rule = detail::gauss_legendre16();
  std::vector<double> nodes;
  std::vector<double> weights;
  const double width = 1.0 / static_cast<double>(kPanels);
  for (std::size_t p = 0; p < kPanels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      nodes.push_back(mid + 0.5 * width * rule.nodes[i]);
      weights.push_back(0.5 * width * rule.weights[i]);
    }
  }
  std::vector<double> d(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) d[i] = x * interpolate(samples, nodes[i]);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      row += weights[j] * scaled_yukawa(std::abs(d[i] - d[j]) + delta);
    acc += weights[i] * row;
  }
  return acc;
}

double profile_integral(const TrajectorySpec& traj, double x, double delta) {
  if (traj.shape == TrajectoryShape::Triangular) return triangular_integral(x, delta);
  return sampled_integral(traj.samples, x, delta);
}

}  // namespace

std::string_view to_string(UnitConvention convention) {
  return convention == UnitConvention::PaperSi ? "paper-si" : "compton";
}

UnitConvention unit_convention_from_string(std::string_view text) {
  if (text == "paper-si") return UnitConvention::PaperSi;
  if (text == "compton") return UnitConvention::Compton;
  throw PreconditionError("unknown unit convention '" + std::string(text) +
                          "' (expected paper-si or compton)");
}

double mass_frequency(double mass, UnitConvention convention) {
  if (convention == UnitConvention::PaperSi) return mass / constants::kHbar;
  return mass * constants::kSpeedOfLight * constants::kSpeedOfLight / constants::kHbar;
}

std::vector<std::string> validate(const InterferometerSpec& spec) {
  require_positive(spec.mass, "mass");
  require_positive(spec.interrogation_time, "interrogation_time");
  require_positive(spec.coupling, "coupling");
  std::ostringstream msg;
  msg << "visibility must lie in [0, 1], got " << spec.visibility;
  require(spec.visibility >= 0.0 && spec.visibility <= 1.0, msg.str());
  require(std::isfinite(spec.geometry_factor) && spec.geometry_factor != 0.0,
          "geometry_factor must be finite and nonzero");
  std::vector<std::string> warnings;
  const double g = std::abs(spec.geometry_factor);
  if (g < 0.05 || g > 20.0) {
    std::ostringstream w;
    w << "|I_geom| = " << g << " lies outside the expected range [0.05, 20]";
    warnings.push_back(w.str());
  }
  return warnings;
}

double visibility_slope(const InterferometerSpec& spec) {
  validate(spec);
  return spec.coupling * spec.coupling * mass_frequency(spec.mass, spec.convention) *
         spec.interrogation_time * spec.geometry_factor;
}

PhaseResult qlg_phase(const InterferometerSpec& spec) {
  PhaseResult out;
  out.warnings = validate(spec);
  out.value = visibility_slope(spec) * spec.visibility;
  out.convention = spec.convention;
  return out;
}

double slope_uncertainty(double sigma_phi, double delta_v, int n_settings) {
  require(std::isfinite(sigma_phi) && sigma_phi >= 0.0, "sigma_phi must be nonnegative");
  require(delta_v > 0.0 && delta_v <= 1.0, "delta_V must lie in (0, 1]");
  require(n_settings >= 2, "slope fit needs at least 2 visibility settings");
  return sigma_phi / (delta_v * std::sqrt(static_cast<double>(n_settings)));
}

double geometry_calibration() {
  static const double value = [] {
    TrajectorySpec ref{1.0, 2.0, TrajectoryShape::Triangular, {}};
    return 1.0 / profile_integral(ref, 1.0, kRegulatorFraction);
  }();
  return value;
}

GeometryFactorResult geometry_factor(const TrajectorySpec& traj, double cutoff_length,
                                     double normalization) {
  require_positive(cutoff_length, "cutoff_length");
  require_positive(traj.total_time, "total_time");
  require(std::isfinite(traj.max_separation) && traj.max_separation >= 0.0,
          "max_separation must be nonnegative");
  require(std::isfinite(normalization), "normalization must be finite");
  bool all_zero = traj.max_separation == 0.0;
  if (traj.shape == TrajectoryShape::Sampled) {
    require(traj.samples.size() >= 2, "sampled trajectory needs at least 2 samples");
    bool any = false;
    for (double s : traj.samples) {
      require(std::isfinite(s) && s >= 0.0, "trajectory samples must be nonnegative");
      any = any || s > 0.0;
    }
    all_zero = all_zero || !any;
  }
  GeometryFactorResult out;
  out.normalization = normalization;
  if (all_zero) {
    out.degenerate = true;
    return out;
  }
  const double x = traj.max_separation / cutoff_length;
  out.value = normalization * profile_integral(traj, x, kRegulatorFraction);
  const double halved = normalization * profile_integral(traj, x, 0.5 * kRegulatorFraction);
  out.regulator_sensitivity = std::abs(halved - out.value) / std::abs(out.value);
  return out;
}

double decoherence_rate(double coupling, double mass, double delta_x, double gamma0,
                        double cutoff_length) {
  require_positive(coupling, "coupling");
  require_positive(mass, "mass");
  require_positive(gamma0, "gamma0");
  return gamma0 * (coupling * coupling) * (mass * mass) *
         decoherence_form_factor(delta_x, cutoff_length);
}

double visibility_decay(double v0, std::span<const double> rates, double duration) {
  require(v0 >= 0.0 && v0 <= 1.0, "V0 must lie in [0, 1]");
  require(std::isfinite(duration) && duration >= 0.0, "duration must be nonnegative");
  double total = 0.0;
  for (double r : rates) {
    require(std::isfinite(r) && r >= 0.0, "decay rates must be nonnegative");
    total += r;
  }
  return v0 * std::exp(-total * duration);
}

double residual_rate(double gamma_total, double gamma_env) { return gamma_total - gamma_env; }

EntanglementSignal entanglement_signal(const TwoQubitState& state, double coupling, double m1,
                                       double m2, double r, double cutoff_length) {
  require(std::abs(state.trace() - 1.0) <= 1e-10, "two-qubit state must have unit trace");
  // sx (x) sx reverses the basis order {00, 01, 10, 11}.
  double expectation = 0.0;
  for (int i = 0; i < 4; ++i) expectation += state.values(3 - i, i).real();
  EntanglementSignal out;
  out.normalized = expectation;
  out.energy = coupling * coupling * m1 * m2 * yukawa_kernel(r, cutoff_length) * expectation;
  return out;
}

double concurrence(const TwoQubitState& state) {
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> rho_eig(state.values);
  // Eigenvalues below the solver's resolution are zero; their square roots would
  // otherwise inject O(sqrt(eps)) noise into rank-deficient states.
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, rho_eig.eigenvalues().cwiseAbs().maxCoeff());
  const Eigen::Vector4d clipped =
      rho_eig.eigenvalues().unaryExpr([&](double v) { return v < floor ? 0.0 : std::sqrt(v); });
  const Eigen::Matrix4cd sqrt_rho =
      rho_eig.eigenvectors() * clipped.asDiagonal() * rho_eig.eigenvectors().adjoint();
  const Eigen::Matrix4cd sqrt_tilde = flip * sqrt_rho.conjugate() * flip;
  // The singular values of sqrt(rho) sqrt(rho~) are the square roots of the eigenvalues of
  // sqrt(rho) rho~ sqrt(rho), obtained here without squaring the rounding error.
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(sqrt_rho * sqrt_tilde);
  const Eigen::Vector4d lam = svd.singularValues();  // descending
  return std::clamp(lam(0) - lam(1) - lam(2) - lam(3), 0.0, 1.0);
}

std::string_view to_string(StateFamily family) {
  switch (family) {
    case StateFamily::Dephased:
      return "dephased";
    case StateFamily::Werner:
      return "werner";
    case StateFamily::Classical:
      return "classical";
  }
  return "";
}

StateFamily state_family_from_string(std::string_view text) {
  if (text == "dephased") return StateFamily::Dephased;
  if (text == "werner") return StateFamily::Werner;
  if (text == "classical") return StateFamily::Classical;
  throw PreconditionError("unknown state family '" + std::string(text) +
                          "' (expected dephased, werner or classical)");
}

std::vector<SignalPoint> signal_vs_concurrence_curve(StateFamily family, int n_points) {
  require(n_points >= 2, "curve needs at least 2 points");
  std::vector<SignalPoint> out;
  for (int i = 0; i < n_points; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(n_points - 1);
    TwoQubitState state;
    switch (family) {
      case StateFamily::Dephased:
        state = dephased_family(p);
        break;
      case StateFamily::Werner:
        state = werner_family(p);
        break;
      case StateFamily::Classical:
        state = classical_mix_00_11();
        break;
    }
    const auto sig = entanglement_signal(state, 1.0, 1.0, 1.0, 1.0, 1.0);
    out.push_back(SignalPoint{p, concurrence(state), sig.normalized});
  }
  return out;
}

}  // namespace qlg
