#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlg/core_states.hpp"

namespace qlg {

/// How the mass frequency in the phase formula is built: m / hbar with SI values
/// (reproduces the printed estimates) or the Compton frequency m c^2 / hbar.
enum class UnitConvention { PaperSi, Compton };

std::string_view to_string(UnitConvention convention);
/// Accepts "paper-si" and "compton".
UnitConvention unit_convention_from_string(std::string_view text);

/// omega_m for `mass` in kg under `convention`.
double mass_frequency(double mass, UnitConvention convention);

struct InterferometerSpec {
  double mass = 0.0;               // kg
  double interrogation_time = 0.0; // s
  double visibility = 1.0;
  double geometry_factor = 1.0;
  double coupling = 0.0;
  UnitConvention convention = UnitConvention::PaperSi;
};

/// Throws PreconditionError on invalid fields; returns warnings (|I_geom| outside [0.05, 20]).
std::vector<std::string> validate(const InterferometerSpec& spec);

struct PhaseResult {
  double value = 0.0;  // rad
  UnitConvention convention = UnitConvention::PaperSi;
  std::vector<std::string> warnings;
};

/// Delta phi = kappa * V with kappa from visibility_slope, so the two agree bit-exactly.
PhaseResult qlg_phase(const InterferometerSpec& spec);

/// kappa = g^2 omega_m T I_geom.
double visibility_slope(const InterferometerSpec& spec);

/// sigma_kappa = sigma_phi / (delta_V sqrt(M)).
double slope_uncertainty(double sigma_phi, double delta_v, int n_settings);

enum class TrajectoryShape { Triangular, Sampled };

/// Branch separation d(t) over a sequence of length total_time. Triangular rises linearly
/// to max_separation at total_time / 2 and returns to 0. Sampled uses `samples` as values
/// of d(t) on a uniform time grid including both end points, linearly interpolated.
struct TrajectorySpec {
  double max_separation = 0.0;
  double total_time = 0.0;
  TrajectoryShape shape = TrajectoryShape::Triangular;
  std::vector<double> samples;
};

/// Calibration constant that makes d_max = 1 m, T_tot = 2 s, l_c = 1 m give I_geom = 1.
double geometry_calibration();

struct GeometryFactorResult {
  double value = 0.0;
  double normalization = 0.0;
  /// Relative change of the value when the short-distance regulator is halved.
  double regulator_sensitivity = 0.0;
  bool degenerate = false;  // zero separation throughout; value is 0
};

/// I = normalization / T_tot^2 * int int dt dt' l_c K(|d(t) - d(t')| + l_c/100) with K the
/// Yukawa kernel.
GeometryFactorResult geometry_factor(const TrajectorySpec& traj, double cutoff_length,
                                     double normalization);

/// Gamma = gamma0 g^2 m^2 f(delta_x). The mass unit is the caller's; gamma0 absorbs it.
double decoherence_rate(double coupling, double mass, double delta_x, double gamma0,
                        double cutoff_length);

/// V0 exp(-sum(rates) * duration).
double visibility_decay(double v0, std::span<const double> rates, double duration);

/// Gamma_total - Gamma_env.
double residual_rate(double gamma_total, double gamma_env);

struct EntanglementSignal {
  double energy = 0.0;      // g^2 m1 m2 K(R) <sx sx>
  double normalized = 0.0;  // <sx sx>
};

EntanglementSignal entanglement_signal(const TwoQubitState& state, double coupling, double m1,
                                       double m2, double r, double cutoff_length);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) from the spin-flipped state.
double concurrence(const TwoQubitState& state);

enum class StateFamily { Dephased, Werner, Classical };

std::string_view to_string(StateFamily family);
StateFamily state_family_from_string(std::string_view text);

struct SignalPoint {
  double parameter = 0.0;
  double concurrence = 0.0;
  double signal = 0.0;
};

/// Samples the family at p = i / (n_points - 1).
std::vector<SignalPoint> signal_vs_concurrence_curve(StateFamily family, int n_points);

}  // namespace qlg
