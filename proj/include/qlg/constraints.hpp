#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qlg/signals.hpp"

namespace qlg {

struct AtomInterferometer {
  double mass = 0.0;       // kg
  double T = 0.0;          // s; the sequence spans 2T
  double kappa_max = 0.0;  // rad
  double geometry_factor = 1.0;
  UnitConvention convention = UnitConvention::PaperSi;
  /// Maximum arm separation in m, used to recompute I_geom per cutoff length.
  double arm_separation = 1.0;
};

struct Nanosphere {
  double mass = 0.0;     // kg
  double delta_x = 0.0;  // m
  double gamma_max = 0.0;
  double gamma0 = 0.0;
};

struct EntanglementTest {
  double m1 = 0.0;
  double m2 = 0.0;
  double r = 0.0;                   // m
  double energy_sensitivity = 0.0;  // J
};

using PlatformParams = std::variant<AtomInterferometer, Nanosphere, EntanglementTest>;

std::string_view platform_name(const PlatformParams& platform);

/// Bound on g. When the signal model carries no dependence on g (zero geometry factor,
/// zero separation, vanishing kernel), `bounded` is false and g_max is +infinity.
struct CouplingBound {
  double g_max = 0.0;
  bool bounded = true;
  std::string note;
};

/// g_max = sqrt(kappa_max / (omega_m T |I_geom|)).
CouplingBound bound_g_from_slope(const AtomInterferometer& p);

/// g_max = sqrt(Gamma_max / (gamma0 m^2 f(delta_x; l_c))).
CouplingBound bound_g_from_decoherence(const Nanosphere& p, double cutoff_length);

/// g_max = sqrt(sensitivity / (m1 m2 K(R; l_c))), the inversion of the two-qubit coupling.
CouplingBound bound_g_from_entanglement(const EntanglementTest& p, double cutoff_length);

struct ExclusionCurve {
  std::string platform;
  std::vector<double> cutoff_lengths;
  std::vector<double> g_max;  // +infinity where the platform has no sensitivity
};

struct MonotoneCheck {
  std::string platform;
  std::string property;
  bool passed = false;
  std::string detail;
};

struct ExclusionResult {
  std::vector<ExclusionCurve> curves;
  std::vector<MonotoneCheck> checks;
};

/// Evaluates every platform at every cutoff length. The interferometer's I_geom is
/// recomputed per l_c from a triangular trajectory (arm_separation, 2T) with the frozen
/// calibration. Rows are computed by `threads` workers and stored by input index.
ExclusionResult exclusion_grid(std::span<const PlatformParams> platforms,
                               std::span<const double> cutoff_lengths, unsigned threads = 1);

/// g^2 exp(-R/l_c) / (4 pi G) with G in SI, following the printed arithmetic.
double gravity_ratio(double coupling, double r, double cutoff_length);

enum class UnitSystem { Si, NaturalGeV };
enum class Quantity { Mass, Length, Time, Rate };

UnitSystem unit_system_from_string(std::string_view text);
Quantity quantity_from_string(std::string_view text);

/// SI: kg, m, s, 1/s. Natural (hbar = c = 1): GeV, 1/GeV, 1/GeV, GeV.
double unit_convert(double value, Quantity quantity, UnitSystem from, UnitSystem to);

}  // namespace qlg
