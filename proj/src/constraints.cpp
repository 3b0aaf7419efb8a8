#include "qlg/constraints.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qlg/constants.hpp"
#include "qlg/errors.hpp"
#include "qlg/kernels.hpp"
#include "qlg/parallel.hpp"

namespace qlg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* name) {
  std::ostringstream msg;
  msg << name << " must be positive and finite, got " << v;
  require(std::isfinite(v) && v > 0.0, msg.str());
}

CouplingBound unbounded(std::string note) { return CouplingBound{kInf, false, std::move(note)}; }

double evaluate(const PlatformParams& platform, double cutoff_length) {
  struct Visitor {
    double lc;
    double operator()(const AtomInterferometer& p) const {
      AtomInterferometer local = p;
      const TrajectorySpec traj{p.arm_separation, 2.0 * p.T, TrajectoryShape::Triangular, {}};
      local.geometry_factor = geometry_factor(traj, lc, geometry_calibration()).value;
      return bound_g_from_slope(local).g_max;
    }
    double operator()(const Nanosphere& p) const { return bound_g_from_decoherence(p, lc).g_max; }
    double operator()(const EntanglementTest& p) const {
      return bound_g_from_entanglement(p, lc).g_max;
    }
  };
  return std::visit(Visitor{cutoff_length}, platform);
}

std::vector<std::size_t> order_by(const std::vector<double>& keys) {
  std::vector<std::size_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return keys[a] < keys[b]; });
  return idx;
}

MonotoneCheck check_curve(const PlatformParams& platform, const ExclusionCurve& curve) {
  MonotoneCheck check;
  check.platform = curve.platform;
  const auto idx = order_by(curve.cutoff_lengths);
  std::ostringstream detail;
  if (const auto* nano = std::get_if<Nanosphere>(&platform)) {
    check.property = "g_max nondecreasing in l_c for l_c > delta_x";
    check.passed = true;
    std::size_t compared = 0;
    double prev = -kInf;
    for (auto i : idx) {
      if (curve.cutoff_lengths[i] <= nano->delta_x) continue;
      if (curve.g_max[i] < prev) check.passed = false;
      prev = curve.g_max[i];
      ++compared;
    }
    detail << compared << " points beyond delta_x";
  } else if (const auto* ent = std::get_if<EntanglementTest>(&platform)) {
    // ln g_max = const + x / 2 with x = R / l_c.
    check.property = "d ln(g_max) / d(R/l_c) = 1/2 for R >= l_c";
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (auto i : idx) {
      const double x = ent->r / curve.cutoff_lengths[i];
      if (x < 1.0 || !std::isfinite(curve.g_max[i])) continue;
      const double y = std::log(curve.g_max[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    if (n >= 2) {
      const double dn = static_cast<double>(n);
      const double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
      check.passed = std::abs(slope - 0.5) <= 1e-6;
      detail.precision(17);
      detail << "fitted slope " << slope << " over " << n << " points";
    } else {
      detail << "fewer than 2 finite points with R >= l_c";
    }
  } else {
    check.property = "g_max nonincreasing in l_c";
    check.passed = true;
    double prev = kInf;
    for (auto i : idx) {
      if (curve.g_max[i] > prev) check.passed = false;
      prev = curve.g_max[i];
    }
    detail << curve.g_max.size() << " points";
  }
  check.detail = detail.str();
  return check;
}

}  // namespace

std::string_view platform_name(const PlatformParams& platform) {
  switch (platform.index()) {
    case 0:
      return "atom-interferometer";
    case 1:
      return "nanosphere";
    default:
      return "entanglement-test";
  }
}

CouplingBound bound_g_from_slope(const AtomInterferometer& p) {
  require_positive(p.mass, "mass");
  require_positive(p.T, "T");
  require(std::isfinite(p.kappa_max) && p.kappa_max >= 0.0, "kappa_max must be nonnegative");
  require(std::isfinite(p.geometry_factor), "geometry_factor must be finite");
  if (p.geometry_factor == 0.0) return unbounded("I_geom = 0: the phase does not depend on g");
  const double denom = mass_frequency(p.mass, p.convention) * p.T * std::abs(p.geometry_factor);
  return CouplingBound{std::sqrt(p.kappa_max / denom), true, ""};
}

CouplingBound bound_g_from_decoherence(const Nanosphere& p, double cutoff_length) {
  require_positive(p.mass, "mass");
  require_positive(p.gamma0, "gamma0");
  require(std::isfinite(p.gamma_max) && p.gamma_max >= 0.0, "gamma_max must be nonnegative");
  require(std::isfinite(p.delta_x) && p.delta_x >= 0.0, "delta_x must be nonnegative");
  const double f = decoherence_form_factor(p.delta_x, cutoff_length);
  if (f == 0.0) return unbounded("f(delta_x) = 0: no decoherence constraint");
  return CouplingBound{std::sqrt(p.gamma_max / (p.gamma0 * (p.mass * p.mass) * f)), true, ""};
}

CouplingBound bound_g_from_entanglement(const EntanglementTest& p, double cutoff_length) {
  require_positive(p.m1, "m1");
  require_positive(p.m2, "m2");
  require_positive(p.r, "R");
  require(std::isfinite(p.energy_sensitivity) && p.energy_sensitivity >= 0.0,
          "energy_sensitivity must be nonnegative");
  const double k = yukawa_kernel(p.r, cutoff_length);
  if (k == 0.0) return unbounded("K(R) underflows: the test is blind at this cutoff");
  return CouplingBound{std::sqrt(p.energy_sensitivity / (p.m1 * p.m2 * k)), true, ""};
}

ExclusionResult exclusion_grid(std::span<const PlatformParams> platforms,
                               std::span<const double> cutoff_lengths, unsigned threads) {
  require(!platforms.empty(), "exclusion grid needs at least one platform");
  require(!cutoff_lengths.empty(), "exclusion grid needs at least one cutoff length");
  for (double lc : cutoff_lengths) require_positive(lc, "cutoff_length");
  ExclusionResult out;
  const std::size_t n_lc = cutoff_lengths.size();
  for (const auto& platform : platforms) {
    ExclusionCurve curve;
    curve.platform = std::string(platform_name(platform));
    curve.cutoff_lengths.assign(cutoff_lengths.begin(), cutoff_lengths.end());
    curve.g_max.resize(n_lc);
    out.curves.push_back(std::move(curve));
  }
  parallel_for(platforms.size() * n_lc, threads, [&](std::size_t k) {
    const std::size_t p = k / n_lc;
    const std::size_t i = k % n_lc;
    out.curves[p].g_max[i] = evaluate(platforms[p], cutoff_lengths[i]);
  });
  for (std::size_t p = 0; p < platforms.size(); ++p)
    out.checks.push_back(check_curve(platforms[p], out.curves[p]));
  return out;
}

double gravity_ratio(double coupling, double r, double cutoff_length) {
  require(std::isfinite(r) && r >= 0.0, "R must be nonnegative");
  require_positive(cutoff_length, "cutoff_length");
  return coupling * coupling * std::exp(-r / cutoff_length) /
         (4.0 * constants::kPi * constants::kNewtonG);
}

UnitSystem unit_system_from_string(std::string_view text) {
  if (text == "si") return UnitSystem::Si;
  if (text == "natural-gev") return UnitSystem::NaturalGeV;
  throw PreconditionError("unknown unit system '" + std::string(text) +
                          "' (expected si or natural-gev)");
}

Quantity quantity_from_string(std::string_view text) {
  if (text == "mass") return Quantity::Mass;
  if (text == "length") return Quantity::Length;
  if (text == "time") return Quantity::Time;
  if (text == "rate") return Quantity::Rate;
  throw PreconditionError("unknown quantity '" + std::string(text) +
                          "' (expected mass, length, time or rate)");
}

double unit_convert(double value, Quantity quantity, UnitSystem from, UnitSystem to) {
  if (from == to) return value;
  using namespace constants;
  const double gev = kElementaryCharge * 1e9;  // J
  double si_per_natural = 0.0;                 // SI value of one natural unit
  switch (quantity) {
    case Quantity::Mass:
      si_per_natural = gev / (kSpeedOfLight * kSpeedOfLight);
      break;
    case Quantity::Length:
      si_per_natural = kHbar * kSpeedOfLight / gev;
      break;
    case Quantity::Time:
      si_per_natural = kHbar / gev;
      break;
    case Quantity::Rate:
      si_per_natural = gev / kHbar;
      break;
  }
  return from == UnitSystem::NaturalGeV ? value * si_per_natural : value / si_per_natural;
}

}  // namespace qlg
