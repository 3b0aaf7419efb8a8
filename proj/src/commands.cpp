#include <algorithm>
#include <cmath>
#include <numeric>

#include "qlg/cli_io.hpp"
#include "qlg/coherence_current.hpp"
#include "qlg/constants.hpp"
#include "qlg/constraints.hpp"
#include "qlg/dynamics.hpp"
#include "qlg/errors.hpp"
#include "qlg/kernels.hpp"
#include "qlg/parallel.hpp"
#include "qlg/signals.hpp"

namespace qlg {

namespace {

using json = nlohmann::ordered_json;

KeySpec real_key(std::string name, std::string def, std::string help) {
  return KeySpec{std::move(name), ValueType::Real, std::move(def), {}, std::move(help)};
}
KeySpec int_key(std::string name, std::string def, std::string help) {
  return KeySpec{std::move(name), ValueType::Integer, std::move(def), {}, std::move(help)};
}
KeySpec text_key(std::string name, std::optional<std::string> def,
                 std::vector<std::string> choices, std::string help) {
  return KeySpec{std::move(name), ValueType::Text, std::move(def), std::move(choices),
                 std::move(help)};
}

const std::vector<std::string> kFilterKinds{"gaussian-position", "lorentzian-momentum"};
const std::vector<std::string> kConventions{"paper-si", "compton"};

std::vector<KeySpec> coherence_schema() {
  return {real_key("x_min", "-2", "left edge of the periodic domain"),
          real_key("x_max", "2", "right edge of the periodic domain"),
          int_key("n_points", "512", "grid points (power of two >= 16)"),
          real_key("packet_width", "0.05", "Gaussian packet width"),
          real_key("separation", "1", "distance between the two packet centers"),
          real_key("cutoff_length", "0.2", "coarse-graining length l_c"),
          text_key("filter", "gaussian-position", kFilterKinds, "smearing family"),
          text_key("state", "superposition", {"superposition", "mixture"},
                   "coherent superposition or classical mixture of the packets"),
          real_key("mass", "1.054571817e-34", "particle mass in kg"),
          real_key("boost_k0", "0", "plane-wave boost applied to each packet")};
}

std::vector<KeySpec> evolve_schema() {
  return {real_key("gamma", "1", "decoherence strength"),
          real_key("lambda_coupling", "1", "jump-operator coupling"),
          real_key("mass", "1", "mass in the caller's unit"),
          real_key("duration", "1", "final time"),
          real_key("dt", "0.001", "integrator step"),
          int_key("n_samples", "11", "sampled times including 0 and duration"),
          real_key("initial_coherence", "0.5", "rho_LR at t = 0 (|value| <= 0.5)")};
}

std::vector<KeySpec> kernels_schema() {
  return {real_key("cutoff_length", "1", "coarse-graining length l_c"),
          text_key("filter", "lorentzian-momentum", kFilterKinds, "momentum filter family"),
          real_key("r_min_over_cutoff", "1", "first separation in units of l_c"),
          real_key("r_max_over_cutoff", "10", "last separation in units of l_c"),
          int_key("n_points", "10", "separations sampled"),
          real_key("k_max_over_cutoff", "10", "gamma0 UV cutoff in units of 1/l_c"),
          int_key("n_nodes", "256", "gamma0 quadrature nodes"),
          real_key("regulator_epsilon", "1", "starting regulator length"),
          real_key("regulator_tolerance", "1e-7", "regulator extrapolation tolerance"),
          real_key("hbar", "1", "hbar in the kernel unit system"),
          real_key("c", "1", "mediator speed in the kernel unit system")};
}

std::vector<KeySpec> phase_schema() {
  return {real_key("mass", "1.4e-25", "atom mass in kg"),
          real_key("interrogation_time", "1", "pulse separation T in s"),
          real_key("geometry_factor", "1", "I_geom"),
          real_key("coupling", "1e-6", "coupling g"),
          text_key("convention", "paper-si", kConventions, "mass-frequency convention"),
          int_key("n_points", "11", "visibilities sampled on [0, 1]"),
          real_key("sigma_phi", "0.001", "single-shot phase uncertainty in rad"),
          real_key("delta_visibility", "0.7", "scanned visibility range"),
          int_key("n_settings", "10", "visibility settings in the scan")};
}

std::vector<KeySpec> decohere_schema() {
  return {real_key("gamma0", "1", "rate normalization"),
          real_key("coupling", "1", "coupling g"),
          real_key("cutoff_length", "1", "coarse-graining length l_c"),
          text_key("sweep", "mass", {"mass", "delta_x"}, "swept quantity"),
          real_key("mass", "1", "mass when sweeping delta_x"),
          real_key("delta_x", "10", "superposition size when sweeping mass"),
          real_key("sweep_min", "1", "first swept value"),
          real_key("sweep_max", "100", "last swept value"),
          int_key("n_points", "21", "swept values"),
          text_key("spacing", "log", {"log", "linear"}, "spacing of swept values")};
}

std::vector<KeySpec> entangle_schema() {
  return {text_key("family", "dephased", {"dephased", "werner", "classical"}, "state family"),
          int_key("n_points", "11", "family parameters sampled on [0, 1]"),
          real_key("coupling", "1", "coupling g"),
          real_key("m1", "1", "first mass"),
          real_key("m2", "1", "second mass"),
          real_key("r", "1", "separation R"),
          real_key("cutoff_length", "1", "coarse-graining length l_c")};
}

std::vector<KeySpec> constrain_schema() {
  return {text_key("convention", "paper-si", kConventions, "mass-frequency convention"),
          real_key("atom_mass", "1.4e-25", "interferometer atom mass in kg"),
          real_key("atom_T", "1", "pulse separation T in s"),
          real_key("atom_kappa_max", "0.003", "slope sensitivity in rad"),
          real_key("atom_geometry_factor", "1", "I_geom"),
          real_key("atom_arm_separation", "1", "maximum arm separation in m"),
          real_key("nano_mass", "1e-17", "nanosphere mass in kg"),
          real_key("nano_delta_x", "1e-7", "superposition size in m"),
          real_key("nano_gamma_max", "1", "residual decoherence sensitivity in 1/s"),
          real_key("nano_gamma0", "1", "rate normalization"),
          real_key("ent_m1", "1e-14", "first mass in kg"),
          real_key("ent_m2", "1e-14", "second mass in kg"),
          real_key("ent_r", "0.0001", "separation in m"),
          real_key("ent_energy_sensitivity", "1e-30", "energy sensitivity in J"),
          real_key("cutoff_length", "0.0001", "l_c for the nanosphere and entanglement bounds"),
          real_key("quoted_g", "3e-7", "published interferometer bound for comparison"),
          real_key("envelope_factor", "30", "accepted ratio between computed and quoted bound"),
          real_key("gravity_r", "0", "separation for the gravity comparison")};
}

std::vector<KeySpec> figures_schema() {
  return {text_key(
              "figure", std::nullopt,
              {"fig1", "kernel", "fig2", "fig3a", "fig3b", "fig4", "fig5"}, "figure to tabulate"),
          int_key("n_points", "21", "points per curve"),
          real_key("lc_min", "1e-8", "smallest cutoff length on the exclusion grid"),
          real_key("lc_max", "10", "largest cutoff length on the exclusion grid"),
          int_key("lc_points_per_decade", "4", "exclusion grid density")};
}

std::vector<double> spaced(double lo, double hi, long long n, bool log) {
  require(n >= 2, "sweeps need at least 2 points");
  require(hi > lo, "sweep_max must exceed sweep_min");
  if (log) require(lo > 0.0, "log spacing needs a positive sweep_min");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    out[static_cast<std::size_t>(i)] =
        log ? std::pow(10.0, std::log10(lo) + t * (std::log10(hi) - std::log10(lo)))
            : lo + t * (hi - lo);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::size_t as_count(long long n, long long minimum, const char* name) {
  require(n >= minimum, std::string(name) + " must be at least " + std::to_string(minimum));
  return static_cast<std::size_t>(n);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::nan("");
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

json config_json(const RunConfig& config) {
  json out = json::object();
  for (const auto& [k, v] : config.parameters) out[k] = v.text;
  return out;
}

Table run_coherence(const RunConfig& cfg) {
  const Grid1D grid(cfg.real("x_min"), cfg.real("x_max"),
                    as_count(cfg.integer("n_points"), 16, "n_points"));
  const FilterSpec filter{cfg.real("cutoff_length"), filter_kind_from_string(cfg.text("filter"))};
  check_resolvable(filter, grid);
  const double mid = 0.5 * (grid.x_min() + grid.x_max());
  const double half = 0.5 * cfg.real("separation");
  const GaussianPacketSpec left{mid - half, cfg.real("packet_width")};
  const GaussianPacketSpec right{mid + half, cfg.real("packet_width")};
  const double k0 = cfg.real("boost_k0");
  const double mass = cfg.real("mass");

  const double amp = 1.0 / std::sqrt(2.0);
  const auto sup_psi = boost(superposition_wavefunction({amp, amp, left, right}, grid), k0);
  const auto sup = pure_density_kernel(sup_psi);
  const std::vector<WavefunctionGrid> packets{boost(gaussian_packet(left, grid), k0),
                                              boost(gaussian_packet(right, grid), k0)};
  const std::vector<double> weights{0.5, 0.5};
  const auto mix = mixture_density_kernel(weights, packets);
  const auto& rho = cfg.text("state") == "superposition" ? sup : mix;

  const auto n = density(rho);
  const auto ncoh = coherence_density(rho, filter);
  const auto j = coherence_current_density(rho, filter, mass);
  Table t;
  t.columns = {"x", "density", "n_coh", "n_coh_imag", "j_coh"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    t.rows.push_back({grid.x(i), n.values(k).real(), ncoh.values(k).real(),
                      ncoh.values(k).imag(), j.values(k).real()});
  }
  t.summary["peak_n_coh_over_peak_density"] = ncoh.max_abs_real() / n.max_abs_real();
  t.summary["classical_suppression"] = classical_suppression(mix, sup, filter);
  return t;
}

Table run_evolve(const RunConfig& cfg, unsigned threads) {
  const TwoLevelDecoherenceSpec spec{cfg.real("gamma"), cfg.real("lambda_coupling"),
                                     cfg.real("mass")};
  const double c0 = cfg.real("initial_coherence");
  require(std::abs(c0) <= 0.5, "initial_coherence must satisfy |value| <= 0.5");
  const auto times = spaced(0.0, cfg.real("duration"),
                            static_cast<long long>(as_count(cfg.integer("n_samples"), 2,
                                                            "n_samples")),
                            false);
  const auto model = two_level_model(spec);
  Eigen::MatrixXcd rho0(2, 2);
  rho0 << 0.5, c0, c0, 0.5;
  const double dt = cfg.real("dt");
  std::vector<LindbladResult> results(times.size());
  parallel_for(times.size(), threads,
               [&](std::size_t i) { results[i] = lindblad_evolve(rho0, model, times[i], dt); });
  Table t;
  t.columns = {"t", "rho_lr", "rho_lr_exact", "relative_error", "trace_drift"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto numeric = results[i].state(0, 1);
    const auto exact = two_level_coherence_decay(c0, spec, times[i]);
    const double err = exact == 0.0 ? std::abs(numeric) : std::abs(numeric - exact) / std::abs(exact);
    t.rows.push_back({times[i], numeric.real(), exact.real(), err, results[i].trace_drift});
  }
  t.summary["decoherence_rate"] = two_level_rate(spec);
  return t;
}

QuadratureSpec quadrature_from(const RunConfig& cfg) {
  QuadratureSpec q;
  q.k_max_over_cutoff = cfg.real("k_max_over_cutoff");
  const auto nodes = cfg.integer("n_nodes");
  require(nodes >= 64 && nodes <= 1'000'000, "n_nodes must lie in [64, 1000000]");
  q.n_nodes = static_cast<int>(nodes);
  q.regulator_epsilon = cfg.real("regulator_epsilon");
  q.regulator_tolerance = cfg.real("regulator_tolerance");
  check_valid(q);
  return q;
}

Table run_kernels(const RunConfig& cfg, unsigned threads) {
  const FilterSpec filter{cfg.real("cutoff_length"), filter_kind_from_string(cfg.text("filter"))};
  const auto quad = quadrature_from(cfg);
  const double lc = filter.cutoff_length;
  const auto ratios = spaced(cfg.real("r_min_over_cutoff"), cfg.real("r_max_over_cutoff"),
                             cfg.integer("n_points"), false);
  require(ratios.front() > 0.0, "r_min_over_cutoff must be positive");
  const double c = cfg.real("c");
  std::vector<EntanglementKernelResult> ek(ratios.size());
  parallel_for(ratios.size(), threads, [&](std::size_t i) {
    ek[i] = entanglement_kernel_momentum(ratios[i] * lc, filter, quad, c);
  });
  Table t;
  t.columns = {"r",           "form_factor",       "yukawa",   "entanglement_kernel",
               "yukawa_norm", "entanglement_norm", "halvings"};
  const double y0 = yukawa_kernel(ratios.front() * lc, lc);
  const double e0 = ek.front().value;
  double max_dev = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double r = ratios[i] * lc;
    const double yn = yukawa_kernel(r, lc) / y0;
    const double en = ek[i].value / e0;
    max_dev = std::max(max_dev, std::abs(en - yn) / std::abs(yn));
    t.rows.push_back({r, decoherence_form_factor(r, lc), yukawa_kernel(r, lc), ek[i].value, yn, en,
                      static_cast<long long>(ek[i].halvings)});
  }
  const auto g0 = gamma0_quadrature(filter, quad, cfg.real("hbar"), c);
  t.summary["gamma0"] = g0.value;
  if (g0.analytic_checked) {
    t.summary["gamma0_closed_form"] = g0.analytic;
    t.summary["gamma0_relative_difference"] = std::abs(g0.value - g0.analytic) / std::abs(g0.analytic);
  } else {
    t.summary["gamma0_closed_form"] = nullptr;
    t.summary["gamma0_notice"] = "closed-form check skipped: filter is not Lorentzian";
  }
  t.summary["max_normalized_deviation_from_yukawa"] = max_dev;
  return t;
}

InterferometerSpec interferometer_from(const RunConfig& cfg) {
  InterferometerSpec s;
  s.mass = cfg.real("mass");
  s.interrogation_time = cfg.real("interrogation_time");
  s.geometry_factor = cfg.real("geometry_factor");
  s.coupling = cfg.real("coupling");
  s.convention = unit_convention_from_string(cfg.text("convention"));
  return s;
}

Table run_phase(const RunConfig& cfg) {
  auto spec = interferometer_from(cfg);
  const auto vs = spaced(0.0, 1.0, cfg.integer("n_points"), false);
  Table t;
  t.columns = {"visibility", "phase"};
  std::vector<std::string> warnings;
  for (double v : vs) {
    spec.visibility = v;
    const auto r = qlg_phase(spec);
    warnings = r.warnings;
    t.rows.push_back({v, r.value});
  }
  auto si = spec;
  si.convention = UnitConvention::PaperSi;
  auto compton = spec;
  compton.convention = UnitConvention::Compton;
  t.summary["convention"] = std::string(to_string(spec.convention));
  t.summary["slope"] = visibility_slope(spec);
  t.summary["slope_paper_si"] = visibility_slope(si);
  t.summary["slope_compton"] = visibility_slope(compton);
  const auto n_settings = cfg.integer("n_settings");
  require(n_settings >= 2 && n_settings <= 1'000'000'000, "n_settings must be at least 2");
  t.summary["slope_uncertainty"] = slope_uncertainty(
      cfg.real("sigma_phi"), cfg.real("delta_visibility"), static_cast<int>(n_settings));
  t.summary["warnings"] = warnings;
  return t;
}

Table run_decohere(const RunConfig& cfg) {
  const bool by_mass = cfg.text("sweep") == "mass";
  const auto xs = spaced(cfg.real("sweep_min"), cfg.real("sweep_max"), cfg.integer("n_points"),
                         cfg.text("spacing") == "log");
  Table t;
  t.columns = {by_mass ? "mass" : "delta_x", "rate"};
  std::vector<double> rates;
  for (double x : xs) {
    const double mass = by_mass ? x : cfg.real("mass");
    const double dx = by_mass ? cfg.real("delta_x") : x;
    rates.push_back(decoherence_rate(cfg.real("coupling"), mass, dx, cfg.real("gamma0"),
                                     cfg.real("cutoff_length")));
    t.rows.push_back({x, rates.back()});
  }
  if (by_mass) t.summary["loglog_slope"] = loglog_slope(xs, rates);
  return t;
}

Table run_entangle(const RunConfig& cfg) {
  const auto family = state_family_from_string(cfg.text("family"));
  const auto n = cfg.integer("n_points");
  require(n >= 2 && n <= 1'000'000, "n_points must lie in [2, 1000000]");
  const auto curve = signal_vs_concurrence_curve(family, static_cast<int>(n));
  const double g = cfg.real("coupling");
  const double scale = entanglement_signal(bell_state(+1), g, cfg.real("m1"), cfg.real("m2"),
                                           cfg.real("r"), cfg.real("cutoff_length"))
                           .energy;
  Table t;
  t.columns = {"p", "concurrence", "signal", "energy"};
  for (const auto& pt : curve) t.rows.push_back({pt.parameter, pt.concurrence, pt.signal,
                                                 scale * pt.signal});
  return t;
}

std::vector<PlatformParams> platforms_from(const RunConfig& cfg) {
  AtomInterferometer atom;
  atom.mass = cfg.real("atom_mass");
  atom.T = cfg.real("atom_T");
  atom.kappa_max = cfg.real("atom_kappa_max");
  atom.geometry_factor = cfg.real("atom_geometry_factor");
  atom.convention = unit_convention_from_string(cfg.text("convention"));
  atom.arm_separation = cfg.real("atom_arm_separation");
  const Nanosphere nano{cfg.real("nano_mass"), cfg.real("nano_delta_x"),
                        cfg.real("nano_gamma_max"), cfg.real("nano_gamma0")};
  const EntanglementTest ent{cfg.real("ent_m1"), cfg.real("ent_m2"), cfg.real("ent_r"),
                             cfg.real("ent_energy_sensitivity")};
  return {atom, nano, ent};
}

Table run_constrain(const RunConfig& cfg) {
  const auto platforms = platforms_from(cfg);
  const double lc = cfg.real("cutoff_length");
  const auto& atom = std::get<AtomInterferometer>(platforms[0]);
  const std::vector<CouplingBound> bounds{
      bound_g_from_slope(atom),
      bound_g_from_decoherence(std::get<Nanosphere>(platforms[1]), lc),
      bound_g_from_entanglement(std::get<EntanglementTest>(platforms[2]), lc)};
  Table t;
  t.columns = {"platform", "g_max", "bounded", "note"};
  for (std::size_t i = 0; i < bounds.size(); ++i)
    t.rows.push_back({std::string(platform_name(platforms[i])), bounds[i].g_max,
                      static_cast<long long>(bounds[i].bounded), bounds[i].note});

  const double quoted = cfg.real("quoted_g");
  const double envelope = cfg.real("envelope_factor");
  const double computed = bounds[0].g_max;
  const double ratio = computed / quoted;
  json report;
  report["computed_g_max"] = computed;
  report["quoted_g_max"] = quoted;
  report["ratio"] = ratio;
  report["envelope_factor"] = envelope;
  report["within_envelope"] = ratio <= envelope && ratio >= 1.0 / envelope;
  report["computed_g2_igeom"] = computed * computed * std::abs(atom.geometry_factor);
  report["quoted_g2_igeom"] = 1e-13;
  auto compton = atom;
  compton.convention = UnitConvention::Compton;
  report["computed_g_max_compton"] = bound_g_from_slope(compton).g_max;
  t.summary["interferometer_discrepancy"] = report;
  t.summary["gravity_ratio"] = gravity_ratio(quoted, cfg.real("gravity_r"), lc);
  t.summary["gravity_ratio_note"] =
      "g^2 exp(-R/l_c) / (4 pi G) with G in SI; g treated as dimensionless";
  t.summary["atom_mass_gev"] =
      unit_convert(atom.mass, Quantity::Mass, UnitSystem::Si, UnitSystem::NaturalGeV);
  t.summary["entanglement_bound_note"] =
      "inversion of E = g^2 m1 m2 K(R) <sx sx> at unit signal";
  return t;
}

Table figure_fig2(long long n, unsigned) {
  Table t;
  t.columns = {"g", "visibility", "phase"};
  json params = json::array();
  for (const char* g : {"1e-6", "2e-6", "3e-6"}) {
    const std::vector<std::string> set{std::string("coupling=") + g,
                                       "n_points=" + std::to_string(n)};
    const auto sub = parse_config(Command::Phase, "", set);
    const auto table = run_phase(sub);
    for (const auto& row : table.rows) t.rows.push_back({sub.real("coupling"), row[0], row[1]});
    params.push_back(config_json(sub));
  }
  t.summary["figure_parameters"] = params;
  return t;
}

Table figure_fig3(bool by_mass, long long n) {
  std::vector<std::string> set{"n_points=" + std::to_string(n)};
  if (!by_mass) {
    set.insert(set.end(), {"sweep=delta_x", "sweep_min=0", "sweep_max=10", "spacing=linear"});
  }
  const auto sub = parse_config(Command::Decohere, "", set);
  auto t = run_decohere(sub);
  if (by_mass) {
    const double slope = t.summary["loglog_slope"].get<double>();
    t.columns.push_back("fitted_slope");
    for (auto& row : t.rows) row.push_back(slope);
  }
  t.summary["figure_parameters"] = config_json(sub);
  return t;
}

Table figure_fig4(long long n) {
  Table t;
  t.columns = {"family", "p", "concurrence", "signal"};
  json params = json::array();
  for (const char* fam : {"dephased", "werner", "classical"}) {
    const std::vector<std::string> set{std::string("family=") + fam,
                                       "n_points=" + std::to_string(n)};
    const auto sub = parse_config(Command::Entangle, "", set);
    const auto table = run_entangle(sub);
    for (const auto& row : table.rows)
      t.rows.push_back({std::string(fam), row[0], row[1], row[2]});
    params.push_back(config_json(sub));
  }
  t.summary["figure_parameters"] = params;
  return t;
}

Table figure_fig5(const RunConfig& cfg, unsigned threads) {
  const double lo = cfg.real("lc_min");
  const double hi = cfg.real("lc_max");
  require(lo > 0.0 && hi > lo, "exclusion grid needs 0 < lc_min < lc_max");
  const auto per_decade = cfg.integer("lc_points_per_decade");
  require(per_decade >= 1 && per_decade <= 1000, "lc_points_per_decade must lie in [1, 1000]");
  const auto n = static_cast<long long>(std::ceil(std::log10(hi / lo) *
                                                  static_cast<double>(per_decade))) + 1;
  const auto grid = spaced(lo, hi, std::max(2LL, n), true);
  const auto sub = parse_config(Command::Constrain, "", {});
  const auto platforms = platforms_from(sub);
  const auto result = exclusion_grid(platforms, grid, threads);
  Table t;
  t.columns = {"platform", "cutoff_length", "g_max"};
  for (const auto& curve : result.curves)
    for (std::size_t i = 0; i < curve.cutoff_lengths.size(); ++i)
      t.rows.push_back({curve.platform, curve.cutoff_lengths[i], curve.g_max[i]});
  json checks = json::array();
  for (const auto& c : result.checks) {
    json j;
    j["platform"] = c.platform;
    j["property"] = c.property;
    j["passed"] = c.passed;
    j["detail"] = c.detail;
    checks.push_back(j);
  }
  t.summary["monotone_checks"] = checks;
  t.summary["figure_parameters"] = config_json(sub);
  return t;
}

Table run_figures(const RunConfig& cfg, unsigned threads) {
  const auto& fig = cfg.text("figure");
  const auto n = cfg.integer("n_points");
  require(n >= 2 && n <= 100'000, "n_points must lie in [2, 100000]");
  if (fig == "fig1" || fig == "kernel") {
    const auto sub = parse_config(Command::Kernels, "", {});
    auto t = run_kernels(sub, threads);
    t.summary["figure_parameters"] = config_json(sub);
    return t;
  }
  if (fig == "fig2") return figure_fig2(n, threads);
  if (fig == "fig3a") return figure_fig3(false, n);
  if (fig == "fig3b") return figure_fig3(true, n);
  if (fig == "fig4") return figure_fig4(n);
  return figure_fig5(cfg, threads);
}

}  // namespace

const std::vector<KeySpec>& command_schema(Command command) {
  static const std::vector<KeySpec> schemas[] = {
      coherence_schema(), evolve_schema(),   kernels_schema(),   phase_schema(),
      decohere_schema(),  entangle_schema(), constrain_schema(), figures_schema()};
  return schemas[static_cast<int>(command)];
}

Table run_command(const RunConfig& config, unsigned threads) {
  switch (config.command) {
    case Command::Coherence:
      return run_coherence(config);
    case Command::Evolve:
      return run_evolve(config, threads);
    case Command::Kernels:
      return run_kernels(config, threads);
    case Command::Phase:
      return run_phase(config);
    case Command::Decohere:
      return run_decohere(config);
    case Command::Entangle:
      return run_entangle(config);
    case Command::Constrain:
      return run_constrain(config);
    case Command::Figures:
      return run_figures(config, threads);
  }
  throw ConfigError("unhandled command");
}

nlohmann::ordered_json build_manifest(const RunConfig& config, const Table& table) {
  json m;
  m["command"] = std::string(to_string(config.command));
  m["format"] = std::string(to_string(config.format));
  m["config"] = config_json(config);
  json prov = json::object();
  for (const auto& [k, v] : config.parameters) prov[k] = v.source;
  m["provenance"] = prov;
  json c;
  c["hbar"] = constants::kHbar;
  c["speed_of_light"] = constants::kSpeedOfLight;
  c["elementary_charge"] = constants::kElementaryCharge;
  c["newton_g"] = constants::kNewtonG;
  m["constants"] = c;
  json conv;
  conv["geometry_factor_calibration"] = geometry_calibration();
  conv["geometry_factor_reference"] = "triangular d_max = 1 m, T_tot = 2 s, l_c = 1 m -> 1";
  conv["geometry_factor_regulator"] = "l_c / 100";
  conv["form_factor"] = "1 - sin(u)/u";
  conv["momentum_filter"] = "lorentzian 1/(1 + k^2 l_c^2); gaussian exp(-k^2 l_c^2 / 4)";
  conv["coherence_current"] = "(hbar / 2 m i)(d_x - d_x') rho_off, smeared";
  conv["mass_frequency"] = "paper-si: m/hbar; compton: m c^2/hbar";
  m["conventions"] = conv;
  m["summary"] = table.summary;
  return m;
}

}  // namespace qlg
