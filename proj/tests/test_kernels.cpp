#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qlg/errors.hpp"
#include "qlg/kernels.hpp"

using namespace qlg;

namespace {

const FilterSpec kLorentz{1.0, FilterKind::LorentzianMomentum};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("form factor values and limits") {
  CHECK(decoherence_form_factor(0.0, 1.0) == 0.0);
  CHECK(decoherence_form_factor(2.0, 2.0) == doctest::Approx(1 - std::sin(1.0)).epsilon(1e-14));
  CHECK(decoherence_form_factor(1.0, 1.0) == doctest::Approx(0.158529).epsilon(1e-6));
  CHECK(std::abs(decoherence_form_factor(100.0, 1.0) - 1.0) <= 0.01);
  CHECK_THROWS_AS(decoherence_form_factor(1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(decoherence_form_factor(-1.0, 1.0), PreconditionError);
}

TEST_CASE("form factor bounds and the series branch join") {
  for (double u = 1e-3; u < 200; u *= 1.07) {
    const double f = decoherence_form_factor(u, 1.0);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1.0 / u);
  }
  const double below = decoherence_form_factor(0.1 - 1e-12, 1.0);
  const double above = decoherence_form_factor(0.1 + 1e-12, 1.0);
  CHECK(std::abs(below - above) <= 1e-13);
}

TEST_CASE("quadratic onset coefficient is 1/6") {
  std::vector<double> u2, f;
  for (double u = 1e-3; u <= 1e-2 * (1 + 1e-12); u += 5e-4) {
    u2.push_back(u * u);
    f.push_back(decoherence_form_factor(u, 1.0));
  }
  CHECK(std::abs(oracle::linear_slope(u2, f) - 1.0 / 6.0) <= 1e-3);
  for (double u : {1e-3, 5e-3, 1e-2}) {
    CHECK(std::abs(decoherence_form_factor(u, 1.0) / (u * u) - 1.0 / 6.0) <= 1e-3);
  }
}

TEST_CASE("Yukawa kernel") {
  constexpr double kPi = 3.14159265358979323846;
  CHECK(yukawa_kernel(1.0, 1.0) == doctest::Approx(std::exp(-1.0) / (4 * kPi)));
  CHECK(yukawa_kernel(2.0, 2.0) * 2.0 == doctest::Approx(0.0292768).epsilon(1e-5));
  CHECK(yukawa_kernel(10.0, 1.0) / yukawa_kernel(5.0, 1.0) ==
        doctest::Approx(0.5 * std::exp(-5.0)).epsilon(1e-13));
  CHECK(0.5 * std::exp(-5.0) == doctest::Approx(3.369e-3).epsilon(1e-3));
  CHECK(yukawa_kernel(0.3, 1e12) == doctest::Approx(1 / (4 * kPi * 0.3)).epsilon(1e-11));
  CHECK_THROWS_AS(yukawa_kernel(0.0, 1.0), PreconditionError);
  double prev_log = std::log(yukawa_kernel(0.05, 1.0));
  double prev_slope = -1e300;
  for (double r = 0.1; r < 20; r += 0.05) {
    const double lg = std::log(yukawa_kernel(r, 1.0));
    const double slope = (lg - prev_log) / 0.05;
    CHECK(lg < prev_log);
    CHECK(slope > prev_slope);
    prev_log = lg;
    prev_slope = slope;
  }
}

TEST_CASE("gamma0 matches the antiderivative oracle") {
  constexpr double kPi = 3.14159265358979323846;
  for (double lc : {1.0, 0.37}) {
    for (double ratio : {10.0, 100.0}) {
      QuadratureSpec q;
      q.k_max_over_cutoff = ratio;
      const FilterSpec f{lc, FilterKind::LorentzianMomentum};
      const auto r = gamma0_quadrature(f, q, 1.0, 1.0);
      const double expected =
          oracle::gamma0_k_integral(1 / lc, ratio / lc) / (2 * kPi * kPi) / 2.0;
      CHECK(std::abs(r.value - expected) / expected <= 1e-8);
      CHECK(r.analytic_checked);
      CHECK(std::abs(r.analytic - expected) / expected <= 1e-12);
    }
  }
}

TEST_CASE("gamma0 example, prefactors and growth") {
  constexpr double kPi = 3.14159265358979323846;
  QuadratureSpec q;
  q.k_max_over_cutoff = 10.0;
  const auto r = gamma0_quadrature(kLorentz, q, 1.0, 1.0);
  const double printed =
      (100 - 2 * std::log(101.0) - 1 / 101.0 + 1) / (8 * kPi * kPi);
  CHECK(r.value == doctest::Approx(printed).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(1.162).epsilon(1e-3));
  CHECK(gamma0_quadrature(kLorentz, q, 2.0, 1.0).value == doctest::Approx(r.value / 4));
  CHECK(gamma0_quadrature(kLorentz, q, 1.0, 3.0).value == doctest::Approx(r.value / 3));
  // the logarithmic correction makes the doubling ratio approach 4 from above
  double prev_ratio = 1e300;
  for (double k : {100.0, 1000.0, 10000.0}) {
    QuadratureSpec a, b;
    a.k_max_over_cutoff = k;
    b.k_max_over_cutoff = 2 * k;
    const double ratio = gamma0_quadrature(kLorentz, b, 1, 1).value /
                         gamma0_quadrature(kLorentz, a, 1, 1).value;
    CHECK(ratio < prev_ratio);
    CHECK(ratio > 4.0 - 1e-12);
    prev_ratio = ratio;
  }
  CHECK(prev_ratio == doctest::Approx(4.0).epsilon(1e-5));
}

TEST_CASE("gamma0 with the Gaussian filter skips the closed-form check") {
  QuadratureSpec q;
  const auto r = gamma0_quadrature(FilterSpec{1.0, FilterKind::GaussianPosition}, q, 1, 1);
  CHECK_FALSE(r.analytic_checked);
  CHECK(std::isnan(r.analytic));
  CHECK(r.value > 0.0);
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec q;
  q.k_max_over_cutoff = 1.0;
  CHECK_THROWS_AS(check_valid(q), PreconditionError);
  q = {};
  q.n_nodes = 32;
  CHECK_THROWS_AS(check_valid(q), PreconditionError);
  q = {};
  q.regulator_epsilon = 0.0;
  CHECK_THROWS_AS(check_valid(q), PreconditionError);
}

TEST_CASE("entanglement kernel matches the partial-fraction closed form") {
  QuadratureSpec q;
  for (double lc : {1.0, 0.5}) {
    const FilterSpec f{lc, FilterKind::LorentzianMomentum};
    for (double x : {0.3, 1.0, 1.5, 3.0, 5.0, 10.0}) {
      const auto r = entanglement_kernel_momentum(x * lc, f, q, 1.0);
      const double expected = oracle::entanglement_closed_form(x * lc, lc, 1.0);
      CHECK(std::abs(r.value - expected) / std::abs(expected) <= 1e-4);
    }
  }
  const double c = 3.0;
  const auto r = entanglement_kernel_momentum(1.0, kLorentz, q, c);
  CHECK(std::abs(r.value - oracle::entanglement_closed_form(1.0, 1.0, c)) /
            oracle::entanglement_closed_form(1.0, 1.0, c) <=
        1e-4);
}

TEST_CASE("entanglement kernel regulator halving is stable") {
  QuadratureSpec q;
  const auto r = entanglement_kernel_momentum(1.0, kLorentz, q, 1.0);
  CHECK(r.last_relative_change < 0.01);
  CHECK(r.epsilons.size() == r.raw_estimates.size());
  CHECK(r.halvings + 1 == static_cast<int>(r.epsilons.size()));
  for (std::size_t i = 1; i < r.epsilons.size(); ++i)
    CHECK(r.epsilons[i] == 0.5 * r.epsilons[i - 1]);
  // the raw regulated values approach the limit
  const double limit = r.value;
  const std::size_t last = r.raw_estimates.size() - 1;
  CHECK(std::abs(r.raw_estimates[last] - limit) < std::abs(r.raw_estimates[0] - limit));
}

TEST_CASE("entanglement kernel is even in R and reports non-convergence") {
  QuadratureSpec q;
  CHECK(entanglement_kernel_momentum(-2.5, kLorentz, q, 1.0).value ==
        entanglement_kernel_momentum(2.5, kLorentz, q, 1.0).value);
  CHECK_THROWS_AS(entanglement_kernel_momentum(0.0, kLorentz, q, 1.0), PreconditionError);
  q.regulator_tolerance = 1e-300;
  CHECK_THROWS_AS(entanglement_kernel_momentum(1.0, kLorentz, q, 1.0), ConvergenceError);
}

TEST_CASE("entanglement kernel profile versus the Yukawa shape") {
  QuadratureSpec q;
  const double y0 = yukawa_kernel(1.0, 1.0);
  const double e0 = entanglement_kernel_momentum(1.0, kLorentz, q, 1.0).value;
  double worst = 0.0;
  for (double r = 1.0; r <= 10.0; r += 1.0) {
    const double yn = yukawa_kernel(r, 1.0) / y0;
    const double en = entanglement_kernel_momentum(r, kLorentz, q, 1.0).value / e0;
    CHECK(std::isfinite(en));
    worst = std::max(worst, std::abs(en - yn) / yn);
  }
  MESSAGE("max relative deviation of the normalized profile from Yukawa: " << worst);
}

}  // TEST_SUITE
