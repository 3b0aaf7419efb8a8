#include <doctest.h>

#include <cmath>
#include <random>

#include "qlg/coarse_grain.hpp"
#include "qlg/errors.hpp"

using namespace qlg;

namespace {

const Grid1D kGrid(-2.0, 2.0, 512);

DensityKernel random_psd_kernel(const Grid1D& grid, std::mt19937_64& rng, int rank) {
  std::normal_distribution<double> nd;
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXcd a(n, rank);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int k = 0; k < rank; ++k) a(i, k) = cplx(nd(rng), nd(rng));
  Eigen::MatrixXcd m = a * a.adjoint();
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = cplx(m(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) m(j, i) = std::conj(m(i, j));
  }
  m /= m.trace().real() * grid.spacing();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) m(j, i) = std::conj(m(i, j));
  return DensityKernel(grid, m);
}

}  // namespace

TEST_SUITE("coarse-grain") {

TEST_CASE("filter kind names round trip") {
  for (auto k : {FilterKind::GaussianPosition, FilterKind::LorentzianMomentum})
    CHECK(filter_kind_from_string(to_string(k)) == k);
  CHECK_THROWS(filter_kind_from_string("boxcar"));
}

TEST_CASE("resolvability") {
  CHECK_THROWS_AS(check_resolvable(FilterSpec{0.001}, kGrid), PreconditionError);
  CHECK_THROWS_AS(check_resolvable(FilterSpec{5.0}, kGrid), PreconditionError);
  CHECK_NOTHROW(check_resolvable(FilterSpec{0.2}, kGrid));
}

TEST_CASE("smearing kernels are normalized") {
  for (auto kind : {FilterKind::GaussianPosition, FilterKind::LorentzianMomentum}) {
    const FilterSpec f{0.3, kind};
    double sum = 0.0;
    const double h = 1e-3;
    for (int i = -20000; i <= 20000; ++i) sum += smearing_kernel(i * h, f) * h;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("channel suppresses the cross block by exp(-d^2 / 2 l_c^2)") {
  const FilterSpec f{0.2};
  CHECK(channel_multiplier(1.0, f) == doctest::Approx(std::exp(-12.5)));
  CHECK(std::exp(-12.5) == doctest::Approx(3.7e-6).epsilon(0.01));
  const double a = 1 / std::sqrt(2.0);
  const auto rho = pure_density_kernel(
      superposition_wavefunction({a, a, {-0.5, 0.05}, {0.5, 0.05}}, kGrid));
  const auto out = apply_channel(rho, f);
  CHECK(std::abs(out.values()(192, 320) / rho.values()(192, 320) - std::exp(-12.5)) <= 1e-15);
  for (Eigen::Index i = 0; i < 512; ++i) CHECK(out.values()(i, i) == rho.values()(i, i));
}

TEST_CASE("channel change on a diagonal-at-resolution mixture follows (l / l_c)^2") {
  // For a packet of width l, |rho|^2 makes the separation normal with variance 2 l^2, so
  // the relative Frobenius change is sqrt(<delta^4>) / (2 l_c^2) = sqrt(12) l^2 / (2 l_c^2).
  const Grid1D fine(-2.0, 2.0, 2048);
  const double l = 0.008;
  const double lc = 1.0;
  const auto a = gaussian_packet({-0.5, l}, fine);
  const auto b = gaussian_packet({0.5, l}, fine);
  const std::vector<WavefunctionGrid> both{a, b};
  const std::vector<double> half{0.5, 0.5};
  const auto mix = mixture_density_kernel(half, both);
  const auto out = apply_channel(mix, FilterSpec{lc});
  const double rel = (out.values() - mix.values()).norm() / mix.values().norm();
  const double expected = std::sqrt(12.0) * l * l / (2.0 * lc * lc);
  CHECK(rel == doctest::Approx(expected).epsilon(0.02));
  CHECK(rel <= 1.2e-4);
}

TEST_CASE("channel on random PSD kernels: Hermitian, diagonal, positivity") {
  std::mt19937_64 rng(11);
  const Grid1D g(-1.0, 1.0, 64);
  for (int draw = 0; draw < 100; ++draw) {
    const auto rho = random_psd_kernel(g, rng, 1 + draw % 5);
    const FilterSpec f{0.05 + 0.01 * (draw % 20),
                       draw % 2 ? FilterKind::GaussianPosition : FilterKind::LorentzianMomentum};
    const auto out = apply_channel(rho, f);  // constructor checks exact Hermiticity
    CHECK(out.values().diagonal() == rho.values().diagonal());
    CHECK(out.min_eigenvalue() >= -1e-10);
  }
}

TEST_CASE("channel is linear and composes as the squared multiplier") {
  std::mt19937_64 rng(3);
  const Grid1D g(-1.0, 1.0, 64);
  const auto a = random_psd_kernel(g, rng, 2);
  const auto b = random_psd_kernel(g, rng, 3);
  const FilterSpec f{0.2};
  const DensityKernel combo(g, 0.3 * a.values() + 0.7 * b.values());
  const Eigen::MatrixXcd lhs = apply_channel(combo, f).values();
  const Eigen::MatrixXcd rhs = 0.3 * apply_channel(a, f).values() + 0.7 * apply_channel(b, f).values();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * a.values().cwiseAbs().maxCoeff());

  // exp(-d^2/2l^2)^2 = exp(-d^2/2(l/sqrt2)^2)
  const auto twice = apply_channel(apply_channel(a, f), f);
  const auto once = apply_channel(a, FilterSpec{0.2 / std::sqrt(2.0)});
  CHECK((twice.values() - once.values()).cwiseAbs().maxCoeff() <=
        1e-12 * a.values().cwiseAbs().maxCoeff());
}

TEST_CASE("momentum filter values") {
  const FilterSpec f{0.5};
  CHECK(momentum_filter(0.0, f) == 1.0);
  CHECK(momentum_filter(2.0, f) == doctest::Approx(0.5));
  CHECK(momentum_filter(20.0, f) == doctest::Approx(1.0 / 101.0));
  double prev = 2.0;
  for (double k = 0; k < 100; k += 0.5) {
    CHECK(momentum_filter(k, f) < prev);
    CHECK(momentum_filter(-k, f) == momentum_filter(k, f));
    prev = momentum_filter(k, f);
  }
}

TEST_CASE("current split reconstructs the input and keeps k = 0 classical") {
  const Grid1D g(-2.0, 2.0, 64);
  const FilterSpec f{0.2, FilterKind::LorentzianMomentum};
  std::vector<cplx> flat(64, cplx(1.0, 0.0));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  std::vector<cplx> noise(64);
  for (auto& v : noise) v = cplx(nd(rng), nd(rng));
  for (const auto& input : {flat, noise}) {
    const auto s = split_current_momentum(input, g, f);
    for (std::size_t j = 0; j < input.size(); ++j) CHECK(s.classical[j] + s.coherent[j] == input[j]);
    CHECK(s.coherent[0] == cplx(0.0, 0.0));
    CHECK(s.classical[0] == input[0]);
  }
  // a mode at |k| = 10 / l_c keeps 100/101 of its amplitude in the coherent part
  const Grid1D wide(0.0, 2 * 3.14159265358979323846 * 0.1, 16);
  const std::size_t hit = 5;
  REQUIRE(wide.wavenumber(hit) * 0.2 == doctest::Approx(10.0));
  std::vector<cplx> single(16, cplx(0.0, 0.0));
  single[hit] = 1.0;
  const auto s = split_current_momentum(single, wide, f);
  CHECK(std::abs(s.coherent[hit]) == doctest::Approx(100.0 / 101.0));
  CHECK_THROWS_AS(split_current_momentum(std::vector<cplx>(3), wide, f), PreconditionError);
}

}  // TEST_SUITE
