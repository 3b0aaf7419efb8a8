#include "qlg/core_states.hpp"

#include <cmath>
#include <sstream>

#include "qlg/constants.hpp"
#include "qlg/errors.hpp"

namespace qlg {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Fills the lower triangle from the upper one so Hermiticity holds bit-exactly.
void hermitize_from_upper(Eigen::MatrixXcd& m) {
  const auto n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = cplx(m(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) m(j, i) = std::conj(m(i, j));
  }
}

WavefunctionGrid normalized(const Grid1D& grid, Eigen::VectorXcd amps) {
  const double norm2 = amps.squaredNorm() * grid.spacing();
  require(norm2 > 0.0, "wavefunction has zero norm on the grid");
  amps /= std::sqrt(norm2);
  return WavefunctionGrid{grid, std::move(amps)};
}

}  // namespace

Grid1D::Grid1D(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_(n_points) {
  require(std::isfinite(x_min) && std::isfinite(x_max) && x_max > x_min,
          "grid requires finite x_min < x_max");
  std::ostringstream msg;
  msg << "grid n_points must be a power of two >= 16, got " << n_points;
  require(n_points >= 16 && is_power_of_two(n_points), msg.str());
}

double Grid1D::wavenumber(std::size_t j) const {
  const double dk = 2.0 * constants::kPi / length();
  const auto signed_j = j < n_ / 2 ? static_cast<double>(j)
                                   : static_cast<double>(j) - static_cast<double>(n_);
  return dk * signed_j;
}

double Grid1D::periodic_separation(std::size_t i, std::size_t j) const {
  auto d = static_cast<long long>(i) - static_cast<long long>(j);
  const auto n = static_cast<long long>(n_);
  if (d >= n / 2) d -= n;
  if (d < -n / 2) d += n;
  return static_cast<double>(d) * spacing();
}

double WavefunctionGrid::norm_squared() const {
  return amplitudes.squaredNorm() * grid.spacing();
}

DensityKernel::DensityKernel(Grid1D grid, Eigen::MatrixXcd values)
    : grid_(grid), values_(std::move(values)) {
  const auto n = static_cast<Eigen::Index>(grid_.size());
  require(values_.rows() == n && values_.cols() == n, "density kernel shape must match grid");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j)
      require(values_(i, j) == std::conj(values_(j, i)), "density kernel must be Hermitian");
}

double DensityKernel::trace() const { return values_.diagonal().real().sum() * grid_.spacing(); }

double DensityKernel::purity() const {
  const double h = grid_.spacing();
  return values_.squaredNorm() * h * h;
}

Eigen::VectorXd DensityKernel::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(values_ * grid_.spacing(),
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double DensityKernel::min_eigenvalue() const { return eigenvalues()(0); }

double TwoQubitState::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(values, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

void check_resolvable(const GaussianPacketSpec& spec, const Grid1D& grid) {
  std::ostringstream msg;
  if (!(spec.width > 0.0) || !std::isfinite(spec.width)) {
    msg << "packet width must be positive, got " << spec.width;
    throw PreconditionError(msg.str());
  }
  if (spec.width < 4.0 * grid.spacing()) {
    msg << "packet width " << spec.width << " is below 4 grid spacings ("
        << 4.0 * grid.spacing() << ")";
    throw PreconditionError(msg.str());
  }
  if (6.0 * spec.width > grid.length()) {
    msg << "6 packet widths (" << 6.0 * spec.width << ") exceed the domain length "
        << grid.length();
    throw PreconditionError(msg.str());
  }
  if (!(spec.center >= grid.x_min() && spec.center < grid.x_max())) {
    msg << "packet center " << spec.center << " lies outside [" << grid.x_min() << ", "
        << grid.x_max() << ")";
    throw PreconditionError(msg.str());
  }
}

double gaussian_packet_value(const GaussianPacketSpec& spec, double x) {
  const double w2 = spec.width * spec.width;
  const double u = x - spec.center;
  return std::pow(2.0 * constants::kPi * w2, -0.25) * std::exp(-u * u / (4.0 * w2));
}

WavefunctionGrid gaussian_packet(const GaussianPacketSpec& spec, const Grid1D& grid) {
  check_resolvable(spec, grid);
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i)
    amps(static_cast<Eigen::Index>(i)) = gaussian_packet_value(spec, grid.x(i));
  return normalized(grid, std::move(amps));
}

WavefunctionGrid superposition_wavefunction(const TwoBranchSpec& spec, const Grid1D& grid) {
  const double weight = std::norm(spec.c_left) + std::norm(spec.c_right);
  std::ostringstream msg;
  msg << "branch amplitudes must satisfy |c_L|^2 + |c_R|^2 = 1, got " << weight;
  require(std::abs(weight - 1.0) <= 1e-12, msg.str());
  const auto left = gaussian_packet(spec.left, grid);
  const auto right = gaussian_packet(spec.right, grid);
  if (spec.c_right == cplx(0.0, 0.0) && spec.c_left == cplx(1.0, 0.0)) return left;
  return normalized(grid, spec.c_left * left.amplitudes + spec.c_right * right.amplitudes);
}

WavefunctionGrid boost(const WavefunctionGrid& psi, double k0) {
  WavefunctionGrid out = psi;
  for (std::size_t i = 0; i < psi.grid.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    out.amplitudes(idx) *= std::polar(1.0, k0 * psi.grid.x(i));
  }
  return out;
}

cplx inner_product(const WavefunctionGrid& a, const WavefunctionGrid& b) {
  require(a.grid == b.grid, "inner product requires identical grids");
  return a.amplitudes.dot(b.amplitudes) * a.grid.spacing();
}

DensityKernel pure_density_kernel(const WavefunctionGrid& psi) {
  const auto n = static_cast<Eigen::Index>(psi.grid.size());
  Eigen::MatrixXcd rho(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j)
      rho(i, j) = psi.amplitudes(i) * std::conj(psi.amplitudes(j));
  hermitize_from_upper(rho);
  return DensityKernel(psi.grid, std::move(rho));
}

DensityKernel mixture_density_kernel(std::span<const double> weights,
                                     std::span<const WavefunctionGrid> states) {
  require(!weights.empty() && weights.size() == states.size(),
          "mixture needs one weight per state");
  double total = 0.0;
  for (double w : weights) {
    require(std::isfinite(w) && w >= 0.0, "mixture weights must be nonnegative");
    total += w;
  }
  std::ostringstream msg;
  msg << "mixture weights must sum to 1, got " << total;
  require(std::abs(total - 1.0) <= 1e-12, msg.str());
  const Grid1D& grid = states.front().grid;
  for (const auto& s : states) require(s.grid == grid, "mixture states must share a grid");

  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto& a = states[k].amplitudes;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) rho(i, j) += weights[k] * (a(i) * std::conj(a(j)));
  }
  hermitize_from_upper(rho);
  return DensityKernel(grid, std::move(rho));
}

KernelSplit split_diag_offdiag(const DensityKernel& rho) {
  const auto n = static_cast<Eigen::Index>(rho.grid().size());
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd off = rho.values();
  for (Eigen::Index i = 0; i < n; ++i) {
    diag(i, i) = rho.values()(i, i);
    off(i, i) = cplx(0.0, 0.0);
  }
  return KernelSplit{DensityKernel(rho.grid(), std::move(diag)),
                     DensityKernel(rho.grid(), std::move(off))};
}

namespace {

void require_probability(double p) {
  std::ostringstream msg;
  msg << "family parameter p must lie in [0, 1], got " << p;
  require(p >= 0.0 && p <= 1.0, msg.str());
}

}  // namespace

TwoQubitState bell_state(int sign) {
  require(sign == 1 || sign == -1, "Bell state sign must be +1 or -1");
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  m(0, 3) = 0.5 * sign;
  m(3, 0) = 0.5 * sign;
  return TwoQubitState{m};
}

TwoQubitState classical_mix_00_11() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  return TwoQubitState{m};
}

TwoQubitState dephased_family(double p) {
  require_probability(p);
  if (p == 1.0) return bell_state(+1);
  if (p == 0.0) return classical_mix_00_11();
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  m(0, 3) = 0.5 * p;
  m(3, 0) = 0.5 * p;
  return TwoQubitState{m};
}

TwoQubitState werner_family(double p) {
  require_probability(p);
  Eigen::Matrix4cd m = (p * bell_state(+1).values) +
                       ((1.0 - p) * 0.25) * Eigen::Matrix4cd::Identity();
  return TwoQubitState{m};
}

}  // namespace qlg
