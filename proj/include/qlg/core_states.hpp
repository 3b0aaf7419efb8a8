#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qlg {

using cplx = std::complex<double>;

/// Uniform periodic grid on [x_min, x_max). Node i sits at x_min + i * spacing.
class Grid1D {
 public:
  /// Throws PreconditionError unless n_points >= 16 is a power of two and x_max > x_min.
  Grid1D(double x_min, double x_max, std::size_t n_points);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t size() const { return n_; }
  double length() const { return x_max_ - x_min_; }
  double spacing() const { return (x_max_ - x_min_) / static_cast<double>(n_); }
  double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * spacing(); }

  /// Angular wavenumber of FFT bin j (standard FFT ordering).
  double wavenumber(std::size_t j) const;

  /// Signed separation x_i - x_j folded onto [-L/2, L/2).
  double periodic_separation(std::size_t i, std::size_t j) const;

  bool operator==(const Grid1D&) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
};

struct GaussianPacketSpec {
  double center = 0.0;
  double width = 0.0;  // the packet standard deviation in |phi|^2 is `width`
};

struct TwoBranchSpec {
  cplx c_left{1.0, 0.0};
  cplx c_right{0.0, 0.0};
  GaussianPacketSpec left;
  GaussianPacketSpec right;
};

/// Sampled wavefunction with unit discrete norm: sum |psi_i|^2 * spacing = 1.
struct WavefunctionGrid {
  Grid1D grid;
  Eigen::VectorXcd amplitudes;

  double norm_squared() const;
};

/// Position-space kernel rho(x_i, x_j). Hermiticity is checked exactly on construction;
/// trace and positivity are properties of physical states only and are reported by
/// `trace()` / `min_eigenvalue()`.
class DensityKernel {
 public:
  DensityKernel(Grid1D grid, Eigen::MatrixXcd values);

  const Grid1D& grid() const { return grid_; }
  const Eigen::MatrixXcd& values() const { return values_; }

  /// sum_i rho(x_i, x_i) * spacing (real part; the diagonal is real by construction).
  double trace() const;
  /// Tr(rho^2) with the grid measure, i.e. sum_ij |rho_ij|^2 * spacing^2.
  double purity() const;
  /// Smallest eigenvalue of the operator rho * spacing.
  double min_eigenvalue() const;
  /// All eigenvalues of rho * spacing, ascending.
  Eigen::VectorXd eigenvalues() const;

 private:
  Grid1D grid_;
  Eigen::MatrixXcd values_;
};

/// 4x4 density matrix in the ordered basis {|00>, |01>, |10>, |11>}.
struct TwoQubitState {
  Eigen::Matrix4cd values;

  double trace() const { return values.trace().real(); }
  double purity() const { return (values * values).trace().real(); }
  double min_eigenvalue() const;
};

/// Throws PreconditionError when the packet is not resolvable on `grid`
/// (width < 4 spacings, 6 widths exceeding the domain, or center outside it).
void check_resolvable(const GaussianPacketSpec& spec, const Grid1D& grid);

/// (2 pi w^2)^(-1/4) exp(-(x - x0)^2 / (4 w^2)) without discrete renormalization.
double gaussian_packet_value(const GaussianPacketSpec& spec, double x);

WavefunctionGrid gaussian_packet(const GaussianPacketSpec& spec, const Grid1D& grid);
WavefunctionGrid superposition_wavefunction(const TwoBranchSpec& spec, const Grid1D& grid);

/// Multiplies psi by the plane wave exp(i k0 x).
WavefunctionGrid boost(const WavefunctionGrid& psi, double k0);

/// Discrete inner product <a|b> = sum conj(a_i) b_i * spacing.
cplx inner_product(const WavefunctionGrid& a, const WavefunctionGrid& b);

DensityKernel pure_density_kernel(const WavefunctionGrid& psi);
DensityKernel mixture_density_kernel(std::span<const double> weights,
                                     std::span<const WavefunctionGrid> states);

struct KernelSplit {
  DensityKernel diagonal;
  DensityKernel off_diagonal;
};

/// Splits rho into its main diagonal and the remainder.
///
/// The diagonal part stores rho(x_i, x_i) on the Kronecker diagonal. As an integral
/// kernel this is n(x) * spacing * delta(x - x'): the continuum delta is represented
/// by Kronecker / spacing, so the stored entry carries the compensating spacing.
/// Sum of the two parts reproduces rho bit-exactly.
KernelSplit split_diag_offdiag(const DensityKernel& rho);

TwoQubitState bell_state(int sign);
TwoQubitState classical_mix_00_11();
/// p |Phi+><Phi+| + (1 - p) (|00><00| + |11><11|) / 2
TwoQubitState dephased_family(double p);
/// p |Phi+><Phi+| + (1 - p) I / 4
TwoQubitState werner_family(double p);

}  // namespace qlg
