#pragma once

// Reference implementations written independently of the library, used as test oracles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// Minimum-image separation on a periodic interval of length L, folded onto [-L/2, L/2).
inline double min_image(double dx, double L) {
  double d = std::fmod(dx + 0.5 * L, L);
  if (d < 0) d += L;
  return d - 0.5 * L;
}

// n_coh by brute force: Gaussian smearing with standard deviation lc / sqrt(2), j != i.
inline Eigen::VectorXcd dense_coherence_density(const Eigen::MatrixXcd& rho, double x_min,
                                                double L, double lc) {
  const auto n = rho.rows();
  const double h = L / static_cast<double>(n);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = min_image((x_min + i * h) - (x_min + j * h), L);
      out(i) += std::exp(-d * d / (lc * lc)) / (lc * std::sqrt(kPi)) * rho(i, j) * h;
    }
  return out;
}

// int_0^K k^5 / (L^2 + k^2)^2 dk via the substitution u = k^2, by hand.
inline double gamma0_k_integral(double lambda, double k_max) {
  const double a = lambda * lambda;
  const auto F = [&](double k) {
    const double u = k * k;
    return 0.5 * (u + a - 2.0 * a * std::log(u + a) - a * a / (u + a));
  };
  return F(k_max) - F(0.0);
}

// Partial fractions: (1/(2 pi^2 c^2)) * [pi/(2R) - 2 L^2 * pi (1 - e^{-LR})/(2 L^2 R)
//   + L^4 * pi (2 - (2 + LR) e^{-LR}) / (4 L^4 R)].
inline double entanglement_closed_form(double R, double lc, double c) {
  const double L = 1.0 / lc;
  const double e = std::exp(-L * R);
  const double one = kPi / (2.0 * R);
  const double two = kPi * (1.0 - e) / (2.0 * R);
  const double three = kPi * (2.0 - (2.0 + L * R) * e) / (4.0 * R);
  return (one - 2.0 * two + three) / (2.0 * kPi * kPi * c * c);
}

// Wootters concurrence from the non-Hermitian product rho * rho_tilde.
inline double concurrence(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd sy2 = Eigen::Matrix4cd::Zero();
  sy2(0, 3) = -1;
  sy2(3, 0) = -1;
  sy2(1, 2) = 1;
  sy2(2, 1) = 1;
  const Eigen::Matrix4cd r = rho * sy2 * rho.conjugate() * sy2;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r);
  std::vector<double> lam;
  for (int i = 0; i < 4; ++i) lam.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

// Periodic Green's function of (-d^2 + 1/s^2) on a ring of length L.
inline double screened_green(double x, double s, double L) {
  return 0.5 * s * std::cosh((0.5 * L - std::abs(x)) / s) / std::sinh(0.5 * L / s);
}

inline Eigen::VectorXd screened_convolution(const Eigen::VectorXd& src, double g, double s,
                                            double x_min, double L) {
  const auto n = src.size();
  const double h = L / static_cast<double>(n);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i) += g * screened_green(min_image((i - j) * h, L), s, L) * src(j) * h;
  (void)x_min;
  return out;
}

inline double linear_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double linear_intercept(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  return (sy - linear_slope(x, y) * sx) / n;
}

}  // namespace oracle
