#include "qlg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "qlg/constants.hpp"
#include "qlg/errors.hpp"

namespace qlg {

namespace {

std::vector<cplx> to_std(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXcd to_eigen(const std::vector<cplx>& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

void hermitize(Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd adj = m.adjoint();
  m = 0.5 * (m + adj);
}

}  // namespace

WavefunctionGrid free_evolve(const WavefunctionGrid& psi, double mass, double duration) {
  std::ostringstream msg;
  msg << "mass must be positive, got " << mass;
  require(mass > 0.0, msg.str());
  if (duration == 0.0) return psi;
  auto modes = detail::fft_forward(to_std(psi.amplitudes));
  const double factor = constants::kHbar * duration / (2.0 * mass);
  for (std::size_t j = 0; j < modes.size(); ++j) {
    const double k = psi.grid.wavenumber(j);
    modes[j] *= std::polar(1.0, -factor * k * k);
  }
  return WavefunctionGrid{psi.grid, to_eigen(detail::fft_inverse(modes))};
}

Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& rho, const LindbladModel& model) {
  const cplx minus_i_over_hbar(0.0, -1.0 / model.hbar);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  if (model.hamiltonian.size() != 0)
    out += minus_i_over_hbar * (model.hamiltonian * rho - rho * model.hamiltonian);
  for (const auto& jump : model.jumps) {
    if (jump.rate == 0.0) continue;
    const Eigen::MatrixXcd ldag = jump.op.adjoint();
    const Eigen::MatrixXcd ldl = ldag * jump.op;
    out += jump.rate * (jump.op * rho * ldag - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

LindbladResult lindblad_evolve(const Eigen::MatrixXcd& rho0, const LindbladModel& model,
                               double duration, double dt) {
  const auto dim = rho0.rows();
  require(rho0.cols() == dim, "initial state must be square");
  require(model.hamiltonian.size() == 0 ||
              (model.hamiltonian.rows() == dim && model.hamiltonian.cols() == dim),
          "Hamiltonian dimension must match the state");
  require(model.hamiltonian.size() == 0 ||
              (model.hamiltonian - model.hamiltonian.adjoint()).cwiseAbs().maxCoeff() <= 1e-12,
          "Hamiltonian must be Hermitian within 1e-12");
  require(model.hbar > 0.0, "hbar must be positive");
  require(duration >= 0.0, "duration must be nonnegative");
  require(dt > 0.0, "time step must be positive");

  double max_rate = 0.0;
  for (const auto& jump : model.jumps) {
    require(jump.rate >= 0.0, "jump rates must be nonnegative");
    require(jump.op.rows() == dim && jump.op.cols() == dim, "jump operator dimension mismatch");
    const double s = spectral_norm(jump.op);
    max_rate = std::max(max_rate, jump.rate * s * s);
  }
  const double h_scale = spectral_norm(model.hamiltonian) / model.hbar;
  if (dt * (max_rate + h_scale) > 0.1) {
    std::ostringstream msg;
    msg << "stability budget violated: dt * (rate + ||H||/hbar) = " << dt * (max_rate + h_scale)
        << " > 0.1; dominant scale is "
        << (max_rate >= h_scale ? "the dissipative rate " : "the Hamiltonian frequency ")
        << std::max(max_rate, h_scale);
    throw PreconditionError(msg.str());
  }

  LindbladResult result;
  result.state = rho0;
  const cplx trace0 = rho0.trace();
  double t = 0.0;
  while (t < duration) {
    const double step = std::min(dt, duration - t);
    const auto& r = result.state;
    const Eigen::MatrixXcd k1 = lindblad_rhs(r, model);
    const Eigen::MatrixXcd k2 = lindblad_rhs(r + 0.5 * step * k1, model);
    const Eigen::MatrixXcd k3 = lindblad_rhs(r + 0.5 * step * k2, model);
    const Eigen::MatrixXcd k4 = lindblad_rhs(r + step * k3, model);
    result.state = r + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    hermitize(result.state);
    result.trace_drift = std::max(result.trace_drift, std::abs(result.state.trace() - trace0));
    ++result.steps;
    // Accumulate from the step count to avoid drift in t itself.
    t = (step == dt) ? static_cast<double>(result.steps) * dt : duration;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(result.state, Eigen::EigenvaluesOnly);
  result.min_eigenvalue = dim > 0 ? solver.eigenvalues()(0) : 0.0;
  return result;
}

LindbladModel two_level_model(const TwoLevelDecoherenceSpec& spec) {
  require(spec.gamma >= 0.0 && spec.lambda_coupling >= 0.0 && spec.mass >= 0.0,
          "two-level parameters must be nonnegative");
  Eigen::MatrixXcd branch = Eigen::MatrixXcd::Zero(2, 2);
  branch(0, 0) = 1.0;
  branch(1, 1) = -1.0;
  LindbladModel model;
  model.hamiltonian = Eigen::MatrixXcd::Zero(2, 2);
  model.jumps.push_back({spec.lambda_coupling * spec.mass * branch, spec.gamma});
  return model;
}

double two_level_rate(const TwoLevelDecoherenceSpec& spec) {
  return 2.0 * spec.gamma * spec.lambda_coupling * spec.lambda_coupling * spec.mass * spec.mass;
}

std::complex<double> two_level_coherence_decay(std::complex<double> rho_lr0,
                                               const TwoLevelDecoherenceSpec& spec, double t) {
  require(t >= 0.0, "time must be nonnegative");
  return rho_lr0 * std::exp(-two_level_rate(spec) * t);
}

ScalarField latent_potential(const ScalarField& source, double coupling,
                             double screening_length) {
  std::ostringstream msg;
  msg << "screening length must be positive, got " << screening_length;
  require(screening_length > 0.0, msg.str());
  auto modes = detail::fft_forward(to_std(source.values));
  const double mass_term = 1.0 / (screening_length * screening_length);
  for (std::size_t j = 0; j < modes.size(); ++j) {
    const double k = source.grid.wavenumber(j);
    modes[j] *= coupling / (k * k + mass_term);
  }
  auto back = detail::fft_inverse(modes);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(back.size()));
  for (std::size_t i = 0; i < back.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = cplx(back[i].real(), 0.0);
  return ScalarField{source.grid, std::move(out)};
}

}  // namespace qlg
