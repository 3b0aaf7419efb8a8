#pragma once

#include <complex>
#include <vector>

#include "qlg/coherence_current.hpp"
#include "qlg/core_states.hpp"

namespace qlg {

struct JumpOperator {
  Eigen::MatrixXcd op;
  double rate = 0.0;
};

/// Generator of d rho/dt = -(i/hbar)[H, rho] + sum_a rate_a (L rho L^+ - {L^+ L, rho}/2).
/// Any Lamb shift is folded into `hamiltonian` (none by default). `hbar` defaults to 1
/// because matrix models here are written in natural units.
struct LindbladModel {
  Eigen::MatrixXcd hamiltonian;
  std::vector<JumpOperator> jumps;
  double hbar = 1.0;
};

struct TwoLevelDecoherenceSpec {
  double gamma = 0.0;
  double lambda_coupling = 0.0;
  double mass = 0.0;  // caller-declared unit; gamma absorbs the conversion
};

struct LindbladResult {
  Eigen::MatrixXcd state;
  double trace_drift = 0.0;      // max |Tr rho(t) - Tr rho(0)| over the run
  double min_eigenvalue = 0.0;   // of the final state
  std::size_t steps = 0;
};

/// Exact spectral free propagation: Fourier modes pick up exp(-i hbar k^2 t / 2m), SI hbar.
WavefunctionGrid free_evolve(const WavefunctionGrid& psi, double mass, double duration);

/// Right-hand side of the master equation, exposed for tests.
Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& rho, const LindbladModel& model);

/// Fixed-step classical RK4 with Hermitization after every step. The last step is
/// shortened to land on `duration`. Throws PreconditionError when
/// dt * (max_a rate_a ||L_a||^2 + ||H||/hbar) > 0.1, naming the dominant scale.
LindbladResult lindblad_evolve(const Eigen::MatrixXcd& rho0, const LindbladModel& model,
                               double duration, double dt);

/// The branch-dephasing model with L = lambda m (|L><L| - |R><R|) at rate gamma.
LindbladModel two_level_model(const TwoLevelDecoherenceSpec& spec);

/// Decoherence rate 2 gamma lambda^2 m^2 of the two-level model.
double two_level_rate(const TwoLevelDecoherenceSpec& spec);

/// rho_LR(t) = rho_LR(0) exp(-2 gamma lambda^2 m^2 t).
std::complex<double> two_level_coherence_decay(std::complex<double> rho_lr0,
                                               const TwoLevelDecoherenceSpec& spec, double t);

/// Quasi-static screened solve: A0(k) = g n(k) / (k^2 + 1/screening^2), real part returned.
ScalarField latent_potential(const ScalarField& source, double coupling, double screening_length);

}  // namespace qlg
