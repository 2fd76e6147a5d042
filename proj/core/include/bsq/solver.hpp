#pragma once

#include <cstdint>
#include <string>

#include "bsq/field.hpp"

namespace bsq {

/// Instantaneous solver state: divergence-free velocity, temperature, time,
/// and the diffusion coefficients.
struct SimState {
  SpectralField u;      // 3 components
  SpectralField theta;  // 1 component
  double t = 0.0;
  double nu = 1.0;
  double kappa = 1.0;
};

struct SolverConfig {
  int n = 32;
  double dt = 1e-3;
  double t_end = 1.0;
  std::string ic_kind = "taylor_green";  // taylor_green | shear | buoyant_mode | random_band
  double ic_amplitude = 1.0;
  std::uint64_t rng_seed = 1;
  int sample_every = 10;    // steps between NormSample records
  int snapshot_every = 0;   // steps between snapshots, 0 = none
  double nu = 1.0;
  double kappa = 1.0;
};

/// Build the initial state: u0 projected divergence-free, theta0 mean-zero.
/// random_band fills shells 1 <= |k| <= 4 with seeded Gaussian amplitudes.
/// Throws std::invalid_argument for an unknown kind.
SimState initial_condition(const std::string& kind, double amplitude,
                           std::uint64_t seed, Grid grid, double nu = 1.0,
                           double kappa = 1.0);

/// Transport term (u . grad) f, pseudo-spectral: velocity and gradient go to
/// physical space, multiply pointwise, transform back, dealias.
SpectralField nonlinear_term(const SpectralField& u, const SpectralField& f);

/// Leray projection of theta e_3.
SpectralField buoyancy_term(const SpectralField& theta);

struct StepResult {
  SimState state;
  bool cfl_warning = false;
  double cfl_number = 0.0;  // max|u| dt N / (2 pi)
};

/// One integrating-factor Heun step: diffusion by the exact multiplier
/// e^{-nu |k|^2 dt}, explicit terms by predictor-corrector.  Global order
/// O(dt^2); exact on linear heat dynamics.
StepResult step(const SimState& state, double dt);

}  // namespace bsq
