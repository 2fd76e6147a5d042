#include "bsq/solver.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "bsq/operators.hpp"
#include "bsq/transform.hpp"

namespace bsq {
namespace {

// Physical-space samples of A * sin(x_axis) on the grid.
PhysicalField sine_axis(Grid grid, int axis, double amplitude) {
  const int n = grid.n;
  PhysicalField out(grid.size());
  const double h = kBoxLength / n;
  for (int i0 = 0; i0 < n; ++i0) {
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        const int idx[3] = {i0, i1, i2};
        out[(static_cast<long>(i0) * n + i1) * n + i2] =
            amplitude * std::sin(idx[axis] * h);
      }
    }
  }
  return out;
}

void apply_diffusion_multiplier(SpectralField& f, double coeff, double dt) {
  const int n = f.grid.n;
  for (int c = 0; c < f.ncomp; ++c) {
    for (int i0 = 0; i0 < n; ++i0) {
      const double k0 = f.grid.wavenumber(i0);
      for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = f.grid.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
          const double k2 = f.grid.wavenumber(i2);
          f.at(c, i0, i1, i2) *=
              std::exp(-coeff * (k0 * k0 + k1 * k1 + k2 * k2) * dt);
        }
      }
    }
  }
}

double max_speed(const SpectralField& u) {
  const long m = u.grid.size();
  PhysicalField phys = inverse_transform(u);
  double mx = 0.0;
  for (long i = 0; i < m; ++i) {
    const double s = phys[i] * phys[i] + phys[m + i] * phys[m + i] +
                     phys[2 * m + i] * phys[2 * m + i];
    mx = std::max(mx, s);
  }
  return std::sqrt(mx);
}

// Explicit momentum forcing: -(u.grad)u + P(theta e3), projected.
SpectralField momentum_rhs(const SpectralField& u, const SpectralField& theta) {
  SpectralField rhs = nonlinear_term(u, u);
  scale(rhs, -1.0);
  const long m = theta.grid.size();
  for (long i = 0; i < m; ++i) rhs.comp(2)[i] += theta.comp(0)[i];
  return leray_project(rhs);
}

SpectralField theta_rhs(const SpectralField& u, const SpectralField& theta) {
  SpectralField rhs = nonlinear_term(u, theta);
  scale(rhs, -1.0);
  return rhs;
}

}  // namespace

SimState initial_condition(const std::string& kind, double amplitude,
                           std::uint64_t seed, Grid grid, double nu,
                           double kappa) {
  SimState s;
  s.nu = nu;
  s.kappa = kappa;
  s.t = 0.0;
  s.u = SpectralField(grid, 3);
  s.theta = SpectralField(grid, 1);
  const int n = grid.n;

  if (kind == "shear") {
    // u = A (0, sin x1, 0), exactly divergence-free.
    PhysicalField phys(3 * grid.size(), 0.0);
    PhysicalField sx = sine_axis(grid, 0, amplitude);
    std::copy(sx.begin(), sx.end(), phys.begin() + grid.size());
    s.u = forward_transform(phys, grid, 3);
  } else if (kind == "buoyant_mode") {
    PhysicalField phys = sine_axis(grid, 0, amplitude);
    s.theta = forward_transform(phys, grid, 1);
  } else if (kind == "taylor_green") {
    PhysicalField phys(3 * grid.size(), 0.0);
    const double h = kBoxLength / n;
    for (int i0 = 0; i0 < n; ++i0) {
      for (int i1 = 0; i1 < n; ++i1) {
        for (int i2 = 0; i2 < n; ++i2) {
          const long i = (static_cast<long>(i0) * n + i1) * n + i2;
          const double x = i0 * h, y = i1 * h, z = i2 * h;
          phys[i] = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
          phys[grid.size() + i] =
              -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
        }
      }
    }
    s.u = leray_project(forward_transform(phys, grid, 3));
  } else if (kind == "random_band") {
    // Seeded Gaussian amplitudes on shells 1 <= |k| <= 4, Hermitianized by
    // transforming a real random combination.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField u(grid, 3), th(grid, 1);
    for (int c = 0; c < 4; ++c) {
      SpectralField& target = c < 3 ? u : th;
      const int tc = c < 3 ? c : 0;
      for (int i0 = 0; i0 < n; ++i0) {
        const int k0 = grid.wavenumber(i0);
        for (int i1 = 0; i1 < n; ++i1) {
          const int k1 = grid.wavenumber(i1);
          for (int i2 = 0; i2 < n; ++i2) {
            const int k2 = grid.wavenumber(i2);
            const double r2 = k0 * k0 + k1 * k1 + k2 * k2;
            if (r2 < 1.0 || r2 > 16.0) continue;
            target.at(tc, i0, i1, i2) = cplx(gauss(rng), gauss(rng));
          }
        }
      }
    }
    hermitian_symmetrize(u);
    hermitian_symmetrize(th);
    const double norm_u = max_abs_coeff(u);
    if (norm_u > 0.0) scale(u, amplitude / norm_u);
    const double norm_th = max_abs_coeff(th);
    if (norm_th > 0.0) scale(th, amplitude / norm_th);
    s.u = leray_project(u);
    s.theta = th;
  } else {
    throw std::invalid_argument("initial_condition: unknown kind '" + kind +
                                "'");
  }
  zero_nyquist(s.u);
  zero_nyquist(s.theta);
  dealias(s.u);
  dealias(s.theta);
  remove_mean(s.theta);
  return s;
}

SpectralField nonlinear_term(const SpectralField& u, const SpectralField& f) {
  if (u.ncomp != 3 || !(u.grid == f.grid)) {
    throw std::invalid_argument("nonlinear_term: need 3-component u on the "
                                "same grid as f");
  }
  const long m = u.grid.size();
  PhysicalField uphys = inverse_transform(u);
  SpectralField grad = gradient(f);  // component c*3 + axis
  PhysicalField gphys = inverse_transform(grad);

  PhysicalField prod(static_cast<size_t>(m) * f.ncomp, 0.0);
  for (int c = 0; c < f.ncomp; ++c) {
    for (int axis = 0; axis < 3; ++axis) {
      const double* ua = uphys.data() + axis * m;
      const double* ga = gphys.data() + (c * 3 + axis) * m;
      double* dst = prod.data() + c * m;
      for (long i = 0; i < m; ++i) dst[i] += ua[i] * ga[i];
    }
  }
  SpectralField out = forward_transform(prod, f.grid, f.ncomp);
  dealias(out);
  return out;
}

SpectralField buoyancy_term(const SpectralField& theta) {
  if (theta.ncomp != 1) {
    throw std::invalid_argument("buoyancy_term: theta must be scalar");
  }
  SpectralField v(theta.grid, 3);
  std::copy(theta.comp(0).begin(), theta.comp(0).end(), v.comp(2).begin());
  return leray_project(v);
}

StepResult step(const SimState& state, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  StepResult res;
  const Grid grid = state.u.grid;

  const double umax = max_speed(state.u);
  res.cfl_number = umax * dt * grid.n / kBoxLength;
  res.cfl_warning = res.cfl_number > 0.5;

  // Stage rates at t.
  SpectralField nu0 = momentum_rhs(state.u, state.theta);
  SpectralField nt0 = theta_rhs(state.u, state.theta);

  // Predictor: exact diffusion of (state + dt * rate).
  SimState pred = state;
  axpy(dt, nu0, pred.u);
  axpy(dt, nt0, pred.theta);
  apply_diffusion_multiplier(pred.u, state.nu, dt);
  apply_diffusion_multiplier(pred.theta, state.kappa, dt);

  SpectralField nu1 = momentum_rhs(pred.u, pred.theta);
  SpectralField nt1 = theta_rhs(pred.u, pred.theta);

  // Corrector: u_{n+1} = E u_n + dt/2 (E nu0 + nu1).
  SimState next = state;
  apply_diffusion_multiplier(next.u, state.nu, dt);
  apply_diffusion_multiplier(next.theta, state.kappa, dt);
  apply_diffusion_multiplier(nu0, state.nu, dt);
  apply_diffusion_multiplier(nt0, state.kappa, dt);
  axpy(0.5 * dt, nu0, next.u);
  axpy(0.5 * dt, nu1, next.u);
  axpy(0.5 * dt, nt0, next.theta);
  axpy(0.5 * dt, nt1, next.theta);

  next.u = leray_project(next.u);
  dealias(next.u);
  dealias(next.theta);
  next.t = state.t + dt;
  res.state = std::move(next);
  return res;
}

}  // namespace bsq
