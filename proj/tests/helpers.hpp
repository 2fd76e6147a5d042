#pragma once

#include <array>
#include <cmath>
#include <random>

#include "bsq/field.hpp"
#include "bsq/transform.hpp"

namespace testutil {

using bsq::cplx;
using bsq::Grid;
using bsq::PhysicalField;
using bsq::SpectralField;

inline double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Hermitian pair: coeff(k) = half, coeff(-k) = conj(half).
inline SpectralField single_mode(Grid grid, std::array<int, 3> k, cplx half,
                                 int ncomp = 1, int c = 0) {
  SpectralField f(grid, ncomp);
  const int n = grid.n;
  f.at(c, (k[0] + n) % n, (k[1] + n) % n, (k[2] + n) % n) += half;
  f.at(c, (n - k[0]) % n, (n - k[1]) % n, (n - k[2]) % n) += std::conj(half);
  return f;
}

/// Uniform random physical samples in [-1, 1].
inline PhysicalField random_samples(Grid grid, int ncomp, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  PhysicalField out(static_cast<size_t>(ncomp) * grid.size());
  for (double& v : out) v = unif(rng);
  return out;
}

/// Mean-free real field with Gaussian coefficients on 1 <= max|k_i| <= kmax.
inline SpectralField random_band_field(Grid grid, int ncomp, int kmax,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralField f(grid, ncomp);
  const int n = grid.n;
  for (int c = 0; c < ncomp; ++c) {
    for (int k0 = -kmax; k0 <= kmax; ++k0) {
      for (int k1 = -kmax; k1 <= kmax; ++k1) {
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
          if (k0 == 0 && k1 == 0 && k2 == 0) continue;
          f.at(c, (k0 + n) % n, (k1 + n) % n, (k2 + n) % n) =
              cplx(gauss(rng), gauss(rng));
        }
      }
    }
  }
  bsq::hermitian_symmetrize(f);
  bsq::zero_nyquist(f);
  bsq::dealias(f);
  bsq::remove_mean(f);
  return f;
}

/// Direct (non-FFT) evaluation of component c at grid point (i0, i1, i2),
/// summing only the nonzero coefficients.  Oracle path for transforms.
inline double direct_value(const SpectralField& f, int c, int i0, int i1,
                           int i2) {
  const int n = f.grid.n;
  const double h = bsq::kBoxLength / n;
  const double x0 = i0 * h, x1 = i1 * h, x2 = i2 * h;
  cplx acc = 0.0;
  for (int a0 = 0; a0 < n; ++a0) {
    const int k0 = f.grid.wavenumber(a0);
    for (int a1 = 0; a1 < n; ++a1) {
      const int k1 = f.grid.wavenumber(a1);
      for (int a2 = 0; a2 < n; ++a2) {
        const cplx z = f.at(c, a0, a1, a2);
        if (z == cplx(0.0)) continue;
        const int k2 = f.grid.wavenumber(a2);
        acc += z * std::exp(cplx(0.0, k0 * x0 + k1 * x1 + k2 * x2));
      }
    }
  }
  return acc.real();
}

}  // namespace testutil
