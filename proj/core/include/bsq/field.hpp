#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bsq/grid.hpp"

namespace bsq {

using cplx = std::complex<double>;

/// Fourier coefficients of a real-valued field on the periodic grid,
/// one contiguous N^3 block of modes per component.
///
/// Convention: u(x) = sum_k coeff(k) e^{i k.x}, so coeff(0) is the mean.
/// Hermitian symmetry coeff(-k) = conj(coeff(k)) holds for every component.
struct SpectralField {
  Grid grid;
  int ncomp = 0;
  std::vector<cplx> coeffs;

  SpectralField() = default;
  SpectralField(Grid g, int nc)
      : grid(g), ncomp(nc), coeffs(static_cast<size_t>(nc) * g.size()) {}

  long mode_index(int i0, int i1, int i2) const {
    return (static_cast<long>(i0) * grid.n + i1) * grid.n + i2;
  }

  cplx& at(int c, int i0, int i1, int i2) {
    return coeffs[c * grid.size() + mode_index(i0, i1, i2)];
  }
  const cplx& at(int c, int i0, int i1, int i2) const {
    return coeffs[c * grid.size() + mode_index(i0, i1, i2)];
  }

  std::span<cplx> comp(int c) {
    return {coeffs.data() + c * grid.size(), static_cast<size_t>(grid.size())};
  }
  std::span<const cplx> comp(int c) const {
    return {coeffs.data() + c * grid.size(), static_cast<size_t>(grid.size())};
  }

  /// Mean value of component c (the k = 0 coefficient).
  cplx mean(int c) const { return coeffs[c * grid.size()]; }
};

/// Zero every coefficient on a Nyquist plane k_i = n/2.
void zero_nyquist(SpectralField& f);

/// Zero every coefficient with any |k_i| > dealias_cutoff (2/3 rule).
void dealias(SpectralField& f);

/// Zero the k = 0 mode of every component.
void remove_mean(SpectralField& f);

/// Replace coeffs by (coeff(k) + conj(coeff(-k)))/2 so the field is exactly
/// the Fourier transform of a real field.
void hermitian_symmetrize(SpectralField& f);

/// Largest |coeff| over all components and modes.
double max_abs_coeff(const SpectralField& f);

/// True when every coefficient is finite.
bool all_finite(const SpectralField& f);

/// c += a * x, shape-checked.
void axpy(cplx a, const SpectralField& x, SpectralField& c);

void scale(SpectralField& f, double a);

}  // namespace bsq
