#pragma once

#include <vector>

#include "bsq/field.hpp"

namespace bsq {

/// Real samples on the N^3 grid, one block per component, same layout as
/// the coefficient storage (x0-major, x2 fastest).
using PhysicalField = std::vector<double>;

/// Discrete Fourier analysis with the convention
/// coeff(k) = (1/N^3) sum_x u(x) e^{-i k.x}.  The Nyquist planes are zeroed.
SpectralField forward_transform(const PhysicalField& samples, Grid grid,
                                int ncomp);

/// Synthesis u(x) = sum_k coeff(k) e^{i k.x}.  Throws if the imaginary
/// residue exceeds 1e-9 relative (broken Hermitian symmetry).
PhysicalField inverse_transform(const SpectralField& f);

/// Inverse transform of a single component into a caller-provided buffer
/// of grid.size() doubles.
void inverse_transform_comp(const SpectralField& f, int c, double* out);

}  // namespace bsq
