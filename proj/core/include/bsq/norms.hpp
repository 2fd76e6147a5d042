#pragma once

#include <limits>

#include "bsq/field.hpp"

namespace bsq {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Order of the standard Sobolev norm (1 + |k|^2)^{s/2} weight.
struct SobolevSpec {
  double s = 0.0;
};

/// Grid-quadrature L^p norm: ((2pi)^3/N^3 sum_x |f(x)|^p)^{1/p} for finite p,
/// grid max for p = infinity.  Vector fields use the pointwise Euclidean
/// magnitude.  p < 1 is rejected.
double lebesgue_norm(const SpectralField& f, double p);

/// ( sum_k (1+|k|^2)^s |coeff(k)|^2 )^{1/2} scaled by the box volume so that
/// s = 0 matches lebesgue_norm(f, 2).
double sobolev_norm(const SpectralField& f, SobolevSpec spec);

/// L^2 pairing (2pi)^3 Re sum_k f(k) . conj(g(k)).
double inner_product(const SpectralField& f, const SpectralField& g);

/// Parseval route for the L^2 norm: sqrt((2pi)^3 sum_k |coeff|^2).
double l2_norm_spectral(const SpectralField& f);

/// sqrt((2pi)^3 sum_k |k|^{2m} |coeff|^2) -- equals the L^2 norm of the
/// order-m derivative tensor (and of the Laplacian for m = 2).
double hm_seminorm_spectral(const SpectralField& f, int m);

}  // namespace bsq
