#pragma once

#include <array>

#include "bsq/field.hpp"

namespace bsq {

/// Partial derivative d^alpha f: each coefficient is multiplied by
/// prod_i (i k_i)^{alpha_i}.  Supports |alpha| <= 3.
SpectralField derivative(const SpectralField& f, std::array<int, 3> alpha);

/// Full gradient: output component c*3 + axis holds d_axis f_c.
SpectralField gradient(const SpectralField& f);

/// All order-m derivative tuples (3^m * ncomp components, tuple-major per
/// input component).  grad_power(f, 1) == gradient(f).
SpectralField grad_power(const SpectralField& f, int order);

/// Laplacian: coefficient multiplied by -|k|^2.
SpectralField laplacian(const SpectralField& f);

/// Leray projection onto divergence-free fields: for k != 0,
/// v(k) -> v(k) - k (k.v(k)) / |k|^2; the k = 0 mode is unchanged.
SpectralField leray_project(const SpectralField& v);

/// max_k |k . v(k)| for a 3-component field.
double max_divergence(const SpectralField& v);

}  // namespace bsq
