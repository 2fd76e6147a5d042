#pragma once

#include <vector>

#include "bsq/field.hpp"
#include "bsq/norms.hpp"

namespace bsq {

/// Dyadic multiplier bank: phi(2^{-j} k) for every retained wavevector and
/// shell j in [j_min, j_max].
///
/// phi(w) = chi(|w|/2) - chi(|w|) with chi a smooth radial cutoff equal to 1
/// for r <= 3/4 and 0 for r >= 4/3, so supp phi(2^{-j}.) is the annulus
/// 3/4 * 2^j <= |k| <= 8/3 * 2^j and the shell sums telescope to exactly 1
/// for every k != 0 covered by the range.
struct LPBank {
  Grid grid;
  int j_min = -1;
  int j_max = 0;
  /// phi[j - j_min][mode index]; phi at k = 0 is 0.
  std::vector<std::vector<double>> phi;

  int shells() const { return j_max - j_min + 1; }
  const std::vector<double>& shell(int j) const { return phi[j - j_min]; }

  /// Smooth cutoff chi: 1 on [0, 3/4], 0 on [4/3, inf), C^inf bridge
  /// exp(1 - 1/(1-t^2)) on the reparameterized transition.
  static double chi(double r);
  static double phi_profile(double r) { return chi(r * 0.5) - chi(r); }
};

LPBank build_bank(Grid grid);

/// Besov norm parameters for \dot B^s_{p,q}.
struct BesovSpec {
  double s = 0.0;
  double p = kInfExponent;
  double q = kInfExponent;
};

/// Frequency localization Delta_j f.  Outside [j_min, j_max] the zero field
/// is returned (the block vanishes by support).  The mean mode is zeroed.
SpectralField dyadic_block(const SpectralField& f, int j, const LPBank& bank);

/// Low-pass S_l f = sum_{j <= l-1} Delta_j f, mean excluded.
SpectralField low_pass(const SpectralField& f, int l, const LPBank& bank);

/// All blocks of f at once, plus the L^2 norm of the source as a checksum.
struct DyadicDecomposition {
  int j_min = 0;
  std::vector<SpectralField> blocks;
  double source_l2 = 0.0;
};
DyadicDecomposition decompose(const SpectralField& f, const LPBank& bank);

/// l^q over shells of 2^{js} ||Delta_j f||_{L^p} (sup for q = inf).
/// The mean of f is ignored (homogeneous norm, modulo constants).
double besov_norm(const SpectralField& f, BesovSpec spec, const LPBank& bank);

/// ||grad u||_{B^{-1}_{inf,inf}} with the full gradient tensor and pointwise
/// Euclidean magnitude -- the regularity-criterion integrand.
double grad_besov_minus1(const SpectralField& u, const LPBank& bank);

/// L^p norm (p in {1, inf}) of the square function
/// (sum_j |Delta_j f|^2)^{1/2} -- the F^0_{p,2} proxy.
double triebel_proxy_norm(const SpectralField& f, const LPBank& bank, double p);

/// Dyadic-cube mean-oscillation norm: max over aligned cubes of side
/// 2pi/2^m, m = 0..log2(N), of the cube-mean of |f - cube mean|.
double bmo_oscillation_norm(const SpectralField& f);

/// Paraproduct T_f g = sum_j S_{j-1} f * Delta_j g for scalar fields;
/// the accumulated product is dealiased by the 2/3 rule.
SpectralField paraproduct(const SpectralField& f, const SpectralField& g,
                          const LPBank& bank);

/// Bony remainder R(f, g) = sum_{|j-l| <= 1} Delta_j f * Delta_l g, dealiased.
SpectralField bony_remainder(const SpectralField& f, const SpectralField& g,
                             const LPBank& bank);

}  // namespace bsq
