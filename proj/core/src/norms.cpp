#include "bsq/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "bsq/transform.hpp"

namespace bsq {

double lebesgue_norm(const SpectralField& f, double p) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("lebesgue_norm: p must be >= 1");
  }
  const long m = f.grid.size();
  PhysicalField phys = inverse_transform(f);

  if (p == kInfExponent) {
    double mx = 0.0;
    for (long i = 0; i < m; ++i) {
      double mag2 = 0.0;
      for (int c = 0; c < f.ncomp; ++c) {
        mag2 += phys[c * m + i] * phys[c * m + i];
      }
      mx = std::max(mx, mag2);
    }
    return std::sqrt(mx);
  }

  // Plain grid quadrature: spectrally accurate for smooth fields.
  double sum = 0.0;
  for (long i = 0; i < m; ++i) {
    double mag2 = 0.0;
    for (int c = 0; c < f.ncomp; ++c) {
      mag2 += phys[c * m + i] * phys[c * m + i];
    }
    sum += std::pow(mag2, 0.5 * p);
  }
  return std::pow(sum * kBoxVolume / static_cast<double>(m), 1.0 / p);
}

double sobolev_norm(const SpectralField& f, SobolevSpec spec) {
  const int n = f.grid.n;
  double sum = 0.0;
  for (int c = 0; c < f.ncomp; ++c) {
    for (int i0 = 0; i0 < n; ++i0) {
      const double k0 = f.grid.wavenumber(i0);
      for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = f.grid.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
          const double k2 = f.grid.wavenumber(i2);
          const double k2norm = k0 * k0 + k1 * k1 + k2 * k2;
          sum += std::pow(1.0 + k2norm, spec.s) *
                 std::norm(f.at(c, i0, i1, i2));
        }
      }
    }
  }
  return std::sqrt(kBoxVolume * sum);
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid == g.grid) || f.ncomp != g.ncomp) {
    throw std::invalid_argument("inner_product: shape mismatch");
  }
  double sum = 0.0;
  for (size_t i = 0; i < f.coeffs.size(); ++i) {
    sum += (f.coeffs[i] * std::conj(g.coeffs[i])).real();
  }
  return kBoxVolume * sum;
}

double l2_norm_spectral(const SpectralField& f) {
  double sum = 0.0;
  for (const cplx& z : f.coeffs) sum += std::norm(z);
  return std::sqrt(kBoxVolume * sum);
}

double hm_seminorm_spectral(const SpectralField& f, int m) {
  const int n = f.grid.n;
  double sum = 0.0;
  for (int c = 0; c < f.ncomp; ++c) {
    for (int i0 = 0; i0 < n; ++i0) {
      const double k0 = f.grid.wavenumber(i0);
      for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = f.grid.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
          const double k2 = f.grid.wavenumber(i2);
          const double k2norm = k0 * k0 + k1 * k1 + k2 * k2;
          double w = 1.0;
          for (int q = 0; q < m; ++q) w *= k2norm;
          sum += w * std::norm(f.at(c, i0, i1, i2));
        }
      }
    }
  }
  return std::sqrt(kBoxVolume * sum);
}

}  // namespace bsq
