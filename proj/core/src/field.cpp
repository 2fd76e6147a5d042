#include "bsq/field.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace bsq {

void zero_nyquist(SpectralField& f) {
  const int n = f.grid.n;
  const int ny = n / 2;
  for (int c = 0; c < f.ncomp; ++c) {
    for (int i0 = 0; i0 < n; ++i0) {
      for (int i1 = 0; i1 < n; ++i1) {
        for (int i2 = 0; i2 < n; ++i2) {
          if (i0 == ny || i1 == ny || i2 == ny) {
            f.at(c, i0, i1, i2) = 0.0;
          }
        }
      }
    }
  }
}

void dealias(SpectralField& f) {
  const int n = f.grid.n;
  const int cut = f.grid.dealias_cutoff;
  for (int c = 0; c < f.ncomp; ++c) {
    for (int i0 = 0; i0 < n; ++i0) {
      const int k0 = std::abs(f.grid.wavenumber(i0));
      for (int i1 = 0; i1 < n; ++i1) {
        const int k1 = std::abs(f.grid.wavenumber(i1));
        for (int i2 = 0; i2 < n; ++i2) {
          const int k2 = std::abs(f.grid.wavenumber(i2));
          if (k0 > cut || k1 > cut || k2 > cut) {
            f.at(c, i0, i1, i2) = 0.0;
          }
        }
      }
    }
  }
}

void remove_mean(SpectralField& f) {
  for (int c = 0; c < f.ncomp; ++c) {
    f.coeffs[c * f.grid.size()] = 0.0;
  }
}

void hermitian_symmetrize(SpectralField& f) {
  const int n = f.grid.n;
  SpectralField sym(f.grid, f.ncomp);
  for (int c = 0; c < f.ncomp; ++c) {
    for (int i0 = 0; i0 < n; ++i0) {
      for (int i1 = 0; i1 < n; ++i1) {
        for (int i2 = 0; i2 < n; ++i2) {
          const cplx z = f.at(c, i0, i1, i2);
          const cplx zr =
              std::conj(f.at(c, (n - i0) % n, (n - i1) % n, (n - i2) % n));
          sym.at(c, i0, i1, i2) = 0.5 * (z + zr);
        }
      }
    }
  }
  f = std::move(sym);
}

double max_abs_coeff(const SpectralField& f) {
  double m = 0.0;
  for (const cplx& z : f.coeffs) m = std::max(m, std::abs(z));
  return m;
}

bool all_finite(const SpectralField& f) {
  for (const cplx& z : f.coeffs) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void axpy(cplx a, const SpectralField& x, SpectralField& c) {
  if (!(x.grid == c.grid) || x.ncomp != c.ncomp) {
    throw std::invalid_argument("axpy: shape mismatch");
  }
  for (size_t i = 0; i < c.coeffs.size(); ++i) c.coeffs[i] += a * x.coeffs[i];
}

void scale(SpectralField& f, double a) {
  for (cplx& z : f.coeffs) z *= a;
}

}  // namespace bsq
