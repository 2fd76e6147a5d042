#include "bsq/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace bsq {
namespace {

// (i k)^a for small integer a.
cplx ik_power(int k, int a) {
  cplx ik(0.0, static_cast<double>(k));
  cplx r(1.0, 0.0);
  for (int i = 0; i < a; ++i) r *= ik;
  return r;
}

}  // namespace

SpectralField derivative(const SpectralField& f, std::array<int, 3> alpha) {
  const int order = alpha[0] + alpha[1] + alpha[2];
  if (alpha[0] < 0 || alpha[1] < 0 || alpha[2] < 0 || order > 3) {
    throw std::invalid_argument("derivative: |alpha| must be <= 3");
  }
  const int n = f.grid.n;
  SpectralField out(f.grid, f.ncomp);
  for (int c = 0; c < f.ncomp; ++c) {
    for (int i0 = 0; i0 < n; ++i0) {
      const cplx m0 = ik_power(f.grid.wavenumber(i0), alpha[0]);
      for (int i1 = 0; i1 < n; ++i1) {
        const cplx m01 = m0 * ik_power(f.grid.wavenumber(i1), alpha[1]);
        for (int i2 = 0; i2 < n; ++i2) {
          out.at(c, i0, i1, i2) =
              m01 * ik_power(f.grid.wavenumber(i2), alpha[2]) *
              f.at(c, i0, i1, i2);
        }
      }
    }
  }
  // Nyquist planes are zero on any constructed field already; odd-order
  // derivatives would break Hermitian pairing there otherwise.
  zero_nyquist(out);
  return out;
}

SpectralField gradient(const SpectralField& f) { return grad_power(f, 1); }

SpectralField grad_power(const SpectralField& f, int order) {
  if (order < 0 || order > 3) {
    throw std::invalid_argument("grad_power: order must be in [0, 3]");
  }
  if (order == 0) return f;
  int tuples = 1;
  for (int i = 0; i < order; ++i) tuples *= 3;

  SpectralField out(f.grid, f.ncomp * tuples);
  const long m = f.grid.size();
  for (int c = 0; c < f.ncomp; ++c) {
    for (int t = 0; t < tuples; ++t) {
      std::array<int, 3> alpha = {0, 0, 0};
      int code = t;
      for (int i = 0; i < order; ++i) {
        ++alpha[code % 3];
        code /= 3;
      }
      // A temporary per tuple keeps this simple; derivative handles the
      // multiplier and Nyquist care.
      SpectralField one(f.grid, 1);
      std::copy(f.comp(c).begin(), f.comp(c).end(), one.comp(0).begin());
      SpectralField d = derivative(one, alpha);
      std::copy(d.comp(0).begin(), d.comp(0).end(),
                out.comp(c * tuples + t).begin());
    }
  }
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  const int n = f.grid.n;
  SpectralField out(f.grid, f.ncomp);
  for (int c = 0; c < f.ncomp; ++c) {
    for (int i0 = 0; i0 < n; ++i0) {
      const double k0 = f.grid.wavenumber(i0);
      for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = f.grid.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
          const double k2 = f.grid.wavenumber(i2);
          out.at(c, i0, i1, i2) =
              -(k0 * k0 + k1 * k1 + k2 * k2) * f.at(c, i0, i1, i2);
        }
      }
    }
  }
  return out;
}

SpectralField leray_project(const SpectralField& v) {
  if (v.ncomp != 3) {
    throw std::invalid_argument("leray_project: field must have 3 components");
  }
  const int n = v.grid.n;
  SpectralField out = v;
  for (int i0 = 0; i0 < n; ++i0) {
    const double k0 = v.grid.wavenumber(i0);
    for (int i1 = 0; i1 < n; ++i1) {
      const double k1 = v.grid.wavenumber(i1);
      for (int i2 = 0; i2 < n; ++i2) {
        const double k2 = v.grid.wavenumber(i2);
        const double k2norm = k0 * k0 + k1 * k1 + k2 * k2;
        if (k2norm == 0.0) continue;
        const cplx kv = (k0 * out.at(0, i0, i1, i2) +
                         k1 * out.at(1, i0, i1, i2) +
                         k2 * out.at(2, i0, i1, i2)) /
                        k2norm;
        out.at(0, i0, i1, i2) -= k0 * kv;
        out.at(1, i0, i1, i2) -= k1 * kv;
        out.at(2, i0, i1, i2) -= k2 * kv;
      }
    }
  }
  return out;
}

double max_divergence(const SpectralField& v) {
  if (v.ncomp != 3) {
    throw std::invalid_argument("max_divergence: field must have 3 components");
  }
  const int n = v.grid.n;
  double m = 0.0;
  for (int i0 = 0; i0 < n; ++i0) {
    const double k0 = v.grid.wavenumber(i0);
    for (int i1 = 0; i1 < n; ++i1) {
      const double k1 = v.grid.wavenumber(i1);
      for (int i2 = 0; i2 < n; ++i2) {
        const double k2 = v.grid.wavenumber(i2);
        m = std::max(m, std::abs(k0 * v.at(0, i0, i1, i2) +
                                 k1 * v.at(1, i0, i1, i2) +
                                 k2 * v.at(2, i0, i1, i2)));
      }
    }
  }
  return m;
}

}  // namespace bsq
