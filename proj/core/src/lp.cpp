#include "bsq/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bsq/operators.hpp"
#include "bsq/transform.hpp"

namespace bsq {

double LPBank::chi(double r) {
  constexpr double lo = 0.75;
  constexpr double hi = 4.0 / 3.0;
  if (r <= lo) return 1.0;
  if (r >= hi) return 0.0;
  const double t = (r - lo) / (hi - lo);
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

LPBank build_bank(Grid grid) {
  LPBank bank;
  bank.grid = grid;
  bank.j_min = -1;
  const double k_max = std::sqrt(3.0) * grid.n / 2.0;
  bank.j_max = static_cast<int>(std::ceil(std::log2(k_max / 0.75)));
  bank.phi.resize(bank.shells());

  const int n = grid.n;
  std::vector<double> radius(grid.size());
  for (int i0 = 0; i0 < n; ++i0) {
    const double k0 = grid.wavenumber(i0);
    for (int i1 = 0; i1 < n; ++i1) {
      const double k1 = grid.wavenumber(i1);
      for (int i2 = 0; i2 < n; ++i2) {
        const double k2 = grid.wavenumber(i2);
        radius[(static_cast<long>(i0) * n + i1) * n + i2] =
            std::sqrt(k0 * k0 + k1 * k1 + k2 * k2);
      }
    }
  }
  for (int j = bank.j_min; j <= bank.j_max; ++j) {
    std::vector<double>& shell = bank.phi[j - bank.j_min];
    shell.resize(grid.size());
    const double s = std::ldexp(1.0, -j);  // exact power of two
    for (long i = 0; i < grid.size(); ++i) {
      // r * s * 0.5 in shell j equals r * (s/2) in shell j+1 bit for bit,
      // so the partition of unity telescopes exactly.
      shell[i] = radius[i] == 0.0
                     ? 0.0
                     : LPBank::phi_profile(radius[i] * s);
    }
  }
  return bank;
}

SpectralField dyadic_block(const SpectralField& f, int j, const LPBank& bank) {
  if (!(f.grid == bank.grid)) {
    throw std::invalid_argument("dyadic_block: grid mismatch with bank");
  }
  SpectralField out(f.grid, f.ncomp);
  if (j < bank.j_min || j > bank.j_max) return out;  // vanishes by support
  const std::vector<double>& shell = bank.shell(j);
  const long m = f.grid.size();
  for (int c = 0; c < f.ncomp; ++c) {
    auto in = f.comp(c);
    auto dst = out.comp(c);
    for (long i = 0; i < m; ++i) dst[i] = shell[i] * in[i];
  }
  remove_mean(out);
  return out;
}

SpectralField low_pass(const SpectralField& f, int l, const LPBank& bank) {
  SpectralField out(f.grid, f.ncomp);
  for (int j = bank.j_min; j <= std::min(l - 1, bank.j_max); ++j) {
    axpy(1.0, dyadic_block(f, j, bank), out);
  }
  return out;
}

DyadicDecomposition decompose(const SpectralField& f, const LPBank& bank) {
  DyadicDecomposition d;
  d.j_min = bank.j_min;
  d.source_l2 = l2_norm_spectral(f);
  d.blocks.reserve(bank.shells());
  for (int j = bank.j_min; j <= bank.j_max; ++j) {
    d.blocks.push_back(dyadic_block(f, j, bank));
  }
  return d;
}

double besov_norm(const SpectralField& f, BesovSpec spec, const LPBank& bank) {
  if (!(spec.p >= 1.0) || !(spec.q >= 1.0)) {
    throw std::invalid_argument("besov_norm: p, q must be >= 1");
  }
  double sup = 0.0;
  double sum_q = 0.0;
  for (int j = bank.j_min; j <= bank.j_max; ++j) {
    const double lp = lebesgue_norm(dyadic_block(f, j, bank), spec.p);
    const double term = std::pow(2.0, j * spec.s) * lp;
    if (spec.q == kInfExponent) {
      sup = std::max(sup, term);
    } else {
      sum_q += std::pow(term, spec.q);
    }
  }
  return spec.q == kInfExponent ? sup : std::pow(sum_q, 1.0 / spec.q);
}

double grad_besov_minus1(const SpectralField& u, const LPBank& bank) {
  SpectralField g = gradient(u);
  return besov_norm(g, {-1.0, kInfExponent, kInfExponent}, bank);
}

double triebel_proxy_norm(const SpectralField& f, const LPBank& bank,
                          double p) {
  if (p != 1.0 && p != kInfExponent) {
    throw std::invalid_argument("triebel_proxy_norm: only p = 1 or inf");
  }
  const long m = f.grid.size();
  std::vector<double> sq(m, 0.0);
  for (int j = bank.j_min; j <= bank.j_max; ++j) {
    PhysicalField block = inverse_transform(dyadic_block(f, j, bank));
    for (int c = 0; c < f.ncomp; ++c) {
      for (long i = 0; i < m; ++i) {
        sq[i] += block[c * m + i] * block[c * m + i];
      }
    }
  }
  if (p == kInfExponent) {
    double mx = 0.0;
    for (long i = 0; i < m; ++i) mx = std::max(mx, sq[i]);
    return std::sqrt(mx);
  }
  double sum = 0.0;
  for (long i = 0; i < m; ++i) sum += std::sqrt(sq[i]);
  return sum * kBoxVolume / static_cast<double>(m);
}

double bmo_oscillation_norm(const SpectralField& f) {
  const int n = f.grid.n;
  const long m = f.grid.size();
  PhysicalField phys = inverse_transform(f);

  // Inclusive 3D prefix sums per component give cube means in O(1).
  const long pn = n + 1;
  std::vector<std::vector<double>> prefix(
      f.ncomp, std::vector<double>(pn * pn * pn, 0.0));
  auto pidx = [pn](long i, long j, long k) { return (i * pn + j) * pn + k; };
  for (int c = 0; c < f.ncomp; ++c) {
    std::vector<double>& P = prefix[c];
    for (long i = 1; i <= n; ++i) {
      for (long j = 1; j <= n; ++j) {
        for (long k = 1; k <= n; ++k) {
          P[pidx(i, j, k)] =
              phys[c * m + ((i - 1) * n + (j - 1)) * n + (k - 1)] +
              P[pidx(i - 1, j, k)] + P[pidx(i, j - 1, k)] +
              P[pidx(i, j, k - 1)] - P[pidx(i - 1, j - 1, k)] -
              P[pidx(i - 1, j, k - 1)] - P[pidx(i, j - 1, k - 1)] +
              P[pidx(i - 1, j - 1, k - 1)];
        }
      }
    }
  }
  auto cube_sum = [&](int c, long a, long b, long d, long side) {
    const std::vector<double>& P = prefix[c];
    const long i1 = a + side, j1 = b + side, k1 = d + side;
    return P[pidx(i1, j1, k1)] - P[pidx(a, j1, k1)] - P[pidx(i1, b, k1)] -
           P[pidx(i1, j1, d)] + P[pidx(a, b, k1)] + P[pidx(a, j1, d)] +
           P[pidx(i1, b, d)] - P[pidx(a, b, d)];
  };

  double worst = 0.0;
  std::vector<double> means(f.ncomp);
  // Levels where the dyadic cube side divides the grid.
  for (int side = n; side >= 1; side /= 2) {
    if (n % side != 0) break;
    const long vol = static_cast<long>(side) * side * side;
    for (long a = 0; a < n; a += side) {
      for (long b = 0; b < n; b += side) {
        for (long d = 0; d < n; d += side) {
          for (int c = 0; c < f.ncomp; ++c) {
            means[c] = cube_sum(c, a, b, d, side) / vol;
          }
          double dev = 0.0;
          for (long i = a; i < a + side; ++i) {
            for (long j = b; j < b + side; ++j) {
              for (long k = d; k < d + side; ++k) {
                double mag2 = 0.0;
                for (int c = 0; c < f.ncomp; ++c) {
                  const double v =
                      phys[c * m + (i * n + j) * n + k] - means[c];
                  mag2 += v * v;
                }
                dev += std::sqrt(mag2);
              }
            }
          }
          worst = std::max(worst, dev / vol);
        }
      }
    }
  }
  return worst;
}

namespace {

// Accumulate the pointwise product of two physical scalars into acc.
void accumulate_product(const PhysicalField& a, const PhysicalField& b,
                        PhysicalField& acc) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] += a[i] * b[i];
}

}  // namespace

SpectralField paraproduct(const SpectralField& f, const SpectralField& g,
                          const LPBank& bank) {
  if (f.ncomp != 1 || g.ncomp != 1 || !(f.grid == g.grid)) {
    throw std::invalid_argument("paraproduct: scalar fields on one grid");
  }
  PhysicalField acc(f.grid.size(), 0.0);
  for (int j = bank.j_min; j <= bank.j_max; ++j) {
    SpectralField bg = dyadic_block(g, j, bank);
    if (max_abs_coeff(bg) == 0.0) continue;
    PhysicalField low = inverse_transform(low_pass(f, j - 1, bank));
    PhysicalField high = inverse_transform(bg);
    accumulate_product(low, high, acc);
  }
  SpectralField out = forward_transform(acc, f.grid, 1);
  dealias(out);
  return out;
}

SpectralField bony_remainder(const SpectralField& f, const SpectralField& g,
                             const LPBank& bank) {
  if (f.ncomp != 1 || g.ncomp != 1 || !(f.grid == g.grid)) {
    throw std::invalid_argument("bony_remainder: scalar fields on one grid");
  }
  std::vector<PhysicalField> fb(bank.shells()), gb(bank.shells());
  for (int j = bank.j_min; j <= bank.j_max; ++j) {
    fb[j - bank.j_min] = inverse_transform(dyadic_block(f, j, bank));
    gb[j - bank.j_min] = inverse_transform(dyadic_block(g, j, bank));
  }
  PhysicalField acc(f.grid.size(), 0.0);
  for (int j = 0; j < bank.shells(); ++j) {
    for (int l = std::max(0, j - 1); l <= std::min(bank.shells() - 1, j + 1);
         ++l) {
      accumulate_product(fb[j], gb[l], acc);
    }
  }
  SpectralField out = forward_transform(acc, f.grid, 1);
  dealias(out);
  return out;
}

}  // namespace bsq
