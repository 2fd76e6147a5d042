#include "bsq/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace bsq {
namespace {

// One forward and one backward c2c plan per grid size, created with
// FFTW_ESTIMATE so the chosen algorithm does not depend on runtime timing
// (the determinism contract requires bit-identical results across runs).
struct PlanSet {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

PlanSet& plans_for(int n) {
  static std::map<int, PlanSet> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<cplx> buf(static_cast<size_t>(n) * n * n);
  auto* p = reinterpret_cast<fftw_complex*>(buf.data());
  PlanSet set;
  set.forward = fftw_plan_dft_3d(n, n, n, p, p, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  set.backward = fftw_plan_dft_3d(n, n, n, p, p, FFTW_BACKWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(n, set).first->second;
}

void execute(fftw_plan plan, cplx* data) {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, p, p);
}

}  // namespace

SpectralField forward_transform(const PhysicalField& samples, Grid grid,
                                int ncomp) {
  const long m = grid.size();
  if (static_cast<long>(samples.size()) != m * ncomp) {
    throw std::invalid_argument(
        "forward_transform: sample count " + std::to_string(samples.size()) +
        " does not match grid N=" + std::to_string(grid.n) + " with " +
        std::to_string(ncomp) + " components");
  }
  SpectralField f(grid, ncomp);
  PlanSet& plans = plans_for(grid.n);
  const double inv = 1.0 / static_cast<double>(m);
  for (int c = 0; c < ncomp; ++c) {
    auto block = f.comp(c);
    for (long i = 0; i < m; ++i) block[i] = samples[c * m + i];
    execute(plans.forward, block.data());
    for (long i = 0; i < m; ++i) block[i] *= inv;
  }
  zero_nyquist(f);
  return f;
}

void inverse_transform_comp(const SpectralField& f, int c, double* out) {
  const long m = f.grid.size();
  std::vector<cplx> buf(f.comp(c).begin(), f.comp(c).end());
  execute(plans_for(f.grid.n).backward, buf.data());

  double max_abs = 0.0, max_imag = 0.0;
  for (long i = 0; i < m; ++i) {
    max_abs = std::max(max_abs, std::abs(buf[i].real()));
    max_imag = std::max(max_imag, std::abs(buf[i].imag()));
  }
  if (max_imag > 1e-9 * std::max(max_abs, 1e-300)) {
    throw std::runtime_error(
        "inverse_transform: imaginary residue " + std::to_string(max_imag) +
        " exceeds tolerance; Hermitian symmetry is broken");
  }
  for (long i = 0; i < m; ++i) out[i] = buf[i].real();
}

PhysicalField inverse_transform(const SpectralField& f) {
  const long m = f.grid.size();
  PhysicalField out(static_cast<size_t>(m) * f.ncomp);
  for (int c = 0; c < f.ncomp; ++c) {
    inverse_transform_comp(f, c, out.data() + c * m);
  }
  return out;
}

}  // namespace bsq
