#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bsq/lp.hpp"

namespace bsq {

/// Deterministic test-field corpus description.
struct CorpusSpec {
  std::vector<int> grids = {32};
  std::vector<std::string> families = {"single_mode", "dyadic_shell",
                                       "gaussian_bump", "random_band",
                                       "taylor_green_slice"};
  int count_per_family = 4;
  std::uint64_t rng_seed = 12345;
};

/// One measured inequality instance: LHS, constant-free RHS, their ratio.
struct RatioEntry {
  std::string inequality;
  std::string family;
  int grid = 0;
  double lhs = 0.0;
  double rhs_core = 0.0;
  double ratio = 0.0;
  bool skipped = false;  // degenerate 0/0, excluded from the max
};

struct RatioSummary {
  double max_ratio = 0.0;
  int entries = 0;
  int skipped = 0;
};

struct RatioReport {
  std::vector<RatioEntry> entries;
  std::map<std::string, RatioSummary> summary() const;
};

/// One corpus member: a mean-zero scalar field and a divergence-free,
/// mean-zero 3-component field on the same grid.
struct CorpusMember {
  std::string family;
  int grid_n = 0;
  int index = 0;
  int band_limit = 0;  // top |k_i| used during generation
  SpectralField scalar;
  SpectralField vec;
};

std::vector<CorpusMember> generate_corpus(const CorpusSpec& spec);

/// Bernstein lemma: (i) sup_{|a|=k} ||d^a Delta_j f||_{L^q} vs
/// 2^{jk + 3j(1/p - 1/q)} ||Delta_j f||_{L^p}; (ii) the reverse with the
/// 2^{-jk} gain.  Requires p <= q; vanishing blocks are skipped.
std::vector<RatioEntry> bernstein_check(const SpectralField& f, int j,
                                        int k_order, double p, double q,
                                        const LPBank& bank);

/// Logarithmic Sobolev bound for s > 3/2 with alpha = min(s - 3/2, 3/2).
/// Emits "log_sobolev_a" (the 2^{-alpha N} || ||_{H^s} + N || ||_{B^{-1}}
/// split at the proof's N) and "log_sobolev_b" (the ln+ form).
/// forced_n > 0 pins the split index N instead of the proof's selection
/// rule (used by the fixed-N scaling-invariance property).
std::vector<RatioEntry> log_sobolev_check(const SpectralField& f, double s,
                                          const LPBank& bank,
                                          int forced_n = 0);

/// ||grad u||_{L^4}^2 vs ||u||_{B^0_{inf,inf}} ||Lap u||_{L^2}.
RatioEntry machihara_ozawa_check(const SpectralField& u, const LPBank& bank);

/// ||Lap f||_{L^4} vs ||grad f||_{L^2}^{1/8} ||grad^3 f||_{L^2}^{7/8}.
RatioEntry gn_quarter_check(const SpectralField& f);

/// ||grad^j f||_{L^p} vs ||grad^m f||_{L^q}^{1-theta} ||grad^k f||_{L^r}^theta
/// with p fixed by 1/p = j/3 + theta(1/r - m/3) + (1-theta)(1/q - k/3).
/// Throws std::invalid_argument (naming the computed p) when the exponent
/// combination leaves [1, inf].
RatioEntry interpolation_check(const SpectralField& f, int j, int m, int k,
                               double theta, double q, double r);

/// Trilinear BMO bound: |int f . grad(gh)| vs
/// bmo(f) (||grad g|| ||h|| + ||g|| ||grad h||), product dealiased.
RatioEntry trilinear_check(const SpectralField& f, const SpectralField& g,
                           const SpectralField& h);

/// Relative L^2 residual of f'g' - mean - [T_f g + T_g f + R(f,g)] with
/// f', g' the mean-removed inputs.
RatioEntry bony_identity_check(const SpectralField& f, const SpectralField& g,
                               const LPBank& bank);

/// Every check over every corpus member; deterministic from the seed.
RatioReport run_corpus(const CorpusSpec& spec);

}  // namespace bsq
