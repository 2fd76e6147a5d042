// Acceptance checks for the simulator and the Besov diagnostic engine.
// Each criterion prints exactly one PASS/FAIL line; the exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bsq/ineq.hpp"
#include "bsq/io.hpp"
#include "bsq/lp.hpp"
#include "bsq/monitor.hpp"
#include "bsq/norms.hpp"
#include "bsq/operators.hpp"
#include "bsq/solver.hpp"
#include "bsq/transform.hpp"
#include "helpers.hpp"

using namespace bsq;
using testutil::rel_err;
namespace fs = std::filesystem;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

struct Checker {
  bool ok = true;
  std::ostringstream why;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      why << what;
      ok = false;
    }
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double l2_diff(const SpectralField& a, const SpectralField& b) {
  SpectralField d = a;
  axpy(-1.0, b, d);
  return l2_norm_spectral(d);
}

// --- 1: exact-solution regressions ---------------------------------------

bool criterion_exact_solutions() {
  Checker c;
  const double t0 = now_seconds();

  Grid g = Grid::make(16);
  SimState s = initial_condition("shear", 1.0, 0, g);
  SpectralField u0 = s.u;
  for (int i = 0; i < 1000; ++i) s = step(s, 1e-3).state;
  SpectralField expect = u0;
  scale(expect, std::exp(-1.0));
  c.require(l2_diff(s.u, expect) / l2_norm_spectral(expect) <= 1e-12,
            "shear decay off by more than 1e-12");
  c.require(now_seconds() - t0 < 5.0, "shear regression took >= 5 s");

  auto duhamel_error = [&](double dt, double kappa) {
    SimState b = initial_condition("buoyant_mode", 1.0, 0, g, 1.0, kappa);
    const long steps = std::lround(1.0 / dt);
    for (long i = 0; i < steps; ++i) b = step(b, dt).state;
    const double t = b.t;
    // kappa = 1: u3 = t e^{-t} sin x1.  kappa = 2: (e^{-t} - e^{-2t}) sin x1.
    const double amp_u =
        kappa == 1.0 ? t * std::exp(-t) : std::exp(-t) - std::exp(-2.0 * t);
    SpectralField eu =
        testutil::single_mode(g, {1, 0, 0}, cplx(0.0, -0.5 * amp_u), 3, 2);
    SpectralField eth = testutil::single_mode(
        g, {1, 0, 0}, cplx(0.0, -0.5 * std::exp(-kappa * t)));
    return std::max(l2_diff(b.u, eu), l2_diff(b.theta, eth)) /
           l2_norm_spectral(eu);
  };
  c.require(duhamel_error(1e-3, 1.0) <= 1e-5,
            "buoyant-mode error above 1e-5 at dt = 1e-3");
  // nu = kappa makes the corrector exact on this mode, so the convergence
  // rate is read off the detuned kappa = 2 companion solution.
  const double e1 = duhamel_error(1e-3, 2.0);
  const double e2 = duhamel_error(5e-4, 2.0);
  c.require(e1 / e2 >= 4.0 * 0.8 && e1 / e2 <= 4.0 * 1.2,
            "buoyant-mode halving ratio outside 4 +- 20%");

  std::printf("criterion 1 (exact-solution regressions): %s%s\n",
              c.ok ? "PASS" : "FAIL",
              c.ok ? "" : (" [" + c.why.str() + "]").c_str());
  return c.ok;
}

// --- 2: Littlewood-Paley suite -------------------------------------------

// L^inf of a sparse spectral field by direct evaluation over the grid,
// summing only the nonzero modes.  Independent of the FFT path.
double direct_linf(const SpectralField& f) {
  const int n = f.grid.n;
  struct Mode {
    double k0, k1, k2;
    cplx z;
  };
  std::vector<Mode> modes;
  for (int a0 = 0; a0 < n; ++a0) {
    for (int a1 = 0; a1 < n; ++a1) {
      for (int a2 = 0; a2 < n; ++a2) {
        const cplx z = f.at(0, a0, a1, a2);
        if (z == cplx(0.0)) continue;
        modes.push_back({double(f.grid.wavenumber(a0)),
                         double(f.grid.wavenumber(a1)),
                         double(f.grid.wavenumber(a2)), z});
      }
    }
  }
  const double h = kBoxLength / n;
  double best = 0.0;
  for (int i0 = 0; i0 < n; ++i0) {
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        cplx acc = 0.0;
        for (const Mode& m : modes) {
          acc += m.z * std::exp(cplx(
                     0.0, m.k0 * i0 * h + m.k1 * i1 * h + m.k2 * i2 * h));
        }
        best = std::max(best, std::abs(acc.real()));
      }
    }
  }
  return best;
}

bool criterion_littlewood_paley() {
  Checker c;
  Grid g = Grid::make(16);
  LPBank bank = build_bank(g);

  // Partition of unity over every retained nonzero mode.
  double worst_partition = 0.0;
  for (int a0 = 0; a0 < g.n; ++a0) {
    for (int a1 = 0; a1 < g.n; ++a1) {
      for (int a2 = 0; a2 < g.n; ++a2) {
        if (a0 == 0 && a1 == 0 && a2 == 0) continue;
        const size_t idx =
            (static_cast<size_t>(a0) * g.n + a1) * g.n + a2;
        double sum = 0.0;
        for (int j = bank.j_min; j <= bank.j_max; ++j) {
          sum += bank.shell(j)[idx];
        }
        worst_partition = std::max(worst_partition, std::abs(sum - 1.0));
      }
    }
  }
  c.require(worst_partition <= 1e-12, "partition of unity above 1e-12");

  double worst_recon = 0.0;
  double worst_besov = 0.0;
  bool quasi_exact = true;
  for (int trial = 0; trial < 20; ++trial) {
    const int kmax = 2 + trial % 3;
    SpectralField f =
        testutil::random_band_field(g, 1, kmax, 1000 + trial);

    // Reconstruction: sum of blocks returns the field.
    SpectralField acc(g, 1);
    for (int j = bank.j_min; j <= bank.j_max; ++j) {
      axpy(1.0, dyadic_block(f, j, bank), acc);
    }
    worst_recon = std::max(worst_recon,
                           l2_diff(acc, f) / l2_norm_spectral(f));

    // Exact quasi-orthogonality: disjoint shell supports for |j - l| >= 2.
    for (int j = bank.j_min; j <= bank.j_max; ++j) {
      for (int l = j + 2; l <= bank.j_max; ++l) {
        if (inner_product(dyadic_block(f, j, bank),
                          dyadic_block(f, l, bank)) != 0.0) {
          quasi_exact = false;
        }
      }
    }

    // Besov B^0_{inf,inf} against a brute-force block oracle built from the
    // closed-form profile, evaluated without the FFT.
    double oracle = 0.0;
    for (int j = bank.j_min; j <= bank.j_max; ++j) {
      SpectralField block(g, 1);
      for (int a0 = 0; a0 < g.n; ++a0) {
        for (int a1 = 0; a1 < g.n; ++a1) {
          for (int a2 = 0; a2 < g.n; ++a2) {
            const double k0 = g.wavenumber(a0), k1 = g.wavenumber(a1),
                         k2 = g.wavenumber(a2);
            const double r =
                std::ldexp(std::sqrt(k0 * k0 + k1 * k1 + k2 * k2), -j);
            block.at(0, a0, a1, a2) =
                f.at(0, a0, a1, a2) * LPBank::phi_profile(r);
          }
        }
      }
      block.at(0, 0, 0, 0) = 0.0;
      oracle = std::max(oracle, direct_linf(block));
    }
    const double got = besov_norm(f, {0.0, kInfExponent, kInfExponent}, bank);
    worst_besov = std::max(worst_besov, rel_err(got, oracle));
  }
  c.require(worst_recon <= 1e-10, "reconstruction above 1e-10");
  c.require(quasi_exact, "quasi-orthogonality not exact");
  c.require(worst_besov <= 1e-10, "Besov oracle mismatch above 1e-10");

  std::printf("criterion 2 (Littlewood-Paley suite): %s%s\n",
              c.ok ? "PASS" : "FAIL",
              c.ok ? "" : (" [" + c.why.str() + "]").c_str());
  return c.ok;
}

// --- 3: Bony identity ------------------------------------------------------

bool criterion_bony() {
  Checker c;
  Grid g = Grid::make(32);
  LPBank bank = build_bank(g);
  const int kmax = g.n / 6;  // top frequency N/6
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    SpectralField f =
        testutil::random_band_field(g, 1, kmax, 2000 + 2 * trial);
    SpectralField h =
        testutil::random_band_field(g, 1, kmax, 2001 + 2 * trial);
    worst = std::max(worst, bony_identity_check(f, h, bank).ratio);
  }
  c.require(worst <= 1e-8, "Bony residual above 1e-8");
  std::printf("criterion 3 (Bony identity residual): %s%s\n",
              c.ok ? "PASS" : "FAIL",
              c.ok ? "" : (" [" + c.why.str() + "]").c_str());
  return c.ok;
}

// --- 4: single-mode Besov pin ---------------------------------------------

bool criterion_single_mode_besov() {
  Checker c;
  Grid g = Grid::make(32);
  LPBank bank = build_bank(g);
  const double chi1 = LPBank::chi(1.0);
  for (double amp : {1.0, 1.7, 0.01}) {
    SpectralField f =
        testutil::single_mode(g, {1, 0, 0}, cplx(0.0, -0.5 * amp));
    const double b0 = besov_norm(f, {0.0, kInfExponent, kInfExponent}, bank);
    c.require(b0 >= 0.5 * amp && b0 <= amp,
              "single-mode norm outside [amp/2, amp]");
    c.require(rel_err(b0, chi1 * amp) <= 1e-12,
              "single-mode norm differs from the phi-pinned value");
  }
  std::printf("criterion 4 (single-mode Besov pin): %s%s\n",
              c.ok ? "PASS" : "FAIL",
              c.ok ? "" : (" [" + c.why.str() + "]").c_str());
  return c.ok;
}

// --- 5: inequality corpus --------------------------------------------------

bool criterion_corpus() {
  Checker c;
  const double t0 = now_seconds();

  CorpusSpec spec32;  // defaults: grids {32}, 5 families, 4 each, seed 12345
  RatioReport r32 = run_corpus(spec32);
  RatioReport r32b = run_corpus(spec32);
  c.require(r32.entries.size() == r32b.entries.size(),
            "corpus repeat changed shape");
  bool identical = true;
  for (size_t i = 0; i < r32.entries.size(); ++i) {
    identical = identical && r32.entries[i].ratio == r32b.entries[i].ratio &&
                r32.entries[i].lhs == r32b.entries[i].lhs;
  }
  c.require(identical, "corpus repeat not bit-identical");

  auto sum32 = r32.summary();
  for (const auto& [id, s] : sum32) {
    c.require(std::isfinite(s.max_ratio), id + " max ratio not finite");
  }

  // Scaling invariance of each measured ratio under f -> 17 f, on a corpus
  // member.  log_sobolev_b is inhomogeneous by construction (the +1 and the
  // ln+ argument) and is exercised through its flat-branch unit oracle
  // instead; log_sobolev_a is invariant once the split index is pinned.
  {
    CorpusSpec one = spec32;
    one.count_per_family = 1;
    one.families = {"random_band"};
    std::vector<CorpusMember> members = generate_corpus(one);
    Grid g = Grid::make(32);
    LPBank bank = build_bank(g);
    const CorpusMember& m = members.front();
    SpectralField fs = m.scalar, vs = m.vec;
    scale(fs, 17.0);
    scale(vs, 17.0);

    double worst = 0.0;
    auto cmp = [&](double a, double b) {
      worst = std::max(worst, rel_err(a, b));
    };
    auto bern_a = bernstein_check(m.scalar, 1, 1, 2.0, kInfExponent, bank);
    auto bern_b = bernstein_check(fs, 1, 1, 2.0, kInfExponent, bank);
    for (size_t i = 0; i < bern_a.size(); ++i) {
      cmp(bern_a[i].ratio, bern_b[i].ratio);
    }
    cmp(log_sobolev_check(m.scalar, 2.0, bank, 3)[0].ratio,
        log_sobolev_check(fs, 2.0, bank, 3)[0].ratio);
    cmp(machihara_ozawa_check(m.vec, bank).ratio,
        machihara_ozawa_check(vs, bank).ratio);
    cmp(gn_quarter_check(m.scalar).ratio, gn_quarter_check(fs).ratio);
    cmp(interpolation_check(m.scalar, 2, 1, 3, 0.5, 2.0, 2.0).ratio,
        interpolation_check(fs, 2, 1, 3, 0.5, 2.0, 2.0).ratio);
    cmp(trilinear_check(gradient(m.scalar), m.scalar, m.scalar).ratio,
        trilinear_check(gradient(fs), fs, fs).ratio);
    c.require(worst <= 1e-12, "ratio scaling invariance above 1e-12");
  }

  // Interpolation is the Parseval equality case on single modes with
  // q = r = 2.
  {
    Grid g = Grid::make(32);
    for (auto k : {std::array<int, 3>{1, 0, 0}, std::array<int, 3>{2, 1, 0},
                   std::array<int, 3>{3, 2, 1}}) {
      SpectralField m = testutil::single_mode(g, k, cplx(0.3, -0.4));
      const double r =
          interpolation_check(m, 2, 1, 3, 0.5, 2.0, 2.0).ratio;
      c.require(std::abs(r - 1.0) <= 1e-12,
                "single-mode interpolation ratio differs from 1");
    }
  }

  // Trilinear form vanishes for divergence-free f with g = h.
  {
    Grid g = Grid::make(32);
    SpectralField f =
        leray_project(testutil::random_band_field(g, 3, 4, 3001));
    SpectralField s = testutil::random_band_field(g, 1, 4, 3003);
    c.require(trilinear_check(f, s, s).ratio <= 1e-10,
              "trilinear ratio above 1e-10 for divergence-free f");
  }

  // Grid refinement: max ratios shift by at most 20% at N = 64.  The Bony
  // residual is excluded: it is a rounding-level quantity (checked above
  // against its own 1e-8 budget), not a norm ratio with a grid limit.
  CorpusSpec spec64 = spec32;
  spec64.grids = {64};
  auto sum64 = run_corpus(spec64).summary();
  for (const auto& [id, s] : sum32) {
    if (id == "bony_identity") continue;
    auto it = sum64.find(id);
    c.require(it != sum64.end(), id + " missing at N = 64");
    if (it == sum64.end()) continue;
    c.require(rel_err(s.max_ratio, it->second.max_ratio) <= 0.20,
              id + " max ratio shifted more than 20% at N = 64");
  }

  c.require(now_seconds() - t0 < 300.0, "corpus criterion took >= 5 min");
  std::printf("criterion 5 (inequality corpus): %s%s\n",
              c.ok ? "PASS" : "FAIL",
              c.ok ? "" : (" [" + c.why.str() + "]").c_str());
  return c.ok;
}

// --- 6: monitor suite ------------------------------------------------------

bool criterion_monitor() {
  Checker c;
  const double t0 = now_seconds();

  SolverConfig cfg;
  cfg.n = 32;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.ic_kind = "taylor_green";
  cfg.sample_every = 10;
  LPBank bank = build_bank(Grid::make(cfg.n));
  RunResult run = run_simulation(cfg, bank);
  const auto& s = run.report.samples;
  c.require(!run.blew_up && s.size() == 101, "run did not complete");

  bool cum_monotone = true, theta_monotone = true, f_monotone = true;
  for (size_t i = 1; i < s.size(); ++i) {
    cum_monotone = cum_monotone && s[i].criterion_cum >= s[i - 1].criterion_cum;
    theta_monotone =
        theta_monotone && s[i].l2_theta <= s[i - 1].l2_theta + 1e-14;
  }
  for (size_t i = 1; i < run.report.f_series.size(); ++i) {
    f_monotone =
        f_monotone && run.report.f_series[i] >= run.report.f_series[i - 1];
  }
  c.require(cum_monotone, "criterion_cum not nondecreasing");
  c.require(theta_monotone, "theta L2 not nonincreasing");
  c.require(f_monotone, "F(t) not nondecreasing");

  bool tail_monotone = true;
  double prev_tail = criterion_tail(run.report, 0.0);
  for (double t = 0.1; t < 1.0; t += 0.1) {
    const double tail = criterion_tail(run.report, t);
    tail_monotone = tail_monotone && tail <= prev_tail + 1e-15;
    prev_tail = tail;
  }
  c.require(tail_monotone, "criterion_tail not nonincreasing in T0");

  double worst_resid = 0.0;
  for (double r : run.report.energy_residuals) {
    worst_resid = std::max(worst_resid, r);
  }
  c.require(worst_resid <= 1000.0 * cfg.dt * cfg.dt,
            "energy residual above C dt^2");

  // dt-halving convergence of the residual over a short window.
  auto max_resid = [&](double dt) {
    SimState st = initial_condition("taylor_green", 1.0, 0, Grid::make(32));
    double worst = 0.0;
    const long steps = std::lround(0.05 / dt);
    for (long i = 0; i < steps; ++i) {
      SimState nxt = step(st, dt).state;
      worst = std::max(worst, energy_residual(st, nxt));
      st = nxt;
    }
    return worst;
  };
  const double r1 = max_resid(1e-3);
  const double r2 = max_resid(5e-4);
  c.require(r1 / r2 >= 4.0 * 0.8 && r1 / r2 <= 4.0 * 1.2,
            "residual halving ratio outside 4 +- 20%");

  c.require(now_seconds() - t0 < 60.0, "monitor criterion took >= 1 min");
  std::printf("criterion 6 (monitor suite): %s%s\n",
              c.ok ? "PASS" : "FAIL",
              c.ok ? "" : (" [" + c.why.str() + "]").c_str());
  return c.ok;
}

// --- 7 and 8: determinism and serialization --------------------------------

struct TwoRuns {
  fs::path root, d1, d2;
  std::string config_path;
};

TwoRuns make_two_runs() {
  TwoRuns t;
  t.root = fs::temp_directory_path() / "bsq_acceptance";
  fs::remove_all(t.root);
  fs::create_directories(t.root);
  t.config_path = (t.root / "run.ini").string();
  {
    std::ofstream out(t.config_path);
    out << "[grid]\nn = 32\n[solver]\nic_kind = random_band\nt_end = 0.05\n"
        << "dt = 1e-3\nrng_seed = 7\n[monitor]\nsample_every = 10\n"
        << "snapshot_every = 25\n";
  }
  t.d1 = t.root / "run1";
  t.d2 = t.root / "run2";
  for (const fs::path& dir : {t.d1, t.d2}) {
    const std::string d = dir.string();
    const char* argv[] = {"bsq",           "simulate",
                          "--config",      t.config_path.c_str(),
                          "--output-dir",  d.c_str()};
    if (dispatch(6, argv) != 0) throw std::runtime_error("simulate failed");
  }
  return t;
}

bool criterion_determinism(const TwoRuns& t) {
  Checker c;
  for (const char* name : {"series.ndjson", "series.csv", "snapshot_25.bsvf",
                           "snapshot_50.bsvf", "final.bsvf"}) {
    const std::string a = slurp(t.d1 / name);
    const std::string b = slurp(t.d2 / name);
    c.require(!a.empty(), std::string(name) + " missing or empty");
    c.require(a == b, std::string(name) + " differs between identical runs");
  }
  std::printf("criterion 7 (determinism): %s%s\n", c.ok ? "PASS" : "FAIL",
              c.ok ? "" : (" [" + c.why.str() + "]").c_str());
  return c.ok;
}

bool criterion_serialization(const TwoRuns& t) {
  Checker c;

  // Config round trip: parse . render is the identity on rendered text.
  ParseResult p1 = parse_config(slurp(t.config_path));
  c.require(p1.ok(), "run config failed to parse");
  const std::string rendered = render_config(p1.config);
  ParseResult p2 = parse_config(rendered);
  c.require(p2.ok() && render_config(p2.config) == rendered,
            "config round trip not exact");

  // Snapshot round trip: bytes -> state -> bytes is the identity.
  const fs::path snap = t.d1 / "final.bsvf";
  std::string raw = slurp(snap);
  SimState state = read_snapshot_file(snap.string());
  std::vector<unsigned char> again = write_snapshot(state);
  c.require(again.size() == raw.size() &&
                std::equal(again.begin(), again.end(),
                           reinterpret_cast<const unsigned char*>(raw.data())),
            "snapshot round trip not bit-exact");

  // analyze reproduces the in-run sample.
  const std::string out_csv = (t.root / "analyzed.csv").string();
  const std::string snap_path = snap.string();
  const char* argv[] = {"bsq",              "analyze", "--snapshot",
                        snap_path.c_str(),  "--out",   out_csv.c_str()};
  c.require(dispatch(6, argv) == 0, "analyze failed");
  std::istringstream a_in(slurp(out_csv));
  std::istringstream s_in(slurp(t.d1 / "series.csv"));
  std::vector<NormSample> analyzed = read_series_csv(a_in);
  std::vector<NormSample> series = read_series_csv(s_in);
  c.require(analyzed.size() == 1 && !series.empty(), "series missing");
  if (analyzed.size() == 1 && !series.empty()) {
    const NormSample& a = analyzed[0];
    const NormSample& b = series.back();
    double worst = 0.0;
    for (double pair : {rel_err(a.l2_u, b.l2_u), rel_err(a.l2_theta, b.l2_theta),
                        rel_err(a.h1_u, b.h1_u), rel_err(a.h2_u, b.h2_u),
                        rel_err(a.besov_grad_u, b.besov_grad_u),
                        rel_err(a.besov0_u, b.besov0_u),
                        rel_err(a.bmo_u, b.bmo_u)}) {
      worst = std::max(worst, pair);
    }
    c.require(worst <= 1e-12, "analyze sample differs beyond 1e-12");
  }

  std::printf("criterion 8 (serialization): %s%s\n", c.ok ? "PASS" : "FAIL",
              c.ok ? "" : (" [" + c.why.str() + "]").c_str());
  return c.ok;
}

}  // namespace

int main() {
  now_seconds();  // pin the clock origin
  int failures = 0;
  auto tally = [&](bool ok) {
    if (!ok) ++failures;
  };
  try {
    tally(criterion_exact_solutions());
    tally(criterion_littlewood_paley());
    tally(criterion_bony());
    tally(criterion_single_mode_besov());
    tally(criterion_corpus());
    tally(criterion_monitor());
    TwoRuns runs = make_two_runs();
    tally(criterion_determinism(runs));
    tally(criterion_serialization(runs));
    fs::remove_all(runs.root);
  } catch (const std::exception& e) {
    std::cerr << "acceptance aborted: " << e.what() << "\n";
    return 99;
  }
  std::printf("%d/8 criteria passed\n", 8 - failures);
  return failures;
}
