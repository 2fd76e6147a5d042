#include "bsq/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bsq/norms.hpp"
#include "bsq/operators.hpp"

namespace bsq {

double h2_full_sq(double l2, double h1, double h2) {
  return l2 * l2 + h1 * h1 + h2 * h2;
}

NormSample sample_norms(const SimState& state, const LPBank& bank,
                        const NormSample* prev) {
  if (!(state.u.grid == bank.grid)) {
    throw std::invalid_argument("sample_norms: grid mismatch with bank");
  }
  NormSample s;
  s.t = state.t;
  s.l2_u = l2_norm_spectral(state.u);
  s.l2_theta = l2_norm_spectral(state.theta);
  s.h1_u = hm_seminorm_spectral(state.u, 1);
  s.h1_theta = hm_seminorm_spectral(state.theta, 1);
  s.h2_u = hm_seminorm_spectral(state.u, 2);
  s.h2_theta = hm_seminorm_spectral(state.theta, 2);
  s.besov_grad_u = grad_besov_minus1(state.u, bank);
  s.besov0_u =
      besov_norm(state.u, {0.0, kInfExponent, kInfExponent}, bank);
  s.bmo_u = bmo_oscillation_norm(state.u);
  if (prev) {
    const double dt = s.t - prev->t;
    s.criterion_cum = prev->criterion_cum +
                      0.5 * dt *
                          (prev->besov_grad_u * prev->besov_grad_u +
                           s.besov_grad_u * s.besov_grad_u);
    s.criterion0_cum = prev->criterion0_cum +
                       0.5 * dt *
                           (prev->besov0_u * prev->besov0_u +
                            s.besov0_u * s.besov0_u);
  }
  return s;
}

MonitorReport make_report(std::vector<NormSample> samples,
                          std::vector<double> energy_residuals) {
  MonitorReport r;
  r.samples = std::move(samples);
  r.energy_residuals = std::move(energy_residuals);
  r.f_series.reserve(r.samples.size());
  double running = 0.0;
  for (const NormSample& s : r.samples) {
    running = std::max(
        running, h2_full_sq(s.l2_u, s.h1_u, s.h2_u) +
                     h2_full_sq(s.l2_theta, s.h1_theta, s.h2_theta));
    r.f_series.push_back(running);
  }
  return r;
}

namespace {

// criterion_cum linearly interpolated at t (exact at sample times).
double cum_at(const MonitorReport& report, double t) {
  const auto& s = report.samples;
  if (s.empty() || t < s.front().t || t > s.back().t) {
    throw std::out_of_range("criterion_tail: T0 outside sampled range");
  }
  for (size_t i = 1; i < s.size(); ++i) {
    if (t <= s[i].t) {
      const double span = s[i].t - s[i - 1].t;
      const double w = span > 0.0 ? (t - s[i - 1].t) / span : 0.0;
      return s[i - 1].criterion_cum +
             w * (s[i].criterion_cum - s[i - 1].criterion_cum);
    }
  }
  return s.back().criterion_cum;
}

}  // namespace

double criterion_tail(const MonitorReport& report, double t0) {
  return report.samples.back().criterion_cum - cum_at(report, t0);
}

double f_monitor(const MonitorReport& report, double t0, double t) {
  double mx = 0.0;
  bool seen = false;
  for (const NormSample& s : report.samples) {
    if (s.t < t0 || s.t > t) continue;
    seen = true;
    mx = std::max(mx, h2_full_sq(s.l2_u, s.h1_u, s.h2_u) +
                          h2_full_sq(s.l2_theta, s.h1_theta, s.h2_theta));
  }
  if (!seen) throw std::invalid_argument("f_monitor: empty sample window");
  return mx;
}

double energy_residual(const SimState& prev, const SimState& next) {
  const double dt = next.t - prev.t;
  if (!(dt > 0.0)) {
    throw std::invalid_argument("energy_residual: states must be dt > 0 apart");
  }
  auto energy = [](const SimState& s) {
    const double lu = l2_norm_spectral(s.u);
    const double lt = l2_norm_spectral(s.theta);
    return 0.5 * (lu * lu + lt * lt);
  };
  auto rate = [](const SimState& s) {
    const double gu = hm_seminorm_spectral(s.u, 1);
    const double gt = hm_seminorm_spectral(s.theta, 1);
    // Buoyancy work <theta, u_3>.
    double work = 0.0;
    for (long i = 0; i < s.u.grid.size(); ++i) {
      work += (s.theta.comp(0)[i] * std::conj(s.u.comp(2)[i])).real();
    }
    work *= kBoxVolume;
    return s.nu * gu * gu + s.kappa * gt * gt - work;
  };
  return std::abs((energy(next) - energy(prev)) / dt +
                  0.5 * (rate(prev) + rate(next)));
}

std::vector<GronwallPoint> gronwall_report(const MonitorReport& report,
                                           double t0) {
  std::vector<GronwallPoint> out;
  const auto& s = report.samples;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i].t < t0) continue;
    GronwallPoint p;
    p.t = s[i].t;
    const double y = s[i].h1_u * s[i].h1_u + s[i].h1_theta * s[i].h1_theta;
    const double denom = (1.0 + s[i].bmo_u * s[i].bmo_u) * y;
    // Centered finite difference where possible, one-sided at the ends.
    double dy = 0.0;
    bool have_dy = false;
    auto yat = [&](size_t k) {
      return s[k].h1_u * s[k].h1_u + s[k].h1_theta * s[k].h1_theta;
    };
    if (i > 0 && i + 1 < s.size()) {
      dy = (yat(i + 1) - yat(i - 1)) / (s[i + 1].t - s[i - 1].t);
      have_dy = true;
    } else if (i + 1 < s.size()) {
      dy = (yat(i + 1) - yat(i)) / (s[i + 1].t - s[i].t);
      have_dy = true;
    } else if (i > 0) {
      dy = (yat(i) - yat(i - 1)) / (s[i].t - s[i - 1].t);
      have_dy = true;
    }
    if (!have_dy || denom <= 0.0) {
      p.defined = false;
    } else {
      p.defined = true;
      p.c = std::max(0.0, dy / denom);
    }
    out.push_back(p);
  }
  return out;
}

RunResult run_simulation(const SolverConfig& config, const LPBank& bank) {
  RunResult res;
  Grid grid = Grid::make(config.n);
  SimState state = initial_condition(config.ic_kind, config.ic_amplitude,
                                     config.rng_seed, grid, config.nu,
                                     config.kappa);

  std::vector<NormSample> samples;
  std::vector<double> residuals;
  samples.push_back(sample_norms(state, bank, nullptr));

  const long steps = std::lround(config.t_end / config.dt);
  for (long i = 1; i <= steps; ++i) {
    StepResult sr;
    try {
      sr = step(state, config.dt);
    } catch (const std::runtime_error&) {
      // Non-finite values can trip the transform symmetry check inside
      // step before the explicit finiteness test below sees them.
      res.blew_up = true;
      res.blowup_time = state.t + config.dt;
      break;
    }
    res.cfl_warned = res.cfl_warned || sr.cfl_warning;
    if (!all_finite(sr.state.u) || !all_finite(sr.state.theta)) {
      res.blew_up = true;
      res.blowup_time = sr.state.t;
      break;
    }
    SimState prev = std::move(state);
    state = std::move(sr.state);
    // Residual of the discrete energy balance over the raw step.
    residuals.push_back(energy_residual(prev, state));
    const bool sample_now =
        i == steps ||
        (config.sample_every > 0 && i % config.sample_every == 0);
    if (sample_now) {
      samples.push_back(sample_norms(state, bank, &samples.back()));
    }
    if (config.snapshot_every > 0 && i % config.snapshot_every == 0) {
      res.snapshots.push_back(state);
      res.snapshot_steps.push_back(i);
    }
  }
  res.report = make_report(std::move(samples), std::move(residuals));
  res.final_state = state;
  return res;
}

}  // namespace bsq
