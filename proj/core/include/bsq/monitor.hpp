#pragma once

#include <optional>
#include <vector>

#include "bsq/lp.hpp"
#include "bsq/solver.hpp"

namespace bsq {

/// One time-stamped record of every monitored norm plus the running
/// criterion integrals (trapezoid quadrature on the sampling grid).
struct NormSample {
  double t = 0.0;
  double l2_u = 0.0;
  double l2_theta = 0.0;
  double h1_u = 0.0;      // ||grad u||_{L^2}
  double h1_theta = 0.0;
  double h2_u = 0.0;      // ||Lap u||_{L^2}
  double h2_theta = 0.0;
  double besov_grad_u = 0.0;  // ||grad u||_{B^{-1}_{inf,inf}}
  double besov0_u = 0.0;      // ||u||_{B^0_{inf,inf}}
  double bmo_u = 0.0;
  double criterion_cum = 0.0;   // int_0^t besov_grad_u^2
  double criterion0_cum = 0.0;  // int_0^t besov0_u^2
};

/// Full H^2 norm squared from the sampled pieces: l2^2 + h1^2 + h2^2.
double h2_full_sq(double l2, double h1, double h2);

/// Along-trajectory report: samples plus derived series.
struct MonitorReport {
  std::vector<NormSample> samples;
  /// Running max of ||u||_{H^2}^2 + ||theta||_{H^2}^2 from the first sample.
  std::vector<double> f_series;
  /// Discrete energy-balance residual per sampled interval (empty entries
  /// when sampling cadence > 1 step are simply not recorded).
  std::vector<double> energy_residuals;
};

NormSample sample_norms(const SimState& state, const LPBank& bank,
                        const NormSample* prev);

MonitorReport make_report(std::vector<NormSample> samples,
                          std::vector<double> energy_residuals = {});

/// Trapezoid integral of besov_grad_u^2 over [t0, T]; nonincreasing in t0.
/// Throws std::out_of_range when t0 lies outside the sampled range.
double criterion_tail(const MonitorReport& report, double t0);

/// max over samples tau in [t0, t] of ||u||_{H^2}^2 + ||theta||_{H^2}^2.
/// Throws std::invalid_argument on an empty window.
double f_monitor(const MonitorReport& report, double t0, double t);

/// |d/dt E + nu ||grad u||^2 + kappa ||grad theta||^2 - <theta, u_3>| for
/// consecutive states dt apart, E = (||u||^2 + ||theta||^2)/2, with the
/// rate terms averaged over the two endpoints.
double energy_residual(const SimState& prev, const SimState& next);

struct GronwallPoint {
  double t = 0.0;
  bool defined = false;
  double c = 0.0;
};

/// Smallest C(t) >= 0 with d/dt(h1_u^2 + h1_theta^2) <=
/// C (1 + bmo_u^2)(h1_u^2 + h1_theta^2), finite-difference derivative over
/// samples at t >= t0.  Entries with vanishing denominator are undefined.
std::vector<GronwallPoint> gronwall_report(const MonitorReport& report,
                                           double t0);

/// Outcome of a monitored run.
struct RunResult {
  MonitorReport report;
  std::vector<SimState> snapshots;
  std::vector<long> snapshot_steps;
  SimState final_state;
  bool blew_up = false;
  double blowup_time = 0.0;
  bool cfl_warned = false;
};

/// Time-step a trajectory from the configured initial condition, sampling
/// through the monitor at the configured cadence.  Deterministic for a
/// fixed seed.  Non-finite fields stop the run with blew_up set and the
/// series preserved up to the last finite sample.
RunResult run_simulation(const SolverConfig& config, const LPBank& bank);

}  // namespace bsq
