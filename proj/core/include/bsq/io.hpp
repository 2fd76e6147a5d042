#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bsq/ineq.hpp"
#include "bsq/monitor.hpp"
#include "bsq/solver.hpp"

namespace bsq {

/// Parsed run configuration: solver, monitoring, corpus, and output paths.
struct RunConfig {
  SolverConfig solver;
  CorpusSpec corpus;
  std::string output_dir = "out";
};

struct ConfigError {
  std::string where;  // "section.key" or "section"
  std::string message;
};

/// INI-style text with sections [grid], [solver], [monitor], [corpus].
/// Every key has a documented default; unknown sections or keys are
/// rejected.  All errors are collected, not just the first.
struct ParseResult {
  RunConfig config;
  std::vector<ConfigError> errors;
  bool ok() const { return errors.empty(); }
};

ParseResult parse_config(const std::string& text);

/// Render a config so that parse(render(c)) == c.
std::string render_config(const RunConfig& config);

/// Fixed CSV column order for the series files.
extern const char* const kSeriesColumns[12];

/// One NDJSON object per sample, keys matching the NormSample fields,
/// floats as shortest round-trip decimals.
void write_series_ndjson(const std::vector<NormSample>& samples,
                         std::ostream& out);

/// CSV with the fixed column order t, l2_u, l2_theta, h1_u, h1_theta,
/// h2_u, h2_theta, besov_grad_u, besov0_u, bmo_u, criterion_cum,
/// criterion0_cum.
void write_series_csv(const std::vector<NormSample>& samples,
                      std::ostream& out);

std::vector<NormSample> read_series_csv(std::istream& in);

/// Binary snapshot: header (magic "BSVF", version u32, N u32, component
/// count u32, t f64, nu f64, kappa f64) then little-endian (re, im) f64
/// pairs in lexicographic (component, k1, k2, k3) order.  Components are
/// u1, u2, u3, theta.
std::vector<unsigned char> write_snapshot(const SimState& state);

/// Validates magic, version, and byte length; throws std::runtime_error
/// with a distinct message for bad magic, version mismatch, truncation.
SimState read_snapshot(const std::vector<unsigned char>& bytes);

void write_snapshot_file(const SimState& state, const std::string& path);
SimState read_snapshot_file(const std::string& path);

/// Per-inequality CSVs (columns family, grid, lhs, rhs_core, ratio) plus a
/// summary.csv, written under dir.  Returns the file names written.
std::vector<std::string> write_ratio_report(const RatioReport& report,
                                            const std::string& dir);

/// Shortest round-trip decimal for a double.
std::string format_double(double x);

/// Subcommand dispatch for the bsq tool: simulate, analyze, verify,
/// decompose.  Returns the process exit code (0 ok, 1 validation error,
/// 2 runtime abort).
int dispatch(int argc, const char* const* argv);

}  // namespace bsq
