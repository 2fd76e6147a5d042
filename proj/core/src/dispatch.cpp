#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bsq/io.hpp"
#include "bsq/lp.hpp"
#include "bsq/monitor.hpp"

namespace bsq {
namespace {

namespace fs = std::filesystem;

RunConfig load_config_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  ParseResult parsed = parse_config(ss.str());
  if (!parsed.ok()) {
    std::ostringstream msg;
    for (const ConfigError& e : parsed.errors) {
      msg << e.where << ": " << e.message << "\n";
    }
    throw CLI::ValidationError("config", msg.str());
  }
  return parsed.config;
}

int cmd_simulate(const std::string& config_path,
                 const std::string& output_override) {
  RunConfig cfg = load_config_or_throw(config_path);
  if (!output_override.empty()) cfg.output_dir = output_override;
  fs::create_directories(cfg.output_dir);

  LPBank bank = build_bank(Grid::make(cfg.solver.n));
  RunResult run = run_simulation(cfg.solver, bank);

  {
    std::ofstream nd(fs::path(cfg.output_dir) / "series.ndjson");
    write_series_ndjson(run.report.samples, nd);
    std::ofstream csv(fs::path(cfg.output_dir) / "series.csv");
    write_series_csv(run.report.samples, csv);
  }
  for (size_t i = 0; i < run.snapshots.size(); ++i) {
    std::ostringstream name;
    name << "snapshot_" << run.snapshot_steps[i] << ".bsvf";
    write_snapshot_file(run.snapshots[i],
                        (fs::path(cfg.output_dir) / name.str()).string());
  }
  write_snapshot_file(run.final_state,
                      (fs::path(cfg.output_dir) / "final.bsvf").string());

  if (run.cfl_warned) {
    std::cerr << "warning: CFL number exceeded 0.5 during the run\n";
  }
  if (run.blew_up) {
    std::cerr << "run aborted: non-finite values at t = "
              << format_double(run.blowup_time) << "; last sample at t = "
              << format_double(run.report.samples.empty()
                                   ? 0.0
                                   : run.report.samples.back().t)
              << "\n";
    return 2;
  }
  std::cout << "wrote " << run.report.samples.size() << " samples to "
            << cfg.output_dir << "\n";
  return 0;
}

int cmd_analyze(const std::string& snapshot_path, const std::string& out_path) {
  SimState state = read_snapshot_file(snapshot_path);
  LPBank bank = build_bank(state.u.grid);
  NormSample s = sample_norms(state, bank, nullptr);
  std::vector<NormSample> one = {s};
  if (out_path.empty()) {
    write_series_csv(one, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for write: " + out_path);
    write_series_csv(one, out);
  }
  return 0;
}

int cmd_verify(const std::string& config_path,
               const std::string& output_override) {
  RunConfig cfg;
  if (!config_path.empty()) cfg = load_config_or_throw(config_path);
  if (!output_override.empty()) cfg.output_dir = output_override;

  RatioReport report = run_corpus(cfg.corpus);
  std::vector<std::string> files = write_ratio_report(report, cfg.output_dir);
  for (const auto& [id, s] : report.summary()) {
    std::cout << id << ": max ratio " << format_double(s.max_ratio) << " over "
              << s.entries << " entries (" << s.skipped << " skipped)\n";
  }
  std::cout << "wrote " << files.size() << " files to " << cfg.output_dir
            << "\n";
  return 0;
}

int cmd_decompose(const std::string& snapshot_path, const std::string& field,
                  const std::string& out_path) {
  SimState state = read_snapshot_file(snapshot_path);
  const SpectralField& f = field == "theta" ? state.theta : state.u;
  LPBank bank = build_bank(f.grid);
  DyadicDecomposition dec = decompose(f, bank);

  std::ostringstream csv;
  csv << "j,energy\n";
  for (size_t i = 0; i < dec.blocks.size(); ++i) {
    const double l2 = l2_norm_spectral(dec.blocks[i]);
    csv << (dec.j_min + static_cast<int>(i)) << ','
        << format_double(l2 * l2) << "\n";
  }
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for write: " + out_path);
    out << csv.str();
  }
  return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"Boussinesq pseudo-spectral simulator and Besov diagnostics"};
  app.require_subcommand(1);

  std::string config_path, output_dir, snapshot_path, out_path;
  std::string field = "u";

  CLI::App* sim = app.add_subcommand("simulate", "run a monitored trajectory");
  sim->add_option("--config", config_path, "run configuration file")
      ->required();
  sim->add_option("--output-dir", output_dir, "override [monitor] output_dir");

  CLI::App* ana =
      app.add_subcommand("analyze", "norm sample from a snapshot file");
  ana->add_option("--snapshot", snapshot_path, "snapshot file")->required();
  ana->add_option("--out", out_path, "CSV destination (default stdout)");

  CLI::App* ver =
      app.add_subcommand("verify", "run the inequality corpus checks");
  ver->add_option("--config", config_path, "run configuration file");
  ver->add_option("--output-dir", output_dir, "report directory");

  CLI::App* dec =
      app.add_subcommand("decompose", "per-shell energies of a snapshot");
  dec->add_option("--snapshot", snapshot_path, "snapshot file")->required();
  dec->add_option("--field", field, "u or theta")
      ->check(CLI::IsMember({"u", "theta"}));
  dec->add_option("--out", out_path, "CSV destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ExtrasError& e) {
    std::cerr << "error: " << e.what()
              << "\navailable subcommands: simulate, analyze, verify, "
                 "decompose\n";
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) return cmd_simulate(config_path, output_dir);
    if (ana->parsed()) return cmd_analyze(snapshot_path, out_path);
    if (ver->parsed()) return cmd_verify(config_path, output_dir);
    return cmd_decompose(snapshot_path, field, out_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bsq
