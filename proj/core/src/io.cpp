#include "bsq/io.hpp"

#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bsq {

const char* const kSeriesColumns[12] = {
    "t",       "l2_u",         "l2_theta",  "h1_u",
    "h1_theta", "h2_u",        "h2_theta",  "besov_grad_u",
    "besov0_u", "bmo_u",       "criterion_cum", "criterion0_cum"};

std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

double sample_field(const NormSample& s, int col) {
  switch (col) {
    case 0: return s.t;
    case 1: return s.l2_u;
    case 2: return s.l2_theta;
    case 3: return s.h1_u;
    case 4: return s.h1_theta;
    case 5: return s.h2_u;
    case 6: return s.h2_theta;
    case 7: return s.besov_grad_u;
    case 8: return s.besov0_u;
    case 9: return s.bmo_u;
    case 10: return s.criterion_cum;
    default: return s.criterion0_cum;
  }
}

void set_sample_field(NormSample& s, int col, double v) {
  switch (col) {
    case 0: s.t = v; break;
    case 1: s.l2_u = v; break;
    case 2: s.l2_theta = v; break;
    case 3: s.h1_u = v; break;
    case 4: s.h1_theta = v; break;
    case 5: s.h2_u = v; break;
    case 6: s.h2_theta = v; break;
    case 7: s.besov_grad_u = v; break;
    case 8: s.besov0_u = v; break;
    case 9: s.bmo_u = v; break;
    case 10: s.criterion_cum = v; break;
    default: s.criterion0_cum = v; break;
  }
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

const std::set<std::string> kKnownIcKinds = {"taylor_green", "shear",
                                             "buoyant_mode", "random_band"};
const std::set<std::string> kKnownFamilies = {
    "single_mode", "dyadic_shell", "gaussian_bump", "random_band",
    "taylor_green_slice"};

}  // namespace

ParseResult parse_config(const std::string& text) {
  ParseResult result;
  RunConfig& cfg = result.config;

  // section -> key -> raw value, in input order for error reporting.
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, std::map<std::string, std::string>> raw;
  const std::map<std::string, std::set<std::string>> known = {
      {"grid", {"n"}},
      {"solver",
       {"dt", "t_end", "ic_kind", "ic_amplitude", "rng_seed", "nu", "kappa"}},
      {"monitor", {"sample_every", "snapshot_every", "output_dir"}},
      {"corpus", {"grids", "families", "count_per_family", "rng_seed"}}};

  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        result.errors.push_back(
            {"line " + std::to_string(lineno), "malformed section header"});
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!known.count(section)) {
        result.errors.push_back({section, "unknown section"});
      }
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      result.errors.push_back(
          {"line " + std::to_string(lineno), "expected key = value"});
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      result.errors.push_back({key, "key outside any section"});
      continue;
    }
    auto it = known.find(section);
    if (it != known.end() && !it->second.count(key)) {
      result.errors.push_back({section + "." + key, "unknown key"});
      continue;
    }
    raw[section][key] = value;
  }

  auto get_double = [&](const std::string& sec, const std::string& key,
                        double& dst) {
    auto s = raw.find(sec);
    if (s == raw.end()) return;
    auto k = s->second.find(key);
    if (k == s->second.end()) return;
    try {
      size_t pos = 0;
      dst = std::stod(k->second, &pos);
      if (pos != k->second.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      result.errors.push_back({sec + "." + key,
                               "not a number: '" + k->second + "'"});
    }
  };
  auto get_int = [&](const std::string& sec, const std::string& key,
                     auto& dst) {
    auto s = raw.find(sec);
    if (s == raw.end()) return;
    auto k = s->second.find(key);
    if (k == s->second.end()) return;
    try {
      size_t pos = 0;
      long long v = std::stoll(k->second, &pos);
      if (pos != k->second.size()) throw std::invalid_argument("trailing");
      dst = static_cast<std::decay_t<decltype(dst)>>(v);
    } catch (const std::exception&) {
      result.errors.push_back({sec + "." + key,
                               "not an integer: '" + k->second + "'"});
    }
  };
  auto get_string = [&](const std::string& sec, const std::string& key,
                        std::string& dst) {
    auto s = raw.find(sec);
    if (s == raw.end()) return;
    auto k = s->second.find(key);
    if (k != s->second.end()) dst = k->second;
  };

  get_int("grid", "n", cfg.solver.n);
  get_double("solver", "dt", cfg.solver.dt);
  get_double("solver", "t_end", cfg.solver.t_end);
  get_string("solver", "ic_kind", cfg.solver.ic_kind);
  get_double("solver", "ic_amplitude", cfg.solver.ic_amplitude);
  get_int("solver", "rng_seed", cfg.solver.rng_seed);
  get_double("solver", "nu", cfg.solver.nu);
  get_double("solver", "kappa", cfg.solver.kappa);
  get_int("monitor", "sample_every", cfg.solver.sample_every);
  get_int("monitor", "snapshot_every", cfg.solver.snapshot_every);
  get_string("monitor", "output_dir", cfg.output_dir);
  get_int("corpus", "count_per_family", cfg.corpus.count_per_family);
  get_int("corpus", "rng_seed", cfg.corpus.rng_seed);
  if (raw.count("corpus") && raw["corpus"].count("grids")) {
    cfg.corpus.grids.clear();
    for (const std::string& g : split_csv_list(raw["corpus"]["grids"])) {
      try {
        cfg.corpus.grids.push_back(std::stoi(g));
      } catch (const std::exception&) {
        result.errors.push_back({"corpus.grids", "not an integer: '" + g + "'"});
      }
    }
  }
  if (raw.count("corpus") && raw["corpus"].count("families")) {
    cfg.corpus.families = split_csv_list(raw["corpus"]["families"]);
  }

  // Semantic validation, all failures collected.
  if (cfg.solver.n < 8 || cfg.solver.n % 2 != 0) {
    result.errors.push_back({"grid.n", "must be even and >= 8"});
  }
  if (!(cfg.solver.dt > 0.0)) {
    result.errors.push_back({"solver.dt", "must be positive"});
  }
  if (cfg.solver.t_end < 0.0) {
    result.errors.push_back({"solver.t_end", "must be nonnegative"});
  }
  if (!kKnownIcKinds.count(cfg.solver.ic_kind)) {
    result.errors.push_back(
        {"solver.ic_kind", "unknown kind '" + cfg.solver.ic_kind + "'"});
  }
  if (cfg.solver.sample_every < 0) {
    result.errors.push_back({"monitor.sample_every", "must be >= 0"});
  }
  if (cfg.solver.snapshot_every < 0) {
    result.errors.push_back({"monitor.snapshot_every", "must be >= 0"});
  }
  if (cfg.corpus.count_per_family < 0) {
    result.errors.push_back({"corpus.count_per_family", "must be >= 0"});
  }
  for (int g : cfg.corpus.grids) {
    if (g < 8 || g % 2 != 0) {
      result.errors.push_back({"corpus.grids", "grid sizes must be even >= 8"});
      break;
    }
  }
  for (const std::string& f : cfg.corpus.families) {
    if (!kKnownFamilies.count(f)) {
      result.errors.push_back({"corpus.families", "unknown family '" + f + "'"});
    }
  }
  return result;
}

std::string render_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[grid]\n";
  out << "n = " << cfg.solver.n << "\n\n";
  out << "[solver]\n";
  out << "dt = " << format_double(cfg.solver.dt) << "\n";
  out << "t_end = " << format_double(cfg.solver.t_end) << "\n";
  out << "ic_kind = " << cfg.solver.ic_kind << "\n";
  out << "ic_amplitude = " << format_double(cfg.solver.ic_amplitude) << "\n";
  out << "rng_seed = " << cfg.solver.rng_seed << "\n";
  out << "nu = " << format_double(cfg.solver.nu) << "\n";
  out << "kappa = " << format_double(cfg.solver.kappa) << "\n\n";
  out << "[monitor]\n";
  out << "sample_every = " << cfg.solver.sample_every << "\n";
  out << "snapshot_every = " << cfg.solver.snapshot_every << "\n";
  out << "output_dir = " << cfg.output_dir << "\n\n";
  out << "[corpus]\n";
  out << "grids = ";
  for (size_t i = 0; i < cfg.corpus.grids.size(); ++i) {
    out << (i ? "," : "") << cfg.corpus.grids[i];
  }
  out << "\n";
  out << "families = ";
  for (size_t i = 0; i < cfg.corpus.families.size(); ++i) {
    out << (i ? "," : "") << cfg.corpus.families[i];
  }
  out << "\n";
  out << "count_per_family = " << cfg.corpus.count_per_family << "\n";
  out << "rng_seed = " << cfg.corpus.rng_seed << "\n";
  return out.str();
}

void write_series_ndjson(const std::vector<NormSample>& samples,
                         std::ostream& out) {
  for (const NormSample& s : samples) {
    out << '{';
    for (int c = 0; c < 12; ++c) {
      if (c) out << ',';
      out << '"' << kSeriesColumns[c] << "\":" << format_double(sample_field(s, c));
    }
    out << "}\n";
  }
}

void write_series_csv(const std::vector<NormSample>& samples,
                      std::ostream& out) {
  for (int c = 0; c < 12; ++c) out << (c ? "," : "") << kSeriesColumns[c];
  out << "\n";
  for (const NormSample& s : samples) {
    for (int c = 0; c < 12; ++c) {
      out << (c ? "," : "") << format_double(sample_field(s, c));
    }
    out << "\n";
  }
}

std::vector<NormSample> read_series_csv(std::istream& in) {
  std::vector<NormSample> out;
  std::string line;
  if (!std::getline(in, line)) return out;  // header
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    NormSample s;
    std::stringstream ss(line);
    std::string cell;
    for (int c = 0; c < 12 && std::getline(ss, cell, ','); ++c) {
      set_sample_field(s, c, std::stod(cell));
    }
    out.push_back(s);
  }
  return out;
}

namespace {

constexpr std::uint32_t kSnapshotVersion = 1;

void put_u32(std::vector<unsigned char>& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back((v >> (8 * i)) & 0xff);
}
void put_f64(std::vector<unsigned char>& buf, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) buf.push_back((bits >> (8 * i)) & 0xff);
}
std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
  return v;
}
double get_f64(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t(p[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

std::vector<unsigned char> write_snapshot(const SimState& state) {
  const int n = state.u.grid.n;
  const int ncomp = 4;  // u1, u2, u3, theta
  std::vector<unsigned char> buf;
  buf.reserve(40 + 16ull * ncomp * state.u.grid.size());
  for (char c : {'B', 'S', 'V', 'F'}) buf.push_back(c);
  put_u32(buf, kSnapshotVersion);
  put_u32(buf, static_cast<std::uint32_t>(n));
  put_u32(buf, ncomp);
  put_f64(buf, state.t);
  put_f64(buf, state.nu);
  put_f64(buf, state.kappa);

  auto emit = [&](const SpectralField& f, int c) {
    // Lexicographic signed wavevector order, k_i from -N/2+1 to N/2.
    for (int k0 = -n / 2 + 1; k0 <= n / 2; ++k0) {
      for (int k1 = -n / 2 + 1; k1 <= n / 2; ++k1) {
        for (int k2 = -n / 2 + 1; k2 <= n / 2; ++k2) {
          const cplx z =
              f.at(c, (k0 + n) % n, (k1 + n) % n, (k2 + n) % n);
          put_f64(buf, z.real());
          put_f64(buf, z.imag());
        }
      }
    }
  };
  for (int c = 0; c < 3; ++c) emit(state.u, c);
  emit(state.theta, 0);
  return buf;
}

SimState read_snapshot(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 40) {
    throw std::runtime_error("snapshot: truncated header, " +
                             std::to_string(bytes.size()) + " < 40 bytes");
  }
  if (std::memcmp(bytes.data(), "BSVF", 4) != 0) {
    throw std::runtime_error("snapshot: bad magic, expected BSVF");
  }
  const std::uint32_t version = get_u32(bytes.data() + 4);
  if (version != kSnapshotVersion) {
    throw std::runtime_error("snapshot: version mismatch, got " +
                             std::to_string(version) + ", expected " +
                             std::to_string(kSnapshotVersion));
  }
  const int n = static_cast<int>(get_u32(bytes.data() + 8));
  const int ncomp = static_cast<int>(get_u32(bytes.data() + 12));
  if (ncomp != 4) {
    throw std::runtime_error("snapshot: expected 4 components, got " +
                             std::to_string(ncomp));
  }
  Grid grid = Grid::make(n);
  const size_t expected = 40 + 16ull * ncomp * grid.size();
  if (bytes.size() != expected) {
    throw std::runtime_error(
        "snapshot: truncated, expected " + std::to_string(expected) +
        " bytes, got " + std::to_string(bytes.size()));
  }

  SimState s;
  s.t = get_f64(bytes.data() + 16);
  s.nu = get_f64(bytes.data() + 24);
  s.kappa = get_f64(bytes.data() + 32);
  s.u = SpectralField(grid, 3);
  s.theta = SpectralField(grid, 1);

  const unsigned char* p = bytes.data() + 40;
  auto slurp = [&](SpectralField& f, int c) {
    for (int k0 = -n / 2 + 1; k0 <= n / 2; ++k0) {
      for (int k1 = -n / 2 + 1; k1 <= n / 2; ++k1) {
        for (int k2 = -n / 2 + 1; k2 <= n / 2; ++k2) {
          const double re = get_f64(p);
          const double im = get_f64(p + 8);
          p += 16;
          f.at(c, (k0 + n) % n, (k1 + n) % n, (k2 + n) % n) = cplx(re, im);
        }
      }
    }
  };
  for (int c = 0; c < 3; ++c) slurp(s.u, c);
  slurp(s.theta, 0);
  return s;
}

void write_snapshot_file(const SimState& state, const std::string& path) {
  std::vector<unsigned char> bytes = write_snapshot(state);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

SimState read_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for read: " + path);
  std::vector<unsigned char> bytes(
      (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_snapshot(bytes);
}

std::vector<std::string> write_ratio_report(const RatioReport& report,
                                            const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;

  std::map<std::string, std::vector<const RatioEntry*>> by_id;
  for (const RatioEntry& e : report.entries) {
    by_id[e.inequality].push_back(&e);
  }
  for (const auto& [id, entries] : by_id) {
    const std::string name = id + ".csv";
    std::ofstream out(fs::path(dir) / name);
    if (!out) throw std::runtime_error("cannot open for write: " + name);
    out << "family,grid,lhs,rhs_core,ratio\n";
    for (const RatioEntry* e : entries) {
      out << e->family << ',' << e->grid << ',' << format_double(e->lhs)
          << ',' << format_double(e->rhs_core) << ','
          << (e->skipped ? "skipped" : format_double(e->ratio)) << "\n";
    }
    written.push_back(name);
  }

  std::ofstream out(fs::path(dir) / "summary.csv");
  out << "inequality,entries,skipped,max_ratio\n";
  for (const auto& [id, s] : report.summary()) {
    out << id << ',' << s.entries << ',' << s.skipped << ','
        << format_double(s.max_ratio) << "\n";
  }
  written.push_back("summary.csv");
  return written;
}

}  // namespace bsq
