// Command-line front end: generate tilings, grow coronas, compute the
// characteristic polygons and run the acceptance suite.
//
// Exit status: 0 on success, 1 on a certification failure or engine error,
// 2 on a parse or validation error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "corona/analysis.hpp"
#include "corona/certify.hpp"
#include "corona/dual.hpp"
#include "corona/error.hpp"
#include "corona/graph.hpp"
#include "corona/io.hpp"
#include "corona/sandpile.hpp"

namespace {

using namespace corona;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr const char* kCapVariable = "CORONA_MAX_CROSSINGS";

struct Flags {
  std::string config;
  std::string dfold;
  std::string angles;
  std::string offsets;
  std::string out;
  std::string radius;
  std::string n;
  std::string tile;
  std::string ball;
  std::string side;
  std::string seed;
};

bool is_validation(const Error& e) {
  return e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, fmt::format("cannot read config file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string key_of(const std::string& line) {
  const auto first = line.find_first_not_of(" \t");
  const auto colon = line.find(':');
  if (first == std::string::npos || colon == std::string::npos || colon < first) return {};
  auto key = line.substr(first, colon - first);
  key.erase(key.find_last_not_of(" \t") + 1);
  return key;
}

// The config file with every key overridden by a flag removed, followed by
// the flags in config syntax. Both go through the same parser.
Config load_config(const Flags& f) {
  std::vector<std::pair<std::string, std::string>> overrides;
  auto add = [&](const char* key, const std::string& value) {
    if (!value.empty()) overrides.emplace_back(key, value);
  };
  add("dfold", f.dfold);
  add("angles", f.angles);
  add("offsets", f.offsets);
  add("radius", f.radius);
  add("n", f.n);
  add("tile", f.tile);
  add("ball", f.ball);
  add("side", f.side);
  add("seed", f.seed);

  const bool direction_flag = !f.dfold.empty() || !f.angles.empty();
  std::string text;
  std::size_t file_lines = 0;
  if (!f.config.empty()) {
    std::istringstream in(read_file(f.config));
    std::string line;
    while (std::getline(in, line)) {
      const std::string key = key_of(line);
      const bool overridden = std::any_of(overrides.begin(), overrides.end(), [&](const auto& o) { return o.first == key; });
      const bool direction_key = key == "dfold" || key == "angles" || key == "normals";
      // Keep line numbering for error messages by blanking instead of dropping.
      text += (overridden || (direction_flag && direction_key)) ? "\n" : line + "\n";
      ++file_lines;
    }
  } else if (!direction_flag) {
    throw Error(ErrorCode::ValidationError, "one of --config, --dfold, --angles is required");
  }
  for (const auto& [key, value] : overrides) text += key + ": " + value + "\n";
  Config config = [&] {
    try {
      return parse_spec(text);
    } catch (const Error& e) {
      // Lines past the file are flags; name the flag instead of a line number.
      std::size_t line = 0, column = 0;
      const std::string what = e.what();
      const auto at = what.find("line ");
      if (e.code() != ErrorCode::ParseError || at == std::string::npos ||
          std::sscanf(what.c_str() + at, "line %zu, column %zu", &line, &column) != 2 || line <= file_lines) {
        throw;
      }
      const auto& [key, value] = overrides.at(line - file_lines - 1);
      const auto message = what.find(": ", what.find("column"));
      throw Error(ErrorCode::ParseError,
                  fmt::format("--{} {}{}", key, value, message == std::string::npos ? "" : what.substr(message)));
    }
  }();
  for (const auto& w : config.warnings) std::cerr << "warning: " << w << "\n";
  return config;
}

std::size_t crossing_cap() {
  const char* raw = std::getenv(kCapVariable);
  if (!raw || !*raw) return kDefaultCrossingCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0 || raw[0] == '-') {
    throw Error(ErrorCode::ValidationError, fmt::format("{} must be a positive integer, got '{}'", kCapVariable, raw));
  }
  return static_cast<std::size_t>(v);
}

std::vector<std::int64_t> ns_or(const Config& c, std::vector<std::int64_t> fallback) {
  return c.run.ns.empty() ? fallback : c.run.ns;
}

std::int64_t single_n(const Config& c, std::int64_t fallback) {
  if (c.run.ns.empty()) return fallback;
  if (c.run.ns.size() != 1) throw Error(ErrorCode::ValidationError, "this command takes a single n");
  if (c.run.ns.front() < 0) throw Error(ErrorCode::ValidationError, "n must be non-negative");
  return c.run.ns.front();
}

double radius_or(const Config& c, double fallback) {
  const double r = c.run.radius.value_or(fallback);
  if (!(r > 0.0)) throw Error(ErrorCode::ValidationError, "radius must be positive");
  return r;
}

Crossing seed_crossing(const Config& c) {
  const MultigridSpec& spec = c.spec;
  if (!c.run.tile) return nearest_crossing(spec, {});
  const auto [i, j, ki, kj] = *c.run.tile;
  if (i < 0 || j < 0 || i >= spec.d() || j >= spec.d() || i == j) {
    throw Error(ErrorCode::ValidationError, fmt::format("tile grids must be two distinct values in [0, {})", spec.d()));
  }
  return make_crossing(spec, {static_cast<int>(i), ki}, {static_cast<int>(j), kj});
}

// --tile i,j,ki,kj (a single crossing) or --ball k (k-th corona of the
// crossing nearest the origin). Defaults to that crossing alone.
Patch seed_patch(const Config& c, std::size_t cap) {
  if (c.run.tile && c.run.ball) throw Error(ErrorCode::ValidationError, "--tile and --ball are exclusive");
  const Crossing start = seed_crossing(c);
  const Patch single(c.spec, {start});
  if (!c.run.ball) return single;
  if (*c.run.ball < 0) throw Error(ErrorCode::ValidationError, "ball must be non-negative");
  const auto k = static_cast<std::size_t>(*c.run.ball);
  return Patch(c.spec, corona_sequence(c.spec, single, k, cap).cumulative(k));
}

void emit(const Flags& f, const std::string& name, const std::string& content, bool primary) {
  if (f.out.empty()) {
    if (primary) std::cout << content;
    return;
  }
  std::filesystem::create_directories(f.out);
  const auto path = std::filesystem::path(f.out) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, fmt::format("cannot write '{}'", path.string()));
  out << content;
  std::cerr << "wrote " << path.string() << "\n";
}

int cmd_gen(const Flags& f) {
  const Config c = load_config(f);
  const double r = radius_or(c, 10.0);
  const TilingWindow window(c.spec, r);
  emit(f, "tiling.csv", tiling_csv(window), true);
  emit(f, "tiling.svg", render_svg(tiling_scene(window)), false);
  emit(f, "multigrid.svg", render_svg(multigrid_scene(c.spec, r)), false);
  emit(f, "spec.txt", serialize_spec(c.spec), false);
  return 0;
}

int cmd_corona(const Flags& f) {
  const Config c = load_config(f);
  const std::size_t cap = crossing_cap();
  const auto n = static_cast<std::size_t>(single_n(c, 10));
  const CoronaSequence seq = corona_sequence(c.spec, seed_patch(c, cap), n, cap);
  emit(f, "frontier.csv", frontier_csv(seq), true);
  std::optional<Polygon> overlay;
  if (n > 0) overlay = scale_polygon(char_polygon_chi_dual(c.spec).polygon, static_cast<double>(n));
  emit(f, "corona.svg", render_svg(corona_scene(c.spec, seq, n, overlay)), false);
  return 0;
}

int cmd_charpoly(const Flags& f) {
  const Config c = load_config(f);
  const CharPolygon chi = char_polygon_chi(c.spec);
  const CharPolygon dual = char_polygon_chi_dual(c.spec);
  emit(f, "charpoly.csv", charpoly_csv(chi, dual), true);
  emit(f, "charpoly.svg", render_svg(charpoly_scene(chi, dual)), false);
  return 0;
}

int cmd_converge(const Flags& f) {
  const Config c = load_config(f);
  const std::size_t cap = crossing_cap();
  const auto ns = ns_or(c, {10, 20, 40, 80});
  const auto rows = convergence_table(c.spec, seed_patch(c, cap), ns, c.run.side.value_or(Side::Tiling), cap);
  emit(f, "convergence.csv", convergence_csv(rows), true);
  return 0;
}

int cmd_endpoints(const Flags& f) {
  const Config c = load_config(f);
  const std::size_t cap = crossing_cap();
  const auto ns = ns_or(c, {10, 20, 40, 80});
  const EndpointsDiagnostic diag = endpoints_diagnostic(c.spec, seed_patch(c, cap), ns);
  emit(f, "endpoints.csv", endpoints_csv(diag), true);
  std::cerr << fmt::format("growth steps {}, sandwich constant {:.6f}, bound {:.6f} (delta0 {:.6f})\n",
                           diag.growth_steps, diag.sandwich_constant, diag.bound, diag.delta0);
  return 0;
}

int cmd_sandpile(const Flags& f) {
  const Config c = load_config(f);
  const std::size_t cap = crossing_cap();
  const std::int64_t rounds = single_n(c, 10);
  if (rounds < 1) throw Error(ErrorCode::ValidationError, "sandpile needs n >= 1 rounds");
  const TilingWindow window(c.spec, radius_or(c, 14.0));
  const Crossing at = seed_crossing(c);
  const SandpileConfig after = add_grain_and_topple(max_stable(window), at, rounds);
  const CoronaSequence seq = corona_sequence(c.spec, Patch(c.spec, {at}), static_cast<std::size_t>(rounds - 1), cap);
  std::string report = fmt::format("# sandpile on {} tiles, grain added at {}\nround,toppled,corona_n_minus_1,equal\n",
                                   window.size(), to_string(at));
  bool all_equal = true;
  for (std::int64_t n = 1; n <= rounds; ++n) {
    auto corona = seq.cumulative(static_cast<std::size_t>(n - 1));
    std::sort(corona.begin(), corona.end());
    const auto toppled = after.toppled_by_round(n);
    const bool equal = toppled == corona;
    all_equal = all_equal && equal;
    report += fmt::format("{},{},{},{}\n", n, toppled.size(), corona.size(), equal ? "yes" : "no");
  }
  emit(f, "sandpile.csv", report, true);
  return all_equal ? 0 : kExitFailure;
}

int cmd_certify(const Flags& f) {
  CertifyOptions options;
  options.crossing_cap = crossing_cap();
  if (!f.seed.empty()) {
    try {
      options.seed = std::stoull(f.seed);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ValidationError, fmt::format("seed must be a non-negative integer, got '{}'", f.seed));
    }
  }
  bool all = true;
  std::string log;
  for (int id = 1; id <= kCriterionCount; ++id) {
    const CriterionResult r = run_criterion(id, options);
    const std::string line = format_result(r);
    std::cout << line << std::endl;
    log += line + "\n";
    all = all && r.passed;
  }
  if (!f.out.empty()) emit(f, "certify.txt", log, false);
  return all ? 0 : kExitFailure;
}

void add_spec_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Config file (key: value lines)");
  cmd->add_option("--dfold", f.dfold, "d-fold multigrid, zeta_k = exp(2 pi i k / d)");
  cmd->add_option("--angles", f.angles, "Comma-separated normal angles in degrees");
  cmd->add_option("--offsets", f.offsets, "Comma-separated offsets, or one value for every grid");
  cmd->add_option("--out", f.out, "Output directory (CSV goes to stdout when absent)");
}

void add_seed_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--tile", f.tile, "Seed crossing i,j,k_i,k_j");
  cmd->add_option("--ball", f.ball, "Seed = k-th corona of the crossing nearest the origin");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corona limits of multigrid dual tilings"};
  app.require_subcommand(1);
  Flags f;
  int (*handler)(const Flags&) = nullptr;

  auto* gen = app.add_subcommand("gen", "Tiling window export (CSV) and SVG");
  add_spec_flags(gen, f);
  gen->add_option("--radius", f.radius, "Window radius (default 10)");
  gen->callback([&] { handler = cmd_gen; });

  auto* corona = app.add_subcommand("corona", "Corona growth: frontier CSV and SVG");
  add_spec_flags(corona, f);
  add_seed_flags(corona, f);
  corona->add_option("--n", f.n, "Number of coronas (default 10)");
  corona->callback([&] { handler = cmd_corona; });

  auto* charpoly = app.add_subcommand("charpoly", "Characteristic polygons: CSV and SVG");
  add_spec_flags(charpoly, f);
  charpoly->callback([&] { handler = cmd_charpoly; });

  auto* converge = app.add_subcommand("converge", "Convergence table h_n");
  add_spec_flags(converge, f);
  add_seed_flags(converge, f);
  converge->add_option("--n", f.n, "Comma-separated ascending n values (default 10,20,40,80)");
  converge->add_option("--side", f.side, "tiling (default) or multigrid");
  converge->callback([&] { handler = cmd_converge; });

  auto* endpoints = app.add_subcommand("endpoints", "Endpoint diagnostic along dominant lines");
  add_spec_flags(endpoints, f);
  add_seed_flags(endpoints, f);
  endpoints->add_option("--n", f.n, "Comma-separated ascending n values (default 10,20,40,80)");
  endpoints->callback([&] { handler = cmd_endpoints; });

  auto* sandpile = app.add_subcommand("sandpile", "Sandpile avalanche vs corona sequence report");
  add_spec_flags(sandpile, f);
  sandpile->add_option("--tile", f.tile, "Tile receiving the grain i,j,k_i,k_j (default: nearest the origin)");
  sandpile->add_option("--radius", f.radius, "Window radius (default 14)");
  sandpile->add_option("--n", f.n, "Number of rounds (default 10)");
  sandpile->callback([&] { handler = cmd_sandpile; });

  auto* certify = app.add_subcommand("certify", "Run the acceptance suite");
  certify->add_option("--seed", f.seed, "Sampling seed (default 0)");
  certify->add_option("--out", f.out, "Also write the report to this directory");
  certify->callback([&] { handler = cmd_certify; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return handler(f);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_validation(e) ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
