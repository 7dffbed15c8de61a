#include "corona/certify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "corona/analysis.hpp"
#include "corona/dual.hpp"
#include "corona/error.hpp"
#include "corona/sandpile.hpp"

namespace corona {

namespace {

struct Check {
  bool passed = false;
  std::string detail;
};

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Offsets in [0, 1) whose sum stays clear of an integer.
std::vector<double> random_offsets(Rng& rng, int d) {
  for (;;) {
    std::vector<double> g(static_cast<std::size_t>(d));
    for (double& x : g) x = uniform(rng, 0.0, 1.0);
    double sum = 0.0;
    for (double x : g) sum += x;
    const double frac = sum - std::floor(sum);
    if (frac > 0.01 && frac < 0.99) return g;
  }
}

// d directions with distinct angles in [0°, 180°), at least 5° apart.
MultigridSpec random_grid(Rng& rng, int d) {
  for (;;) {
    std::vector<double> angles;
    for (int k = 0; k < d; ++k) angles.push_back(uniform(rng, 0.0, 180.0));
    std::sort(angles.begin(), angles.end());
    bool spread = angles.back() - angles.front() < 175.0;
    for (std::size_t k = 1; k < angles.size(); ++k) spread = spread && angles[k] - angles[k - 1] >= 5.0;
    if (spread) return MultigridSpec::from_angles_deg(angles, random_offsets(rng, d));
  }
}

MultigridSpec pentagrid_half() { return MultigridSpec::dfold(5, {0.5}); }

// ---------------------------------------------------------------------------

Check characteristic_radii(const CertifyOptions&) {
  const MultigridSpec spec = pentagrid_half();
  const CharPolygon chi = char_polygon_chi(spec);
  const CharPolygon dual = char_polygon_chi_dual(spec);
  const double expected_chi = 1.0 / (2.0 * std::sin(2.0 * std::numbers::pi / 5.0) + 2.0 * std::sin(4.0 * std::numbers::pi / 5.0));
  const double expected_dual = 5.0 * expected_chi / 2.0;
  bool ok = std::abs(chi.radii[0] - expected_chi) <= 1e-6 && std::abs(dual.radii[0] - expected_dual) <= 1e-6;

  double radius_spread = 0.0;
  double angle_error = 0.0;
  for (const Polygon* p : {&chi.polygon, &dual.polygon}) {
    ok = ok && p->size() == 10;
    const double r0 = std::abs((*p)[0]);
    for (std::size_t k = 0; k < p->size(); ++k) {
      radius_spread = std::max(radius_spread, std::abs(std::abs((*p)[k]) - r0));
      const Point a = (*p)[k];
      const Point b = (*p)[(k + 1) % p->size()];
      const double central = std::atan2(cross(a, b), scalar_product(a, b)) * 180.0 / std::numbers::pi;
      angle_error = std::max(angle_error, std::abs(central - 36.0));
    }
  }
  ok = ok && radius_spread <= 1e-9 && angle_error <= 1e-9;
  return {ok, fmt::format("chi0={:.9f} (expected {:.9f}), |chi~0|={:.9f} (expected {:.9f}), radius spread {:.2e}, "
                          "angle error {:.2e} deg",
                          chi.radii[0], expected_chi, dual.radii[0], expected_dual, radius_spread, angle_error)};
}

Check almost_linearity(const CertifyOptions& options) {
  Rng rng(options.seed);
  const std::array<MultigridSpec, 2> specs{pentagrid_half(), random_grid(rng, 7)};
  bool ok = true;
  std::string detail;
  for (const MultigridSpec& spec : specs) {
    double worst = 0.0;
    int samples = 0;
    while (samples < 10'000) {
      const double r = 1e3 * std::sqrt(uniform(rng, 0.0, 1.0));
      const Point z = std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
      TilingVertex v;
      try {
        v = dualize_F(spec, z);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::OnGridLine) continue;
        throw;
      }
      worst = std::max(worst, std::abs(v.position - linear_dual(spec, z)));
      ++samples;
    }
    const double bound = 2.0 * spec.d();
    ok = ok && worst <= bound;
    detail += fmt::format("{}d={}: max|F-lin|={:.4f} <= {}", detail.empty() ? "" : "; ", spec.d(), worst, bound);
  }
  return {ok, detail};
}

Check crossing_count(const CertifyOptions& options) {
  Rng rng(options.seed + 1);
  const MultigridSpec spec = MultigridSpec::dfold(5, random_offsets(rng, 5));
  double worst = 0.0;
  int mismatches = 0;
  for (int sample = 0; sample < 1000; ++sample) {
    const int i = static_cast<int>(uniform_int(rng, 0, spec.d() - 1));
    int j = static_cast<int>(uniform_int(rng, 0, spec.d() - 2));
    if (j >= i) ++j;
    const LineId line{i, uniform_int(rng, -200, 200)};
    const double t0 = uniform(rng, -1e3, 1e3);
    const Point z = line_point(spec, line, t0);
    const double alpha = uniform(rng, 1e-3, 1e3);
    const std::int64_t c = count_crossings_cj(spec, line, z, alpha, j);
    // Independent count: walk the line and tally type-(i, j) crossings.
    LineWalker walker(spec, line, t0, +1);
    std::int64_t walked = 0;
    for (;;) {
      const Crossing next = walker.next();
      if (walker.parameter() > t0 + alpha) break;
      if (next.a.grid == j || next.b.grid == j) ++walked;
    }
    if (walked != c) ++mismatches;
    const double expected = alpha * std::abs(scalar_product(spec.normal_perp(i), spec.normal(j)));
    worst = std::max(worst, std::abs(static_cast<double>(c) - expected));
  }
  return {worst <= 2.0 && mismatches == 0,
          fmt::format("1000 tuples, max|c_j - alpha|zi.zj||={:.4f} <= 2, walker disagreements {}", worst, mismatches)};
}

// Directions folded into [0, π) and sorted; cyclic neighbors are adjacent.
std::set<std::pair<int, int>> adjacent_directions(const MultigridSpec& spec) {
  std::vector<std::pair<double, int>> folded;
  for (int i = 0; i < spec.d(); ++i) {
    double a = argument_0_2pi(spec.normal(i));
    if (a >= std::numbers::pi - 1e-12) a -= std::numbers::pi;
    folded.emplace_back(a, i);
  }
  std::sort(folded.begin(), folded.end());
  std::set<std::pair<int, int>> out;
  for (std::size_t k = 0; k < folded.size(); ++k) {
    const int a = folded[k].second;
    const int b = folded[(k + 1) % folded.size()].second;
    out.emplace(std::min(a, b), std::max(a, b));
  }
  return out;
}

Check shortest_paths(const CertifyOptions& options) {
  constexpr double kWindow = 30.0;
  Rng rng(options.seed + 2);
  const MultigridSpec spec = MultigridSpec::dfold(5, random_offsets(rng, 5));
  const auto crossings = crossings_in_disk(spec, kWindow);
  auto pick = [&]() { return crossings[static_cast<std::size_t>(uniform_int(rng, 0, std::int64_t(crossings.size()) - 1))]; };
  auto distance = [&](const Crossing& x, const Crossing& y) {
    const auto dist = graph_distance(spec, x, y, 400);
    if (!dist) throw Error(ErrorCode::ResourceLimit, "graph distance above 400");
    return *dist;
  };

  int same_line_failures = 0;
  for (int done = 0; done < 100;) {
    const Crossing a = pick();
    const LineId line = uniform_int(rng, 0, 1) ? a.a : a.b;
    const int direction = uniform_int(rng, 0, 1) ? 1 : -1;
    const Crossing b = nth_crossing(spec, line, a.point, direction, uniform_int(rng, 1, 20));
    if (std::abs(b.point) > kWindow) continue;
    const double ta = line_parameter(spec, line, a.point);
    const double tb = line_parameter(spec, line, b.point);
    const auto on_segment = crossings_on_segment(spec, line, std::min(ta, tb), std::max(ta, tb));
    const auto between = static_cast<std::int64_t>(on_segment.size()) - 1;
    if (distance(a, b) != between + 1) ++same_line_failures;
    ++done;
  }

  const auto adjacent = adjacent_directions(spec);
  int additivity_failures = 0;
  for (int done = 0; done < 100;) {
    const Crossing c = pick();
    if (!adjacent.count({c.a.grid, c.b.grid})) continue;
    const Crossing a = nth_crossing(spec, c.a, c.point, uniform_int(rng, 0, 1) ? 1 : -1, uniform_int(rng, 1, 12));
    const Crossing b = nth_crossing(spec, c.b, c.point, uniform_int(rng, 0, 1) ? 1 : -1, uniform_int(rng, 1, 12));
    if (std::abs(a.point) > kWindow || std::abs(b.point) > kWindow) continue;
    if (scalar_product(c.point - a.point, b.point - c.point) < 0.0) continue;
    if (distance(a, b) != distance(a, c) + distance(c, b)) ++additivity_failures;
    ++done;
  }
  return {same_line_failures == 0 && additivity_failures == 0,
          fmt::format("same-line mismatches {}/100, two-line additivity mismatches {}/100 (window radius {})",
                      same_line_failures, additivity_failures, kWindow)};
}

// Separating axis test on convex polygons; touching boundaries do not count.
bool interiors_overlap(const std::array<Point, 4>& p, const std::array<Point, 4>& q) {
  for (const auto* poly : {&p, &q}) {
    for (std::size_t k = 0; k < 4; ++k) {
      const Point axis = perp((*poly)[(k + 1) % 4] - (*poly)[k]);
      double pmin = INFINITY, pmax = -INFINITY, qmin = INFINITY, qmax = -INFINITY;
      for (const Point& v : p) {
        pmin = std::min(pmin, scalar_product(v, axis));
        pmax = std::max(pmax, scalar_product(v, axis));
      }
      for (const Point& v : q) {
        qmin = std::min(qmin, scalar_product(v, axis));
        qmax = std::max(qmax, scalar_product(v, axis));
      }
      if (pmax <= qmin + 1e-9 || qmax <= pmin + 1e-9) return false;
    }
  }
  return true;
}

Check edge_to_edge(const CertifyOptions&) {
  constexpr double kRadius = 12.0;
  const TilingWindow window(pentagrid_half(), kRadius);
  double worst_edge = 0.0;
  int bad_positions = 0;
  std::map<std::pair<VertexKey, VertexKey>, int> edge_count;
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<const Tile*>> buckets;
  for (const auto& [c, tile] : window.tiles()) {
    for (std::size_t k = 0; k < 4; ++k) {
      worst_edge = std::max(worst_edge, std::abs(std::abs(tile.corners[(k + 1) % 4] - tile.corners[k]) - 1.0));
      if (std::abs(vertex_position(window.spec(), tile.keys[k]) - tile.corners[k]) > 1e-9) ++bad_positions;
      auto e = std::minmax(tile.keys[k], tile.keys[(k + 1) % 4]);
      ++edge_count[{e.first, e.second}];
    }
    const Point center = (tile.corners[0] + tile.corners[2]) / 2.0;
    buckets[{static_cast<std::int64_t>(std::floor(center.real() / 2.0)),
             static_cast<std::int64_t>(std::floor(center.imag() / 2.0))}]
        .push_back(&tile);
  }
  // Rhombus centers of overlapping tiles are closer than 2, so neighboring buckets suffice.
  std::size_t overlaps = 0;
  for (const auto& [cell, members] : buckets) {
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find({cell.first + dx, cell.second + dy});
        if (it == buckets.end()) continue;
        for (const Tile* s : members) {
          for (const Tile* t : it->second) {
            if (s->crossing < t->crossing && interiors_overlap(s->corners, t->corners)) ++overlaps;
          }
        }
      }
    }
  }
  std::size_t interior_edges = 0;
  std::size_t bad_edges = 0;
  for (const auto& [c, tile] : window.tiles()) {
    if (std::abs(c.point) > kRadius - 2.0) continue;
    for (std::size_t k = 0; k < 4; ++k) {
      auto e = std::minmax(tile.keys[k], tile.keys[(k + 1) % 4]);
      ++interior_edges;
      if (edge_count[{e.first, e.second}] != 2) ++bad_edges;
    }
  }
  const bool ok = worst_edge <= 1e-9 && bad_positions == 0 && overlaps == 0 && bad_edges == 0;
  return {ok, fmt::format("{} tiles, max|edge-1|={:.2e}, overlapping pairs {}, interior edge checks {} with {} not "
                          "shared by exactly 2",
                          window.size(), worst_edge, overlaps, interior_edges, bad_edges)};
}

Check corona_limit(const CertifyOptions& options) {
  Rng rng(options.seed + 3);
  const std::array<std::int64_t, 4> ns{10, 20, 40, 80};
  const MultigridSpec half = pentagrid_half();
  const MultigridSpec random = MultigridSpec::dfold(5, random_offsets(rng, 5));
  const Polygon target = char_polygon_chi_dual(half).polygon;
  bool ok = char_polygon_chi_dual(random).polygon == target;
  std::string detail;
  for (const MultigridSpec* spec : {&half, &random}) {
    const Patch seed(*spec, {nearest_crossing(*spec, {})});
    const auto rows = convergence_table(*spec, seed, ns, Side::Tiling, options.crossing_cap);
    const double h10 = rows.front().h_n;
    const double h80 = rows.back().h_n;
    ok = ok && h80 < h10 && h80 <= 0.1;
    detail += fmt::format("{}offsets {}: h_n =", detail.empty() ? "" : "; ", spec == &half ? "1/2" : "random");
    for (const auto& r : rows) detail += fmt::format(" {:.4f}", r.h_n);
  }
  return {ok, detail + " (need h_80 < h_10 and h_80 <= 0.1)"};
}

// Breadth-first ball sizes on Z² with the 4-neighborhood.
std::vector<std::size_t> lattice_ball_sizes(std::size_t n_max) {
  std::set<std::pair<std::int64_t, std::int64_t>> seen{{0, 0}};
  std::vector<std::pair<std::int64_t, std::int64_t>> frontier{{0, 0}};
  std::vector<std::size_t> sizes{1};
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<std::pair<std::int64_t, std::int64_t>> next;
    for (auto [x, y] : frontier) {
      for (auto [dx, dy] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}}) {
        if (seen.insert({x + dx, y + dy}).second) next.emplace_back(x + dx, y + dy);
      }
    }
    frontier = std::move(next);
    sizes.push_back(seen.size());
  }
  return sizes;
}

Check square_grid(const CertifyOptions& options) {
  constexpr std::size_t kMax = 50;
  const std::array<double, 2> angles{0.0, 90.0};
  const MultigridSpec spec = MultigridSpec::from_angles_deg(angles, {0.5});
  const Patch seed(spec, {nearest_crossing(spec, {})});
  const CoronaSequence seq = corona_sequence(spec, seed, kMax, options.crossing_cap);
  const auto oracle = lattice_ball_sizes(kMax);
  int count_mismatches = 0;
  for (std::size_t n = 0; n <= kMax; ++n) {
    const std::size_t formula = 2 * n * n + 2 * n + 1;
    if (seq.cumulative_size(n) != formula || oracle[n] != formula) ++count_mismatches;
  }
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= static_cast<std::int64_t>(kMax); ++n) ns.push_back(n);
  double worst = 0.0;
  for (const auto& row : convergence_table(spec, seq, ns, Side::Multigrid)) worst = std::max(worst, row.n_times_h_n);
  return {count_mismatches == 0 && worst <= 2.0,
          fmt::format("|P_n| = 2n^2+2n+1 mismatches {} for n <= 50, max n*h_n = {:.4f} <= 2", count_mismatches, worst)};
}

Check endpoints_prop(const CertifyOptions&) {
  const MultigridSpec spec = pentagrid_half();
  const Patch seed(spec, {nearest_crossing(spec, {})});
  const std::array<std::int64_t, 3> ns{20, 40, 80};
  const EndpointsDiagnostic diag = endpoints_diagnostic(spec, seed, ns);
  const double h20 = diag.rows.front().h;
  const double h80 = diag.rows.back().h;
  const bool ok = h80 < h20 && std::isfinite(diag.sandwich_constant) && diag.sandwich_constant <= diag.bound;
  return {ok, fmt::format("h_20={:.5f} h_40={:.5f} h_80={:.5f}; n*h = {:.4f} {:.4f} {:.4f}; sandwich constant {:.4f} "
                          "<= bound {:.4f} (delta0 {:.4f}, growth steps {})",
                          h20, diag.rows[1].h, h80, diag.rows[0].n_times_h, diag.rows[1].n_times_h,
                          diag.rows[2].n_times_h, diag.sandwich_constant, diag.bound, diag.delta0, diag.growth_steps)};
}

Check sandpile_corona(const CertifyOptions& options) {
  constexpr std::int64_t kRounds = 10;
  const TilingWindow window(pentagrid_half(), 14.0);
  const Crossing at = nearest_crossing(window.spec(), {});
  const SandpileConfig after = add_grain_and_topple(max_stable(window), at, kRounds);
  const CoronaSequence seq =
      corona_sequence(window.spec(), Patch(window.spec(), {at}), kRounds - 1, options.crossing_cap);
  int mismatched_rounds = 0;
  for (std::int64_t n = 1; n <= kRounds; ++n) {
    auto corona = seq.cumulative(static_cast<std::size_t>(n - 1));
    std::sort(corona.begin(), corona.end());
    if (after.toppled_by_round(n) != corona) ++mismatched_rounds;
  }
  return {mismatched_rounds == 0,
          fmt::format("{} tiles, toppled-by-round n vs P_(n-1) for n = 1..{}: {} mismatched, |P_9| = {}",
                      window.size(), kRounds, mismatched_rounds, seq.cumulative_size(kRounds - 1))};
}

Check singularity(const CertifyOptions&) {
  const RegularityReport zero = check_regular(MultigridSpec::dfold(5, {0.0}), 1.0);
  bool origin_flagged = false;
  for (const auto& s : zero.singular_points) {
    if (std::abs(s.point) <= 1e-9 && s.lines.size() == 5) origin_flagged = true;
  }
  const RegularityReport half = check_regular(pentagrid_half(), 20.0);
  return {origin_flagged && half.regular(),
          fmt::format("zero offsets: origin flagged with 5 lines = {}; offsets 1/2: {} crossings checked, {} singular",
                      origin_flagged, half.crossings_checked, half.singular_points.size())};
}

struct Criterion {
  const char* name;
  double limit_seconds;
  Check (*run)(const CertifyOptions&);
};

const std::array<Criterion, kCriterionCount>& criteria() {
  static const std::array<Criterion, kCriterionCount> table{{
      {"penrose characteristic radii", 1e-3, characteristic_radii},
      {"almost-linearity of F", 1.0, almost_linearity},
      {"crossing-count bound", 1.0, crossing_count},
      {"shortest paths along lines", 30.0, shortest_paths},
      {"edge-to-edge rhombus tiling", 10.0, edge_to_edge},
      {"corona limit on the tiling side", 60.0, corona_limit},
      {"square-grid diamond", 5.0, square_grid},
      {"endpoints limit", 10.0, endpoints_prop},
      {"sandpile-corona equivalence", 10.0, sandpile_corona},
      {"singularity detection", 5.0, singularity},
  }};
  return table;
}

}  // namespace

CriterionResult run_criterion(int id, const CertifyOptions& options) {
  if (id < 1 || id > kCriterionCount) throw Error(ErrorCode::InvalidArgument, fmt::format("no criterion {}", id));
  const Criterion& c = criteria()[static_cast<std::size_t>(id - 1)];
  CriterionResult result{id, c.name, false, {}, 0.0, c.limit_seconds};
  const auto start = std::chrono::steady_clock::now();
  Check check;
  try {
    check = c.run(options);
  } catch (const Error& e) {
    check = {false, e.what()};
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.passed = check.passed && result.seconds <= result.limit_seconds;
  result.detail = std::move(check.detail);
  if (check.passed && !result.passed) result.detail += "; runtime limit exceeded";
  return result;
}

std::vector<CriterionResult> run_acceptance(const CertifyOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options));
  return out;
}

std::string format_result(const CriterionResult& r) {
  return fmt::format("{} [{}] {} ({:.4f} s, limit {} s): {}", r.passed ? "PASS" : "FAIL", r.id, r.name, r.seconds,
                     r.limit_seconds, r.detail);
}

}  // namespace corona
