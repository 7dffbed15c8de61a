#include "corona/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "corona/dual.hpp"
#include "corona/error.hpp"

namespace corona {

std::string_view to_string(Side side) noexcept { return side == Side::Multigrid ? "multigrid" : "tiling"; }

namespace {

Polygon symmetric_polygon(std::span<const Point> axis_vertices) {
  std::vector<Point> all;
  for (const Point& v : axis_vertices) {
    all.push_back(v);
    all.push_back(-v);
  }
  std::sort(all.begin(), all.end(), [](Point a, Point b) { return argument_0_2pi(a) < argument_0_2pi(b); });
  return Polygon(std::move(all));
}

std::vector<double> chi_radii(const MultigridSpec& spec) {
  std::vector<double> radii;
  for (int i = 0; i < spec.d(); ++i) {
    double frequency = 0.0;
    for (int j = 0; j < spec.d(); ++j) {
      if (j != i) frequency += std::abs(scalar_product(spec.normal_perp(i), spec.normal(j)));
    }
    radii.push_back(1.0 / frequency);
  }
  return radii;
}

void require_ascending(std::span<const std::int64_t> ns, std::int64_t min_n) {
  for (std::size_t k = 0; k < ns.size(); ++k) {
    if (ns[k] < min_n) throw Error(ErrorCode::InvalidArgument, fmt::format("n = {} below {}", ns[k], min_n));
    if (k > 0 && ns[k] <= ns[k - 1]) throw Error(ErrorCode::InvalidArgument, "ns must be strictly ascending");
  }
}

}  // namespace

CharPolygon char_polygon_chi(const MultigridSpec& spec) {
  std::vector<double> radii = chi_radii(spec);
  std::vector<Point> axis;
  for (int i = 0; i < spec.d(); ++i) axis.push_back(radii[static_cast<std::size_t>(i)] * spec.normal_perp(i));
  Polygon polygon = symmetric_polygon(axis);
  return CharPolygon{Side::Multigrid, std::move(radii), std::move(axis), std::move(polygon)};
}

CharPolygon char_polygon_chi_dual(const MultigridSpec& spec) {
  const std::vector<double> chi = chi_radii(spec);
  std::vector<Point> axis;
  std::vector<double> radii;
  for (int i = 0; i < spec.d(); ++i) {
    Point sum{};
    for (int j = 0; j < spec.d(); ++j) sum += scalar_product(spec.normal_perp(i), spec.normal(j)) * spec.normal(j);
    axis.push_back(chi[static_cast<std::size_t>(i)] * sum);
    radii.push_back(std::abs(axis.back()));
  }
  Polygon polygon = symmetric_polygon(axis);
  return CharPolygon{Side::Tiling, std::move(radii), std::move(axis), std::move(polygon)};
}

CharPolygon char_polygon(const MultigridSpec& spec, Side side) {
  return side == Side::Multigrid ? char_polygon_chi(spec) : char_polygon_chi_dual(spec);
}

std::vector<Point> patch_points(const MultigridSpec& spec, std::span<const Crossing> crossings, Side side) {
  std::vector<Point> out;
  if (side == Side::Multigrid) {
    out.reserve(crossings.size());
    for (const Crossing& c : crossings) out.push_back(c.point);
    return out;
  }
  // Shared tile corners are deduplicated by key.
  std::set<VertexKey> seen;
  for (const Crossing& c : crossings) {
    const Tile tile = tile_of_crossing(spec, c);
    for (std::size_t k = 0; k < 4; ++k) {
      if (seen.insert(tile.keys[k]).second) out.push_back(tile.corners[k]);
    }
  }
  return out;
}

Polygon normalized_shape(const MultigridSpec& spec, std::span<const Crossing> crossings, std::int64_t n, Side side) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "normalization needs n >= 1");
  const auto points = patch_points(spec, crossings, side);
  return scale_polygon(convex_hull(points), 1.0 / static_cast<double>(n));
}

std::vector<ConvergenceRow> convergence_table(const MultigridSpec& spec, const CoronaSequence& seq,
                                              std::span<const std::int64_t> ns, Side side) {
  require_ascending(ns, 1);
  if (!ns.empty() && static_cast<std::size_t>(ns.back()) > seq.n_max()) {
    throw Error(ErrorCode::InvalidArgument, "corona sequence is shorter than the largest n");
  }
  const Polygon target = char_polygon(spec, side).polygon;
  std::vector<ConvergenceRow> rows;
  // hull(P_n) = hull(hull(P_{n-1}) ∪ frontier_n); carry the running hull
  // vertices instead of every point.
  std::vector<Point> running;
  std::size_t done = 0;
  for (std::int64_t n : ns) {
    for (; done <= static_cast<std::size_t>(n); ++done) {
      const auto fresh = patch_points(spec, seq.frontier(done), side);
      running.insert(running.end(), fresh.begin(), fresh.end());
      if (running.size() >= 3) {
        try {
          running = convex_hull(running).vertices();
        } catch (const Error&) {
          // still collinear; keep every point
        }
      }
    }
    const Polygon hull = scale_polygon(convex_hull(running), 1.0 / static_cast<double>(n));
    ConvergenceRow row{n, side, hull, 0.0, 0.0, hull.size()};
    row.h_n = hausdorff_distance(hull, target);
    row.n_times_h_n = static_cast<double>(n) * row.h_n;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ConvergenceRow> convergence_table(const MultigridSpec& spec, const Patch& patch,
                                              std::span<const std::int64_t> ns, Side side,
                                              std::size_t crossing_cap) {
  require_ascending(ns, 1);
  const std::size_t n_max = ns.empty() ? 0 : static_cast<std::size_t>(ns.back());
  const CoronaSequence seq = corona_sequence(spec, patch, n_max, crossing_cap);
  return convergence_table(spec, seq, ns, side);
}

EndpointsDiagnostic endpoints_diagnostic(const MultigridSpec& spec, const Patch& patch,
                                         std::span<const std::int64_t> ns) {
  require_ascending(ns, 0);
  EndpointsDiagnostic out;
  Patch grown = patch;
  for (;;) {
    try {
      out.lines = dominant_lines(spec, grown.crossings());
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::GridNotRepresented) throw;
      grown = corona_step(spec, grown);
      ++out.growth_steps;
    }
  }
  const CharPolygon chi = char_polygon_chi(spec);
  const std::int64_t n_max = ns.empty() ? 0 : ns.back();

  // collected[r] gathers the 2d endpoints for n = ns[r].
  std::vector<std::vector<Point>> collected(ns.size());
  double max_start = 0.0;
  for (const LineId& line : out.lines.lines) {
    const double chi_i = chi.radii[static_cast<std::size_t>(line.grid)];
    const Crossing* lowest = nullptr;
    const Crossing* highest = nullptr;
    for (const Crossing& c : grown.crossings()) {
      if (!c.on_line(line)) continue;
      const double t = line_parameter(spec, line, c.point);
      if (!lowest || t < line_parameter(spec, line, lowest->point)) lowest = &c;
      if (!highest || t > line_parameter(spec, line, highest->point)) highest = &c;
    }
    max_start = std::max({max_start, std::abs(lowest->point), std::abs(highest->point)});
    for (const auto& [start, direction] : {std::pair{highest, +1}, std::pair{lowest, -1}}) {
      const double t0 = line_parameter(spec, line, start->point);
      LineWalker walker(spec, line, t0, direction);
      Crossing current = *start;
      std::size_t next_row = 0;
      for (std::int64_t n = 0; n <= n_max; ++n) {
        if (n > 0) {
          current = walker.next();
          const double alpha = std::abs(walker.parameter() - t0);
          out.delta0 = std::max(out.delta0, std::abs(alpha - static_cast<double>(n) * chi_i));
        }
        if (next_row < ns.size() && ns[next_row] == n) {
          collected[next_row].push_back(current.point);
          ++next_row;
        }
      }
    }
  }
  out.bound = out.delta0 + max_start;

  for (std::size_t r = 0; r < ns.size(); ++r) {
    EndpointsRow row;
    row.n = ns[r];
    row.points = collected[r];
    if (row.n == 0) {
      for (const Point& p : row.points) row.h = std::max(row.h, std::abs(p));
      row.n_times_h = 0.0;
    } else {
      const Polygon hull = scale_polygon(convex_hull(row.points), 1.0 / static_cast<double>(row.n));
      row.h = hausdorff_distance(hull, chi.polygon);
      row.n_times_h = static_cast<double>(row.n) * row.h;
    }
    out.sandwich_constant = std::max(out.sandwich_constant, row.n_times_h);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<SandwichRow> corona_sandwich(const MultigridSpec& spec, const CoronaSequence& seq,
                                         std::span<const std::int64_t> ns) {
  require_ascending(ns, 1);
  const Polygon chi = char_polygon_chi(spec).polygon;
  double reach = 0.0;
  for (const Point& v : chi.vertices()) reach = std::max(reach, std::abs(v));

  std::vector<SandwichRow> rows;
  for (std::int64_t n : ns) {
    const auto members_list = seq.cumulative(static_cast<std::size_t>(n));
    const CrossingSet members(members_list.begin(), members_list.end());
    SandwichRow row;
    row.n = n;
    double max_inside = 0.0;
    for (const Crossing& c : members_list) max_inside = std::max(max_inside, chi.gauge(c.point));
    row.outer = max_inside - static_cast<double>(n);
    // Every crossing of gauge ≤ n lies within the disk of radius n·reach.
    double min_outside = std::numeric_limits<double>::infinity();
    for (const Crossing& c : crossings_in_disk(spec, static_cast<double>(n) * reach)) {
      if (!members.count(c)) min_outside = std::min(min_outside, chi.gauge(c.point));
    }
    row.inner = std::isfinite(min_outside) ? static_cast<double>(n) - min_outside : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace corona
