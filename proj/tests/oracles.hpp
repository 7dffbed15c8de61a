#pragma once

// Brute-force reference implementations used by the unit tests. They share
// no code paths with the library beyond the spec accessors and crossing
// construction, and favor obviousness over speed.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "corona/dual.hpp"
#include "corona/geom.hpp"
#include "corona/graph.hpp"
#include "corona/multigrid.hpp"

namespace oracle {

using corona::Crossing;
using corona::LineId;
using corona::MultigridSpec;
using corona::Point;

/// Even-odd point-in-polygon with the boundary counted as inside.
inline bool point_in_polygon(const std::vector<Point>& poly, Point p, double eps = 1e-9) {
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point a = poly[k];
    const Point b = poly[(k + 1) % n];
    const double len = std::abs(b - a);
    const double t = std::clamp(corona::scalar_product(p - a, b - a) / (len * len), 0.0, 1.0);
    if (std::abs(p - (a + t * (b - a))) <= eps) return true;
  }
  bool inside = false;
  for (std::size_t k = 0, m = n - 1; k < n; m = k++) {
    const Point a = poly[k];
    const Point b = poly[m];
    if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
      const double x = a.real() + (p.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (p.real() < x) inside = !inside;
    }
  }
  return inside;
}

/// Points spaced along the boundary, `per_edge` per edge.
inline std::vector<Point> boundary_samples(const std::vector<Point>& poly, int per_edge) {
  std::vector<Point> out;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Point a = poly[k];
    const Point b = poly[(k + 1) % poly.size()];
    for (int s = 0; s < per_edge; ++s) out.push_back(a + (b - a) * (static_cast<double>(s) / per_edge));
  }
  return out;
}

/// Hausdorff distance between filled polygons from dense boundary sampling.
/// Accurate to roughly edge length / per_edge.
inline double sampled_hausdorff(const std::vector<Point>& a, const std::vector<Point>& b, int per_edge = 2000) {
  auto directed = [per_edge](const std::vector<Point>& from, const std::vector<Point>& to) {
    const auto to_samples = boundary_samples(to, per_edge);
    double worst = 0.0;
    for (const Point& p : boundary_samples(from, per_edge)) {
      if (point_in_polygon(to, p)) continue;
      double best = INFINITY;
      for (const Point& q : to_samples) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

/// Tile vertex keys from F sampled in the four cells around a crossing. The
/// sample offset is a quarter of the clearance to the nearest third line.
inline std::set<corona::VertexKey> tile_keys_by_sampling(const MultigridSpec& spec, const Crossing& c) {
  double clearance = 0.5;
  for (int m = 0; m < spec.d(); ++m) {
    if (m == c.a.grid || m == c.b.grid) continue;
    const double v = spec.level(m, c.point);
    clearance = std::min(clearance, std::abs(v - std::round(v)));
  }
  const double eps = clearance / 4.0;
  // Moving along w_a changes level a only; along w_b, level b only.
  Point wa = spec.normal_perp(c.b.grid);
  if (corona::scalar_product(wa, spec.normal(c.a.grid)) < 0) wa = -wa;
  Point wb = spec.normal_perp(c.a.grid);
  if (corona::scalar_product(wb, spec.normal(c.b.grid)) < 0) wb = -wb;
  std::set<corona::VertexKey> keys;
  for (double sa : {-1.0, 1.0}) {
    for (double sb : {-1.0, 1.0}) keys.insert(corona::dualize_F(spec, c.point + eps * (sa * wa + sb * wb)).key);
  }
  return keys;
}

/// Next crossing along `line` after parameter t in direction dir, by scanning
/// a band of line indices of every other grid.
inline Crossing next_crossing_scan(const MultigridSpec& spec, const LineId& line, double t, int dir) {
  std::optional<std::pair<double, Crossing>> best;
  for (int j = 0; j < spec.d(); ++j) {
    if (j == line.grid) continue;
    const double centre = spec.level(j, corona::line_point(spec, line, t));
    for (auto k = static_cast<std::int64_t>(std::floor(centre)) - 40; k <= static_cast<std::int64_t>(std::ceil(centre)) + 40;
         ++k) {
      const Crossing c = corona::make_crossing(spec, line, {j, k});
      const double s = corona::line_parameter(spec, line, c.point);
      const double ahead = (s - t) * dir;
      if (ahead > 1e-9 && (!best || ahead < best->first)) best = std::pair{ahead, c};
    }
  }
  return best->second;
}

/// Plain one-directional BFS using the library's neighbor function.
inline std::optional<std::int64_t> bfs_distance(const MultigridSpec& spec, const Crossing& a, const Crossing& b,
                                                std::int64_t cap) {
  std::set<Crossing> seen{a};
  std::vector<Crossing> frontier{a};
  for (std::int64_t dist = 0; dist <= cap; ++dist) {
    for (const Crossing& c : frontier) {
      if (c == b) return dist;
    }
    std::vector<Crossing> next;
    for (const Crossing& c : frontier) {
      for (const Crossing& n : corona::neighbors(spec, c)) {
        if (seen.insert(n).second) next.push_back(n);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

/// |ball of radius n| in Z² with the 4-neighborhood, by BFS.
inline std::vector<std::size_t> lattice_ball_sizes(std::size_t n_max) {
  std::set<std::pair<int, int>> seen{{0, 0}};
  std::deque<std::pair<std::pair<int, int>, std::size_t>> queue{{{0, 0}, 0}};
  std::vector<std::size_t> per_distance(n_max + 1, 0);
  while (!queue.empty()) {
    auto [p, dist] = queue.front();
    queue.pop_front();
    ++per_distance[dist];
    if (dist == n_max) continue;
    for (auto [dx, dy] : std::array<std::pair<int, int>, 4>{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}}) {
      const std::pair<int, int> q{p.first + dx, p.second + dy};
      if (seen.insert(q).second) queue.push_back({q, dist + 1});
    }
  }
  std::vector<std::size_t> cumulative;
  std::size_t total = 0;
  for (std::size_t v : per_distance) cumulative.push_back(total += v);
  return cumulative;
}

}  // namespace oracle
