#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "corona/geom.hpp"

namespace corona {

// Three lines meeting within this distance are reported as singular; looser
// than kEpsGeom so that near-singular configurations are refused as well.
inline constexpr double kEpsSingular = 1e-7;

/// Directions ζ_i (unit, pairwise non-parallel) and offsets γ_i ∈ [0, 1) of a
/// multigrid. The line (i, k) is {z : z·ζ_i − γ_i = k}.
class MultigridSpec {
 public:
  /// Throws Error(InvalidSpec) when an invariant is violated.
  MultigridSpec(std::vector<Point> normals, std::vector<double> offsets);

  /// ζ_k = e^{2πik/d}. `offsets` of size 1 is broadcast to all d grids.
  static MultigridSpec dfold(int d, std::vector<double> offsets);
  /// Normals from angles in degrees; multiples of 90° are snapped to exact axes.
  static MultigridSpec from_angles_deg(std::span<const double> degrees, std::vector<double> offsets);

  int d() const noexcept { return static_cast<int>(normals_.size()); }
  Point normal(int i) const { return normals_[static_cast<std::size_t>(i)]; }
  Point normal_perp(int i) const { return perp(normal(i)); }
  double offset(int i) const { return offsets_[static_cast<std::size_t>(i)]; }
  const std::vector<Point>& normals() const noexcept { return normals_; }
  const std::vector<double>& offsets() const noexcept { return offsets_; }

  /// z·ζ_i − γ_i; integer exactly on i-lines.
  double level(int i, Point z) const noexcept { return scalar_product(z, normal(i)) - offset(i); }

  friend bool operator==(const MultigridSpec&, const MultigridSpec&) = default;

 private:
  std::vector<Point> normals_;
  std::vector<double> offsets_;
};

/// Unit normal for an angle in degrees, exact at multiples of 90°.
Point unit_from_degrees(double degrees);

struct LineId {
  int grid = 0;
  std::int64_t k = 0;
  friend auto operator<=>(const LineId&, const LineId&) = default;
};

/// Intersection of an a.grid-line with a b.grid-line; a.grid < b.grid. Identity
/// is the integer key (a, b); `point` is a cached position.
struct Crossing {
  LineId a;
  LineId b;
  Point point;

  bool on_line(const LineId& line) const noexcept { return a == line || b == line; }
  /// The other line through this crossing. Precondition: on_line(line).
  const LineId& other(const LineId& line) const noexcept { return a == line ? b : a; }

  friend bool operator==(const Crossing& x, const Crossing& y) noexcept { return x.a == y.a && x.b == y.b; }
  friend bool operator<(const Crossing& x, const Crossing& y) noexcept {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  }
};

struct CrossingHash {
  std::size_t operator()(const Crossing& c) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(static_cast<std::uint64_t>(c.a.grid));
    mix(static_cast<std::uint64_t>(c.a.k));
    mix(static_cast<std::uint64_t>(c.b.grid));
    mix(static_cast<std::uint64_t>(c.b.k));
    return static_cast<std::size_t>(h);
  }
};

std::string to_string(const LineId& line);
std::string to_string(const Crossing& c);

/// Point on `line` at parameter t: (γ_i + k)ζ_i + t·ζ_i⊥.
Point line_point(const MultigridSpec& spec, const LineId& line, double t);
/// Parameter of z along `line` (z projected onto the line's direction ζ_i⊥).
double line_parameter(const MultigridSpec& spec, const LineId& line, Point z);

/// Solves the 2×2 system for the two line equations. Throws Error(ParallelLines).
Point crossing_point(const MultigridSpec& spec, const LineId& a, const LineId& b);
/// Crossing with canonical line order and cached point. Throws Error(ParallelLines).
Crossing make_crossing(const MultigridSpec& spec, LineId a, LineId b);

/// All crossings with |point| ≤ radius, sorted by key.
std::vector<Crossing> crossings_in_disk(const MultigridSpec& spec, double radius);

/// The crossing nearest to z (ties broken by key). Searches a growing disk.
Crossing nearest_crossing(const MultigridSpec& spec, Point z);

struct SingularPoint {
  Point point;
  std::vector<LineId> lines;  // three or more, sorted
};

struct RegularityReport {
  double window_radius = 0.0;
  std::size_t crossings_checked = 0;
  std::vector<SingularPoint> singular_points;
  bool regular() const noexcept { return singular_points.empty(); }
};

/// Reports every point with |point| ≤ window_radius where lines of three or
/// more grids meet within kEpsSingular. Throws Error(InvalidArgument) for a
/// non-positive radius.
RegularityReport check_regular(const MultigridSpec& spec, double window_radius);

/// Crossings of `line` with parameter in (t0, t1], ascending. Both ends are
/// matched within kEpsGeom so that a crossing passed as an endpoint is classified
/// by its position rather than by rounding.
/// Throws Error(SingularMultigrid) if two of them coincide within kEpsSingular.
std::vector<Crossing> crossings_on_segment(const MultigridSpec& spec, const LineId& line, double t0, double t1);

/// Number of type-(line.grid, j) crossings in (z, z + α·ζ_i⊥], computed in
/// closed form from the level values at both ends.
std::int64_t count_crossings_cj(const MultigridSpec& spec, const LineId& line, Point z, double alpha, int j);

/// Walks one line crossing by crossing. Each step picks, among the other
/// grids, the nearest next integer level in the travel direction.
class LineWalker {
 public:
  /// Starts at parameter `t` on `line`; direction is +1 or −1. A start lying on
  /// another grid's line counts as already passed.
  LineWalker(const MultigridSpec& spec, LineId line, double t, int direction);

  /// Advances to the next crossing. Throws Error(SingularMultigrid) if the two
  /// nearest candidates tie within kEpsSingular.
  Crossing next();

  double parameter() const noexcept { return t_; }
  /// The crossing at the start position, if the start lay on another line.
  const std::optional<Crossing>& start_crossing() const noexcept { return start_crossing_; }

 private:
  double level_parameter(int j, std::int64_t level) const;

  const MultigridSpec* spec_;
  LineId line_;
  int direction_;
  double t_;
  std::vector<std::int64_t> next_level_;
  std::vector<double> intercept_;  // level of grid j at t = 0
  std::vector<double> rate_;       // d(level_j)/dt
  std::optional<Crossing> start_crossing_;
};

/// The n-th crossing from `start` along ±ζ_i⊥. For n = 0 the start itself must
/// be a crossing (Error(NotACrossing) otherwise).
Crossing nth_crossing(const MultigridSpec& spec, const LineId& line, Point start, int direction, std::int64_t n);

struct DominantLines {
  std::vector<LineId> lines;  // lines[i].grid == i
};

/// Per grid, the line through some patch crossing that is closest to the
/// origin (minimal |γ_i + k|, then smaller k). Throws Error(GridNotRepresented).
DominantLines dominant_lines(const MultigridSpec& spec, std::span<const Crossing> patch);

struct EndpointPair {
  Crossing plus;   // e⁺: n-th crossing along +ζ_i⊥ from the extremal patch crossing
  Crossing minus;  // e⁻: n-th crossing along −ζ_i⊥
};

struct Endpoints {
  std::int64_t n = 0;
  std::vector<EndpointPair> pairs;  // one per grid
  std::vector<Point> points() const;
};

/// Endpoints E_n. Every dominant line must meet the patch.
Endpoints endpoints(const MultigridSpec& spec, const DominantLines& lines, std::span<const Crossing> patch, std::int64_t n);

}  // namespace corona
