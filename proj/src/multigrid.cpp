#include "corona/multigrid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include <fmt/format.h>

#include "corona/error.hpp"

namespace corona {

namespace {

int sign_of(double x) noexcept { return x > 0.0 ? 1 : -1; }

void require_on_line(const MultigridSpec& spec, const LineId& line, Point z) {
  const double residual = spec.level(line.grid, z) - static_cast<double>(line.k);
  if (std::abs(residual) > kEpsGeom) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("point ({}, {}) is not on line {}", z.real(), z.imag(), to_string(line)));
  }
}

void require_grid(const MultigridSpec& spec, int grid) {
  if (grid < 0 || grid >= spec.d()) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("grid index {} out of range [0, {})", grid, spec.d()));
  }
}

}  // namespace

MultigridSpec::MultigridSpec(std::vector<Point> normals, std::vector<double> offsets)
    : normals_(std::move(normals)), offsets_(std::move(offsets)) {
  if (normals_.size() < 2) throw Error(ErrorCode::InvalidSpec, "a multigrid needs at least 2 grids");
  if (normals_.size() != offsets_.size()) {
    throw Error(ErrorCode::InvalidSpec,
                fmt::format("{} normals but {} offsets", normals_.size(), offsets_.size()));
  }
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    const Point z = normals_[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(std::abs(z) - 1.0) > kEpsGeom) {
      throw Error(ErrorCode::InvalidSpec, fmt::format("normal {} is not a unit vector", i));
    }
    if (!std::isfinite(offsets_[i]) || offsets_[i] < 0.0 || offsets_[i] >= 1.0) {
      throw Error(ErrorCode::InvalidSpec, fmt::format("offset {} = {} is outside [0, 1)", i, offsets_[i]));
    }
  }
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    for (std::size_t j = i + 1; j < normals_.size(); ++j) {
      if (std::abs(scalar_product(perp(normals_[i]), normals_[j])) <= kEpsGeom) {
        throw Error(ErrorCode::InvalidSpec, fmt::format("normals {} and {} are parallel", i, j));
      }
    }
  }
}

MultigridSpec MultigridSpec::dfold(int d, std::vector<double> offsets) {
  if (d < 2) throw Error(ErrorCode::InvalidSpec, "d-fold multigrid needs d >= 2");
  if (offsets.size() == 1) offsets.assign(static_cast<std::size_t>(d), offsets.front());
  std::vector<Point> normals;
  for (int k = 0; k < d; ++k) {
    normals.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / d));
  }
  return MultigridSpec(std::move(normals), std::move(offsets));
}

Point unit_from_degrees(double degrees) {
  const double turns = degrees / 90.0;
  if (turns == std::floor(turns)) {
    switch (((static_cast<long long>(turns) % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, degrees * std::numbers::pi / 180.0);
}

MultigridSpec MultigridSpec::from_angles_deg(std::span<const double> degrees, std::vector<double> offsets) {
  if (offsets.size() == 1 && degrees.size() > 1) offsets.assign(degrees.size(), offsets.front());
  std::vector<Point> normals;
  for (double a : degrees) normals.push_back(unit_from_degrees(a));
  return MultigridSpec(std::move(normals), std::move(offsets));
}

std::string to_string(const LineId& line) { return fmt::format("({},{})", line.grid, line.k); }

std::string to_string(const Crossing& c) {
  return fmt::format("[{},{},{},{}]", c.a.grid, c.b.grid, c.a.k, c.b.k);
}

Point line_point(const MultigridSpec& spec, const LineId& line, double t) {
  require_grid(spec, line.grid);
  const double foot = spec.offset(line.grid) + static_cast<double>(line.k);
  return foot * spec.normal(line.grid) + t * spec.normal_perp(line.grid);
}

double line_parameter(const MultigridSpec& spec, const LineId& line, Point z) {
  require_grid(spec, line.grid);
  return scalar_product(z, spec.normal_perp(line.grid));
}

Point crossing_point(const MultigridSpec& spec, const LineId& a, const LineId& b) {
  require_grid(spec, a.grid);
  require_grid(spec, b.grid);
  if (a.grid == b.grid) throw Error(ErrorCode::ParallelLines, "lines " + to_string(a) + " and " + to_string(b));
  const Point za = spec.normal(a.grid);
  const Point zb = spec.normal(b.grid);
  const double ra = static_cast<double>(a.k) + spec.offset(a.grid);
  const double rb = static_cast<double>(b.k) + spec.offset(b.grid);
  const double det = cross(za, zb);
  return {(ra * zb.imag() - rb * za.imag()) / det, (za.real() * rb - zb.real() * ra) / det};
}

Crossing make_crossing(const MultigridSpec& spec, LineId a, LineId b) {
  if (a.grid > b.grid) std::swap(a, b);
  return Crossing{a, b, crossing_point(spec, a, b)};
}

namespace {

std::vector<Crossing> crossings_in_disk_around(const MultigridSpec& spec, Point center, double radius) {
  std::vector<Crossing> out;
  if (!(radius >= 0.0)) return out;
  const int d = spec.d();
  for (int i = 0; i < d; ++i) {
    const double ci = scalar_product(center, spec.normal(i)) - spec.offset(i);
    const auto ki_lo = static_cast<std::int64_t>(std::ceil(ci - radius));
    const auto ki_hi = static_cast<std::int64_t>(std::floor(ci + radius));
    for (int j = i + 1; j < d; ++j) {
      const double along = scalar_product(spec.normal_perp(i), spec.normal(j));
      const double across = scalar_product(spec.normal(i), spec.normal(j));
      for (std::int64_t ki = ki_lo; ki <= ki_hi; ++ki) {
        // Offset of the i-line from the center, and the half-chord it cuts from the disk.
        const double foot = static_cast<double>(ki) + spec.offset(i);
        const double dist = foot - scalar_product(center, spec.normal(i));
        const double half = std::sqrt(std::max(0.0, radius * radius - dist * dist));
        const double tc = scalar_product(center, spec.normal_perp(i));
        // Level of grid j along the i-line is linear in the parameter t.
        const double lv0 = foot * across - spec.offset(j) + (tc - half) * along;
        const double lv1 = foot * across - spec.offset(j) + (tc + half) * along;
        const auto kj_lo = static_cast<std::int64_t>(std::floor(std::min(lv0, lv1))) - 1;
        const auto kj_hi = static_cast<std::int64_t>(std::ceil(std::max(lv0, lv1))) + 1;
        for (std::int64_t kj = kj_lo; kj <= kj_hi; ++kj) {
          Crossing c = make_crossing(spec, {i, ki}, {j, kj});
          if (std::abs(c.point - center) <= radius) out.push_back(c);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Crossing> crossings_in_disk(const MultigridSpec& spec, double radius) {
  return crossings_in_disk_around(spec, Point{}, radius);
}

Crossing nearest_crossing(const MultigridSpec& spec, Point z) {
  for (double r = 1.0;; r *= 2.0) {
    const auto found = crossings_in_disk_around(spec, z, r);
    if (found.empty()) continue;
    // Sorted by key, so min_element breaks distance ties by key.
    return *std::min_element(found.begin(), found.end(), [z](const Crossing& x, const Crossing& y) {
      return std::abs(x.point - z) < std::abs(y.point - z);
    });
  }
}

RegularityReport check_regular(const MultigridSpec& spec, double window_radius) {
  if (!(window_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "window radius must be positive");
  RegularityReport report;
  report.window_radius = window_radius;
  const auto crossings = crossings_in_disk(spec, window_radius);
  report.crossings_checked = crossings.size();
  std::set<std::vector<LineId>> seen;
  for (const Crossing& c : crossings) {
    std::vector<LineId> lines{c.a, c.b};
    for (int m = 0; m < spec.d(); ++m) {
      if (m == c.a.grid || m == c.b.grid) continue;
      const double v = spec.level(m, c.point);
      const double nearest = std::round(v);
      if (std::abs(v - nearest) < kEpsSingular) lines.push_back({m, static_cast<std::int64_t>(nearest)});
    }
    if (lines.size() < 3) continue;
    std::sort(lines.begin(), lines.end());
    if (seen.insert(lines).second) report.singular_points.push_back({c.point, std::move(lines)});
  }
  return report;
}

std::vector<Crossing> crossings_on_segment(const MultigridSpec& spec, const LineId& line, double t0, double t1) {
  require_grid(spec, line.grid);
  std::vector<std::pair<double, Crossing>> found;
  if (!(t0 < t1)) return {};
  const int i = line.grid;
  const double foot = static_cast<double>(line.k) + spec.offset(i);
  for (int j = 0; j < spec.d(); ++j) {
    if (j == i) continue;
    const double rate = scalar_product(spec.normal_perp(i), spec.normal(j));
    const double intercept = foot * scalar_product(spec.normal(i), spec.normal(j)) - spec.offset(j);
    const double v0 = intercept + rate * t0;
    const double v1 = intercept + rate * t1;
    const auto lo = static_cast<std::int64_t>(std::floor(std::min(v0, v1))) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil(std::max(v0, v1))) + 1;
    for (std::int64_t level = lo; level <= hi; ++level) {
      const double t = (static_cast<double>(level) - intercept) / rate;
      // Endpoints are matched with tolerance: a crossing sitting at t0 or t1
      // recomputes its parameter only up to rounding.
      if (t > t0 + kEpsGeom && t <= t1 + kEpsGeom) found.emplace_back(t, make_crossing(spec, line, {j, level}));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Crossing> out;
  out.reserve(found.size());
  for (std::size_t k = 0; k < found.size(); ++k) {
    if (k > 0 && found[k].first - found[k - 1].first <= kEpsSingular) {
      throw Error(ErrorCode::SingularMultigrid,
                  fmt::format("crossings {} and {} coincide on line {}", to_string(found[k - 1].second),
                              to_string(found[k].second), to_string(line)));
    }
    out.push_back(found[k].second);
  }
  return out;
}

std::int64_t count_crossings_cj(const MultigridSpec& spec, const LineId& line, Point z, double alpha, int j) {
  require_grid(spec, line.grid);
  require_grid(spec, j);
  if (j == line.grid) throw Error(ErrorCode::SameGrid, fmt::format("grid {} crossing itself", j));
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  require_on_line(spec, line, z);
  const Point far = z + alpha * spec.normal_perp(line.grid);
  const double v0 = spec.level(j, z);
  const double v1 = spec.level(j, far);
  // Integer levels in (v0, v1] when the level increases along the segment,
  // in [v1, v0) when it decreases.
  if (v1 >= v0) return static_cast<std::int64_t>(std::floor(v1) - std::floor(v0));
  return static_cast<std::int64_t>(std::ceil(v0) - std::ceil(v1));
}

LineWalker::LineWalker(const MultigridSpec& spec, LineId line, double t, int direction)
    : spec_(&spec), line_(line), direction_(direction), t_(t) {
  require_grid(spec, line.grid);
  if (direction != 1 && direction != -1) throw Error(ErrorCode::InvalidArgument, "direction must be +1 or -1");
  const int d = spec.d();
  const int i = line.grid;
  const double foot = static_cast<double>(line.k) + spec.offset(i);
  next_level_.assign(static_cast<std::size_t>(d), 0);
  intercept_.assign(static_cast<std::size_t>(d), 0.0);
  rate_.assign(static_cast<std::size_t>(d), 0.0);
  std::vector<LineId> on_lines;
  for (int j = 0; j < d; ++j) {
    if (j == i) continue;
    const auto ju = static_cast<std::size_t>(j);
    rate_[ju] = scalar_product(spec.normal_perp(i), spec.normal(j));
    intercept_[ju] = foot * scalar_product(spec.normal(i), spec.normal(j)) - spec.offset(j);
    const double v = intercept_[ju] + rate_[ju] * t;
    const int step = sign_of(rate_[ju] * direction);
    const double nearest = std::round(v);
    if (std::abs(v - nearest) < kEpsSingular) {
      on_lines.push_back({j, static_cast<std::int64_t>(nearest)});
      next_level_[ju] = static_cast<std::int64_t>(nearest) + step;
    } else {
      next_level_[ju] = static_cast<std::int64_t>(step > 0 ? std::floor(v) + 1.0 : std::ceil(v) - 1.0);
    }
  }
  if (on_lines.size() >= 2) {
    throw Error(ErrorCode::SingularMultigrid,
                fmt::format("lines {}, {} and {} meet", to_string(line), to_string(on_lines[0]), to_string(on_lines[1])));
  }
  if (on_lines.size() == 1) start_crossing_ = make_crossing(spec, line, on_lines.front());
}

double LineWalker::level_parameter(int j, std::int64_t level) const {
  const auto ju = static_cast<std::size_t>(j);
  return (static_cast<double>(level) - intercept_[ju]) / rate_[ju];
}

Crossing LineWalker::next() {
  int best = -1;
  double best_travel = std::numeric_limits<double>::infinity();
  double second_travel = std::numeric_limits<double>::infinity();
  for (int j = 0; j < spec_->d(); ++j) {
    if (j == line_.grid) continue;
    const double travel = direction_ * (level_parameter(j, next_level_[static_cast<std::size_t>(j)]) - t_);
    if (travel < best_travel) {
      second_travel = best_travel;
      best_travel = travel;
      best = j;
    } else if (travel < second_travel) {
      second_travel = travel;
    }
  }
  if (second_travel - best_travel <= kEpsSingular) {
    throw Error(ErrorCode::SingularMultigrid,
                fmt::format("two crossings coincide on line {} near parameter {}", to_string(line_),
                            t_ + direction_ * best_travel));
  }
  const auto bu = static_cast<std::size_t>(best);
  const std::int64_t level = next_level_[bu];
  t_ = level_parameter(best, level);
  next_level_[bu] += sign_of(rate_[bu] * direction_);
  return make_crossing(*spec_, line_, {best, level});
}

Crossing nth_crossing(const MultigridSpec& spec, const LineId& line, Point start, int direction, std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be non-negative");
  require_grid(spec, line.grid);
  require_on_line(spec, line, start);
  LineWalker walker(spec, line, line_parameter(spec, line, start), direction);
  if (n == 0) {
    if (!walker.start_crossing()) {
      throw Error(ErrorCode::NotACrossing, "start point is not a crossing of line " + to_string(line));
    }
    return *walker.start_crossing();
  }
  Crossing c = walker.next();
  for (std::int64_t step = 1; step < n; ++step) c = walker.next();
  return c;
}

DominantLines dominant_lines(const MultigridSpec& spec, std::span<const Crossing> patch) {
  if (patch.empty()) throw Error(ErrorCode::InvalidArgument, "empty patch");
  std::vector<std::optional<LineId>> best(static_cast<std::size_t>(spec.d()));
  auto consider = [&](const LineId& line) {
    auto& slot = best[static_cast<std::size_t>(line.grid)];
    const double dist = std::abs(spec.offset(line.grid) + static_cast<double>(line.k));
    if (!slot) {
      slot = line;
      return;
    }
    const double cur = std::abs(spec.offset(line.grid) + static_cast<double>(slot->k));
    if (dist < cur || (dist == cur && line.k < slot->k)) slot = line;
  };
  for (const Crossing& c : patch) {
    consider(c.a);
    consider(c.b);
  }
  DominantLines out;
  for (int i = 0; i < spec.d(); ++i) {
    const auto& slot = best[static_cast<std::size_t>(i)];
    if (!slot) throw Error(ErrorCode::GridNotRepresented, fmt::format("no line of grid {} meets the patch", i));
    out.lines.push_back(*slot);
  }
  return out;
}

std::vector<Point> Endpoints::points() const {
  std::vector<Point> out;
  for (const auto& p : pairs) {
    out.push_back(p.plus.point);
    out.push_back(p.minus.point);
  }
  return out;
}

Endpoints endpoints(const MultigridSpec& spec, const DominantLines& lines, std::span<const Crossing> patch,
                    std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be non-negative");
  Endpoints out;
  out.n = n;
  for (const LineId& line : lines.lines) {
    const Crossing* lowest = nullptr;
    const Crossing* highest = nullptr;
    double t_low = 0.0;
    double t_high = 0.0;
    for (const Crossing& c : patch) {
      if (!c.on_line(line)) continue;
      const double t = line_parameter(spec, line, c.point);
      if (!lowest || t < t_low) {
        lowest = &c;
        t_low = t;
      }
      if (!highest || t > t_high) {
        highest = &c;
        t_high = t;
      }
    }
    if (!lowest) {
      throw Error(ErrorCode::GridNotRepresented, "dominant line " + to_string(line) + " misses the patch");
    }
    out.pairs.push_back({nth_crossing(spec, line, highest->point, +1, n),
                         nth_crossing(spec, line, lowest->point, -1, n)});
  }
  return out;
}

}  // namespace corona
