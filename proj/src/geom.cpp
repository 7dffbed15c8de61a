#include "corona/geom.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>

#include "corona/error.hpp"

namespace corona {

double argument_0_2pi(Point z) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::arg(z);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi - 1e-12) a = 0.0;
  return a;
}

namespace {

double segment_distance(Point p, Point a, Point b) noexcept {
  const Point ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(scalar_product(p - a, ab) / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// Distance from c to the line through a and b, signed positive on the left.
double signed_offset(Point a, Point b, Point c) noexcept {
  const double len = std::abs(b - a);
  if (len == 0.0) return 0.0;
  return cross(b - a, c - a) / len;
}

}  // namespace

Polygon::Polygon(std::vector<Point> ccw_vertices) : vertices_(std::move(ccw_vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw Error(ErrorCode::DegenerateInput, "polygon needs at least 3 vertices");
  for (const Point& v : vertices_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::DegenerateInput, "non-finite polygon vertex");
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Point a = vertices_[k];
    const Point b = vertices_[(k + 1) % n];
    const Point c = vertices_[(k + 2) % n];
    if (!(cross(b - a, c - b) > 0.0)) {
      throw Error(ErrorCode::DegenerateInput, "polygon is not strictly convex and counterclockwise");
    }
  }
  auto key_less = [](Point a, Point b) {
    const double aa = argument_0_2pi(a);
    const double ab = argument_0_2pi(b);
    if (aa != ab) return aa < ab;
    return std::norm(a) < std::norm(b);
  };
  const auto first = std::min_element(vertices_.begin(), vertices_.end(), key_less);
  std::rotate(vertices_.begin(), first, vertices_.end());
}

double Polygon::area() const noexcept {
  double twice = 0.0;
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    twice += cross(vertices_[k], vertices_[(k + 1) % vertices_.size()]);
  }
  return 0.5 * twice;
}

bool Polygon::contains(Point p, double eps) const noexcept {
  const std::size_t n = vertices_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (signed_offset(vertices_[k], vertices_[(k + 1) % n], p) < -eps) return false;
  }
  return true;
}

double Polygon::distance_to(Point p) const noexcept {
  if (contains(p, 0.0)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices_.size();
  for (std::size_t k = 0; k < n; ++k) {
    best = std::min(best, segment_distance(p, vertices_[k], vertices_[(k + 1) % n]));
  }
  return best;
}

double Polygon::gauge(Point p) const {
  const std::size_t n = vertices_.size();
  double lambda = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Point a = vertices_[k];
    const Point b = vertices_[(k + 1) % n];
    // Outward normal of a CCW edge is the clockwise quarter turn of its direction.
    const Point normal = -perp(b - a);
    const double support = scalar_product(normal, a);
    if (!(support > 0.0)) {
      throw Error(ErrorCode::DegenerateInput, "gauge requires the origin strictly inside the polygon");
    }
    lambda = std::max(lambda, scalar_product(normal, p) / support);
  }
  return lambda;
}

Polygon convex_hull(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point a, Point b) { return std::abs(a - b) <= kEpsGeom; }),
            pts.end());
  if (pts.size() < 3) throw Error(ErrorCode::DegenerateInput, "fewer than 3 distinct points");

  // Andrew's monotone chain; a point within kEpsGeom of the running edge is
  // treated as collinear and dropped.
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  auto keep_turning_left = [&](Point p) {
    while (k >= 2 && signed_offset(hull[k - 2], hull[k - 1], p) <= kEpsGeom) --k;
    hull[k++] = p;
  };
  for (const Point& p : pts) keep_turning_left(p);
  const std::size_t lower = k + 1;
  for (std::size_t idx = pts.size() - 1; idx-- > 0;) {
    const Point p = pts[idx];
    while (k >= lower && signed_offset(hull[k - 2], hull[k - 1], p) <= kEpsGeom) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw Error(ErrorCode::DegenerateInput, "all points are collinear");
  return Polygon(std::move(hull));
}

double hausdorff_distance(const Polygon& a, const Polygon& b) {
  double h = 0.0;
  for (const Point& v : a.vertices()) h = std::max(h, b.distance_to(v));
  for (const Point& v : b.vertices()) h = std::max(h, a.distance_to(v));
  return h;
}

Polygon scale_polygon(const Polygon& p, double ratio, Point center) {
  if (!(ratio > 0.0)) throw Error(ErrorCode::NonPositiveRatio, "homothety ratio must be positive");
  std::vector<Point> out;
  out.reserve(p.size());
  for (const Point& v : p.vertices()) out.push_back(center + ratio * (v - center));
  return Polygon(std::move(out));
}

}  // namespace corona
