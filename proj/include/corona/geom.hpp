#pragma once

#include <complex>
#include <span>
#include <vector>

namespace corona {

// The plane is identified with the complex numbers.
using Point = std::complex<double>;

// Tolerance for point equality and hull collinearity.
inline constexpr double kEpsGeom = 1e-9;

/// Re(a * conj(b)).
inline double scalar_product(Point a, Point b) noexcept {
  return a.real() * b.real() + a.imag() * b.imag();
}

/// Counterclockwise quarter turn, z ↦ i·z.
inline Point perp(Point z) noexcept { return {-z.imag(), z.real()}; }

/// z-component of the 3D cross product; positive when b is counterclockwise of a.
inline double cross(Point a, Point b) noexcept {
  return a.real() * b.imag() - a.imag() * b.real();
}

/// Argument in [0, 2π), with values within 1e-12 of 2π folded to 0.
double argument_0_2pi(Point z) noexcept;

/// Strictly convex polygon, stored counterclockwise starting from the vertex of
/// smallest argument (ties: smaller modulus). Immutable once built.
class Polygon {
 public:
  /// Validates that `ccw_vertices` is a strictly convex counterclockwise loop
  /// (at least 3 vertices) and rotates it to canonical order.
  explicit Polygon(std::vector<Point> ccw_vertices);

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  Point operator[](std::size_t k) const { return vertices_[k]; }

  double area() const noexcept;

  /// Closed containment with tolerance `eps` (boundary counts as inside).
  bool contains(Point p, double eps = kEpsGeom) const noexcept;

  /// Euclidean distance from p to the filled polygon (0 inside).
  double distance_to(Point p) const noexcept;

  /// Gauge (Minkowski functional) with respect to the origin: the smallest
  /// λ ≥ 0 with p ∈ λ·P. Requires the origin strictly inside.
  double gauge(Point p) const;

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  std::vector<Point> vertices_;
};

/// Minimal convex polygon containing every input; collinear and duplicate
/// points are dropped. Throws Error(DegenerateInput) when fewer than three
/// non-collinear points are given.
Polygon convex_hull(std::span<const Point> points);

/// Symmetric Hausdorff distance between the filled convex regions.
double hausdorff_distance(const Polygon& a, const Polygon& b);

/// Homothety v ↦ center + ratio·(v − center). Throws Error(NonPositiveRatio).
Polygon scale_polygon(const Polygon& p, double ratio, Point center = {});

}  // namespace corona
