#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "corona/error.hpp"
#include "corona/geom.hpp"
#include "oracles.hpp"

using namespace corona;

namespace {

Polygon unit_square() { return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

Polygon regular(int n, double radius, double phase = 0.0) {
  std::vector<Point> v;
  for (int k = 0; k < n; ++k) v.push_back(std::polar(radius, phase + 2.0 * std::numbers::pi * k / n));
  return Polygon(v);
}

Polygon random_convex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<Point> pts;
  for (int k = 0; k < 12; ++k) pts.emplace_back(u(rng), u(rng));
  return convex_hull(pts);
}

}  // namespace

TEST_CASE("scalar product") {
  CHECK(scalar_product({1, 0}, {0, 1}) == 0.0);
  CHECK(scalar_product({1, 0}, {1, 0}) == 1.0);
  const Point z0 = 1.0;
  const Point z1 = std::polar(1.0, 2.0 * std::numbers::pi / 5.0);
  CHECK(scalar_product(perp(z0), z1) == doctest::Approx(0.951057).epsilon(1e-6));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 200; ++k) {
    const Point a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
    const double s = u(rng);
    CHECK(scalar_product(a, b) == scalar_product(b, a));
    CHECK(std::abs(scalar_product(a + s * b, c) - (scalar_product(a, c) + s * scalar_product(b, c))) < 1e-9);
  }
}

TEST_CASE("polygon construction is canonical and validated") {
  const Polygon p({{0, 1}, {0, 0}, {1, 0}, {1, 1}});
  CHECK(p == unit_square());
  CHECK(p[0] == Point(0, 0));  // argument tie with (1, 0) goes to the smaller modulus
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}}), Error);
  CHECK_THROWS_AS(Polygon({{0, 0}, {0, 1}, {1, 0}}), Error);          // clockwise
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}, {2, 0}, {1, 1}}), Error);  // collinear vertex
  CHECK(unit_square().area() == doctest::Approx(1.0));
}

TEST_CASE("convex hull") {
  const std::vector<Point> tri{{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}};
  const Polygon h = convex_hull(tri);
  CHECK(h.size() == 3);
  CHECK(h == Polygon({{0, 0}, {1, 0}, {0, 1}}));

  const std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}};
  CHECK(convex_hull(square) == unit_square());

  const std::vector<Point> line{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  try {
    convex_hull(line);
    FAIL("expected DegenerateInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateInput);
  }

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> disk;
  for (int k = 0; k < 1000; ++k) disk.push_back(std::polar(std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng)));
  const Polygon dh = convex_hull(disk);
  for (const Point& p : disk) CHECK(oracle::point_in_polygon(dh.vertices(), p));
  for (const Point& v : dh.vertices()) {
    CHECK(std::abs(v) <= 1.0);
    CHECK(std::abs(v) > 0.8);
  }
  CHECK(convex_hull(dh.vertices()) == dh);
}

TEST_CASE("containment, distance and gauge") {
  const Polygon sq = unit_square();
  CHECK(sq.contains({0.5, 0.5}));
  CHECK(sq.contains({1.0, 0.5}));
  CHECK_FALSE(sq.contains({1.1, 0.5}));
  CHECK(sq.distance_to({0.5, 0.5}) == 0.0);
  CHECK(sq.distance_to({2.0, 0.5}) == doctest::Approx(1.0));
  CHECK(sq.distance_to({2.0, 2.0}) == doctest::Approx(std::sqrt(2.0)));

  const Polygon dec = regular(10, 2.0);
  CHECK(dec.gauge(2.0) == doctest::Approx(1.0));
  CHECK(dec.gauge(5.0) == doctest::Approx(2.5));
  CHECK(dec.gauge(0.0) == 0.0);
  CHECK_THROWS_AS(sq.gauge({0.5, 0.5}), Error);  // origin on the boundary
}

TEST_CASE("hausdorff distance") {
  const Polygon sq = unit_square();
  CHECK(hausdorff_distance(sq, sq) == 0.0);
  const Polygon shifted({{1, 0}, {2, 0}, {2, 1}, {1, 1}});
  CHECK(hausdorff_distance(sq, shifted) == doctest::Approx(1.0));

  const Polygon d1 = regular(10, 1.0);
  const Polygon d11 = regular(10, 1.1);
  CHECK(hausdorff_distance(d1, d11) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(oracle::sampled_hausdorff(d1.vertices(), d11.vertices()) == doctest::Approx(0.1).epsilon(1e-3));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 30; ++k) {
    const Polygon a = random_convex(rng), b = random_convex(rng), c = random_convex(rng);
    const double ab = hausdorff_distance(a, b);
    CHECK(ab == hausdorff_distance(b, a));
    CHECK(ab <= hausdorff_distance(a, c) + hausdorff_distance(c, b) + 1e-12);
    CHECK(ab == doctest::Approx(oracle::sampled_hausdorff(a.vertices(), b.vertices(), 400)).epsilon(0.02));
    for (double lambda : {0.5, 2.0, 10.0}) {
      CHECK(std::abs(hausdorff_distance(scale_polygon(a, lambda), scale_polygon(b, lambda)) - lambda * ab) < 1e-9);
    }
  }
}

TEST_CASE("scale polygon") {
  const Polygon sq = unit_square();
  CHECK(scale_polygon(sq, 1.0) == sq);
  const Polygon big = scale_polygon(sq, 2.0);
  CHECK(big.vertices()[2] == Point(2, 2));
  CHECK(scale_polygon(sq, 2.0, {1, 1}).contains({-1, -1}));
  try {
    scale_polygon(sq, 0.0);
    FAIL("expected NonPositiveRatio");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveRatio);
  }
  CHECK_THROWS_AS(scale_polygon(sq, -1.0), Error);
}
