#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "corona/dual.hpp"
#include "corona/error.hpp"
#include "corona/graph.hpp"
#include "oracles.hpp"

using namespace corona;

namespace {

MultigridSpec square(double gamma) {
  const std::vector<double> angles{0.0, 90.0};
  return MultigridSpec::from_angles_deg(angles, {gamma});
}

double angle_deg(Point a, Point b) { return std::acos(scalar_product(a, b) / (std::abs(a) * std::abs(b))) * 180.0 / std::numbers::pi; }

// Separating-axis overlap of two convex quads; shared edges do not count.
bool overlap(const std::array<Point, 4>& p, const std::array<Point, 4>& q) {
  for (const auto* poly : {&p, &q}) {
    for (std::size_t k = 0; k < 4; ++k) {
      const Point axis = perp((*poly)[(k + 1) % 4] - (*poly)[k]);
      double p0 = INFINITY, p1 = -INFINITY, q0 = INFINITY, q1 = -INFINITY;
      for (const Point& v : p) p0 = std::min(p0, scalar_product(v, axis)), p1 = std::max(p1, scalar_product(v, axis));
      for (const Point& v : q) q0 = std::min(q0, scalar_product(v, axis)), q1 = std::max(q1, scalar_product(v, axis));
      if (p1 <= q0 + 1e-9 || q1 <= p0 + 1e-9) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("dualization F") {
  const MultigridSpec pg = MultigridSpec::dfold(5, {0.5});
  const TilingVertex v0 = dualize_F(pg, 0.0);
  CHECK(v0.key == VertexKey{0, 0, 0, 0, 0});
  CHECK(std::abs(v0.position) < 1e-12);

  const TilingVertex sq = dualize_F(square(0.0), {0.5, 0.5});
  CHECK(sq.key == VertexKey{1, 1});
  CHECK(std::abs(sq.position - Point(1, 1)) < 1e-12);

  try {
    dualize_F(square(0.0), {1.0, 0.5});
    FAIL("expected OnGridLine");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OnGridLine);
  }

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10'000; ++k) {
    const Point z = std::polar(100.0 * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
    const TilingVertex v = dualize_F(pg, z);
    CHECK(std::abs(v.position - linear_dual(pg, z)) <= 10.0);
    CHECK(std::abs(vertex_position(pg, v.key) - v.position) < 1e-9);
  }
}

TEST_CASE("linear dual") {
  const MultigridSpec pg = MultigridSpec::dfold(5, {0.5});
  CHECK(std::abs(linear_dual(pg, 0.0)) == 0.0);
  CHECK(std::abs(linear_dual(pg, 1.0) - 2.5) < 1e-12);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int d : {3, 5, 7}) {
    const MultigridSpec spec = MultigridSpec::dfold(d, {0.5});
    for (int k = 0; k < 100; ++k) {
      const Point z(u(rng), u(rng));
      CHECK(std::abs(linear_dual(spec, z) - (d / 2.0) * z) < 1e-12 * std::max(1.0, std::abs(z)) * d);
    }
  }
}

TEST_CASE("tiles of crossings") {
  const MultigridSpec sq = square(0.0);
  const Tile t = tile_of_crossing(sq, make_crossing(sq, {0, 2}, {1, 3}));
  const std::set<std::pair<double, double>> corners{{t.corners[0].real(), t.corners[0].imag()},
                                                    {t.corners[1].real(), t.corners[1].imag()},
                                                    {t.corners[2].real(), t.corners[2].imag()},
                                                    {t.corners[3].real(), t.corners[3].imag()}};
  CHECK(corners == std::set<std::pair<double, double>>{{2, 3}, {3, 3}, {2, 4}, {3, 4}});

  const MultigridSpec pg = MultigridSpec::dfold(5, {0.5});
  const Tile fat = tile_of_crossing(pg, make_crossing(pg, {0, 0}, {1, 0}));
  CHECK(angle_deg(fat.corners[1] - fat.corners[0], fat.corners[3] - fat.corners[0]) == doctest::Approx(72.0));
  const Tile thin = tile_of_crossing(pg, make_crossing(pg, {0, 0}, {2, 0}));
  CHECK(angle_deg(thin.corners[1] - thin.corners[0], thin.corners[3] - thin.corners[0]) == doctest::Approx(144.0));

  // A third line through the crossing is refused.
  const MultigridSpec zero = MultigridSpec::dfold(5, {0.0});
  try {
    tile_of_crossing(zero, make_crossing(zero, {0, 0}, {1, 0}));
    FAIL("expected SingularMultigrid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMultigrid);
  }
}

TEST_CASE("integer tile construction matches cell sampling") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<MultigridSpec> specs{MultigridSpec::dfold(5, {0.5}), MultigridSpec::dfold(7, {0.2, 0.9, 0.4, 0.1, 0.6, 0.33, 0.71})};
  for (const MultigridSpec& spec : specs) {
    for (const Crossing& c : crossings_in_disk(spec, 8.0)) {
      const Tile t = tile_of_crossing(spec, c);
      const std::set<VertexKey> expected = oracle::tile_keys_by_sampling(spec, c);
      CHECK(std::set<VertexKey>(t.keys.begin(), t.keys.end()) == expected);
      // Keys differ from the base only in coordinates i and j.
      for (std::size_t m = 0; m < t.keys[0].size(); ++m) {
        if (static_cast<int>(m) == t.grid_i() || static_cast<int>(m) == t.grid_j()) continue;
        for (const auto& k : t.keys) CHECK(k[m] == t.keys[0][m]);
      }
      for (std::size_t k = 0; k < 4; ++k) {
        const Point edge = t.corners[(k + 1) % 4] - t.corners[k];
        CHECK(std::abs(std::abs(edge) - 1.0) < 1e-9);
        const bool along_i = std::abs(std::abs(scalar_product(edge, spec.normal(t.grid_i()))) - 1.0) < 1e-9;
        const bool along_j = std::abs(std::abs(scalar_product(edge, spec.normal(t.grid_j()))) - 1.0) < 1e-9;
        CHECK((along_i || along_j));
      }
    }
  }
}

TEST_CASE("tiling windows") {
  const MultigridSpec sq = square(0.0);
  const TilingWindow block(sq, 2.5);
  CHECK(block.size() == 21);  // lattice points with |z| <= 2.5
  const TilingWindow sq_half(square(0.5), 2.5);
  CHECK(sq_half.contains(make_crossing(sq_half.spec(), {0, 0}, {1, 0})));

  for (const MultigridSpec& spec : {MultigridSpec::dfold(5, {0.5}), MultigridSpec::dfold(5, {0.1, 0.3, 0.2, 0.25, 0.15})}) {
    const TilingWindow w(spec, 10.0);
    std::map<std::pair<VertexKey, VertexKey>, std::vector<Crossing>> edges;
    std::vector<std::pair<Crossing, std::array<Point, 4>>> quads;
    for (const auto& [c, t] : w.tiles()) {
      CHECK(std::abs(c.point) <= 10.0);
      for (std::size_t k = 0; k < 4; ++k) {
        auto e = std::minmax(t.keys[k], t.keys[(k + 1) % 4]);
        edges[{e.first, e.second}].push_back(c);
        CHECK(w.vertices().at(t.keys[k]) == t.corners[k]);
      }
      quads.emplace_back(c, t.corners);
    }
    // Pairwise overlap audit over every pair.
    std::size_t overlapping = 0;
    for (std::size_t a = 0; a < quads.size(); ++a) {
      for (std::size_t b = a + 1; b < quads.size(); ++b) {
        if (std::abs(quads[a].second[0] - quads[b].second[0]) < 4.0 && overlap(quads[a].second, quads[b].second)) ++overlapping;
      }
    }
    CHECK(overlapping == 0);
    // Edge audit: shared edges pair crossings consecutive on a common line.
    for (const auto& [c, t] : w.tiles()) {
      if (std::abs(c.point) > 8.0) continue;
      for (std::size_t k = 0; k < 4; ++k) {
        auto e = std::minmax(t.keys[k], t.keys[(k + 1) % 4]);
        const auto& owners = edges[{e.first, e.second}];
        REQUIRE(owners.size() == 2);
        const Crossing& other = owners[0] == c ? owners[1] : owners[0];
        const auto nb = neighbors(spec, c);
        CHECK(std::find(nb.begin(), nb.end(), other) != nb.end());
      }
    }
  }
}
