#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "corona/error.hpp"
#include "corona/graph.hpp"
#include "oracles.hpp"

using namespace corona;

namespace {

MultigridSpec square(double gamma) {
  const std::vector<double> angles{0.0, 90.0};
  return MultigridSpec::from_angles_deg(angles, {gamma});
}

// Seven directions whose consecutive gaps (mod 180°) all stay below 90°.
MultigridSpec random_seven(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> angles, offsets;
  for (int k = 0; k < 7; ++k) {
    angles.push_back(180.0 * (k + 0.15 + 0.7 * u(rng)) / 7.0);
    offsets.push_back(u(rng));
  }
  return MultigridSpec::from_angles_deg(angles, offsets);
}

Crossing pick(std::mt19937_64& rng, const std::vector<Crossing>& pool) {
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

bool adjacent_directions(const MultigridSpec& spec, int i, int j) {
  std::vector<std::pair<double, int>> folded;
  for (int m = 0; m < spec.d(); ++m) {
    double a = std::atan2(spec.normal(m).imag(), spec.normal(m).real());
    if (a < 0) a += std::numbers::pi;
    if (a >= std::numbers::pi - 1e-12) a -= std::numbers::pi;
    folded.emplace_back(a, m);
  }
  std::sort(folded.begin(), folded.end());
  for (std::size_t k = 0; k < folded.size(); ++k) {
    const int a = folded[k].second, b = folded[(k + 1) % folded.size()].second;
    if ((a == i && b == j) || (a == j && b == i)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("neighbors") {
  const MultigridSpec sq = square(0.0);
  const auto nb = neighbors(sq, make_crossing(sq, {0, 2}, {1, 3}));
  std::set<std::pair<long, long>> got;
  for (const Crossing& c : nb) got.insert({std::lround(c.point.real()), std::lround(c.point.imag())});
  CHECK(got == std::set<std::pair<long, long>>{{1, 3}, {3, 3}, {2, 2}, {2, 4}});

  const MultigridSpec pg = MultigridSpec::dfold(5, {0.5});
  const auto pool = crossings_in_disk(pg, 40.0);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    const Crossing c = pick(rng, pool);
    const auto around = neighbors(pg, c);
    for (const Crossing& n : around) {
      const auto back = neighbors(pg, n);
      CHECK(std::find(back.begin(), back.end(), c) != back.end());
    }
    // Predecessor then successor on line a, then on line b.
    const LineId lines[2] = {c.a, c.b};
    for (int l = 0; l < 2; ++l) {
      const double t = line_parameter(pg, lines[l], c.point);
      CHECK(around[2 * l] == oracle::next_crossing_scan(pg, lines[l], t, -1));
      CHECK(around[2 * l + 1] == oracle::next_crossing_scan(pg, lines[l], t, +1));
    }
  }
}

TEST_CASE("patches") {
  const MultigridSpec sq = square(0.5);
  CHECK_THROWS_AS(Patch(sq, {}), Error);
  try {
    Patch(sq, {make_crossing(sq, {0, 0}, {1, 0}), make_crossing(sq, {0, 5}, {1, 5})});
    FAIL("expected DisconnectedPatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DisconnectedPatch);
  }
  const Crossing c = make_crossing(sq, {0, 0}, {1, 0});
  const Patch p(sq, {c, c});
  CHECK(p.size() == 1);
  CHECK(p.contains(c));
}

TEST_CASE("corona steps on the square grid") {
  const MultigridSpec sq = square(0.5);
  Patch p(sq, {make_crossing(sq, {0, 0}, {1, 0})});
  CHECK(corona_step(sq, p).size() == 5);
  const auto oracle_sizes = oracle::lattice_ball_sizes(30);
  for (std::size_t n = 1; n <= 30; ++n) {
    const Patch next = corona_step(sq, p);
    for (const Crossing& c : p.crossings()) CHECK(next.contains(c));
    for (const Crossing& c : next.crossings()) {
      if (p.contains(c)) continue;
      const auto nb = neighbors(sq, c);
      CHECK(std::any_of(nb.begin(), nb.end(), [&](const Crossing& x) { return p.contains(x); }));
    }
    p = next;
    CHECK(p.size() == 2 * n * n + 2 * n + 1);
    CHECK(p.size() == oracle_sizes[n]);
  }
}

TEST_CASE("corona sequences") {
  const MultigridSpec pg = MultigridSpec::dfold(5, {0.5});
  const Patch seed(pg, {nearest_crossing(pg, {})});
  const CoronaSequence zero = corona_sequence(pg, seed, 0);
  CHECK(zero.n_max() == 0);
  CHECK(zero.cumulative_size(0) == 1);

  const CoronaSequence seq = corona_sequence(pg, seed, 80);
  // Frontiers are disjoint and partition P_n.
  std::set<Crossing> all;
  std::size_t total = 0;
  for (std::size_t n = 0; n <= 80; ++n) {
    total += seq.frontier(n).size();
    all.insert(seq.frontier(n).begin(), seq.frontier(n).end());
    CHECK(all.size() == total);
    CHECK(seq.cumulative_size(n) == total);
  }
  // Iterated corona steps agree.
  Patch p = seed;
  for (std::size_t n = 1; n <= 10; ++n) {
    p = corona_step(pg, p);
    auto cum = seq.cumulative(n);
    std::sort(cum.begin(), cum.end());
    CHECK(cum == p.crossings());
  }
  // Frontier members sit at BFS distance equal to their index.
  std::mt19937_64 rng(3);
  for (std::size_t n : {1, 5, 12, 20}) {
    for (int k = 0; k < 5; ++k) {
      const Crossing c = pick(rng, seq.frontier(n));
      CHECK(oracle::bfs_distance(pg, seed.crossings()[0], c, 25) == static_cast<std::int64_t>(n));
    }
  }
  const double ratio = static_cast<double>(seq.frontier(80).size()) / static_cast<double>(seq.frontier(40).size());
  MESSAGE("frontier(80)/frontier(40) = ", ratio);
  CHECK(std::abs(ratio - 2.0) <= 0.3);

  try {
    corona_sequence(pg, seed, 40, 100);
    FAIL("expected ResourceLimit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResourceLimit);
  }
}

TEST_CASE("graph distance") {
  const MultigridSpec pg = MultigridSpec::dfold(5, {0.5});
  const Crossing c = nearest_crossing(pg, {});
  CHECK(graph_distance(pg, c, c, 0) == 0);
  CHECK(graph_distance(pg, c, neighbors(pg, c)[1], 5) == 1);
  const Crossing far = nth_crossing(pg, c.a, c.point, +1, 12);
  CHECK(graph_distance(pg, c, far, 11) == std::nullopt);
  CHECK(graph_distance(pg, c, far, 12) == 12);

  std::mt19937_64 rng(4);
  const auto pool = crossings_in_disk(pg, 6.0);
  for (int k = 0; k < 40; ++k) {
    const Crossing a = pick(rng, pool), b = pick(rng, pool);
    CHECK(graph_distance(pg, a, b, 100) == oracle::bfs_distance(pg, a, b, 100));
  }
}

TEST_CASE("straight paths along a line are shortest") {
  std::mt19937_64 rng(5);
  for (const MultigridSpec& spec : {MultigridSpec::dfold(5, {0.5}), random_seven(rng)}) {
    const auto pool = crossings_in_disk(spec, 20.0);
    for (int k = 0; k < 100; ++k) {
      const Crossing a = pick(rng, pool);
      const LineId line = k % 2 ? a.a : a.b;
      const auto n = std::uniform_int_distribution<std::int64_t>(1, 15)(rng);
      const Crossing b = nth_crossing(spec, line, a.point, k % 3 ? 1 : -1, n);
      const double ta = line_parameter(spec, line, a.point), tb = line_parameter(spec, line, b.point);
      const auto between = static_cast<std::int64_t>(crossings_on_segment(spec, line, std::min(ta, tb), std::max(ta, tb)).size()) - 1;
      CHECK(graph_distance(spec, a, b, 100) == between + 1);
    }
  }
}

TEST_CASE("two-line paths through adjacent directions are shortest") {
  std::mt19937_64 rng(6);
  for (const MultigridSpec& spec : {MultigridSpec::dfold(5, {0.5}), random_seven(rng)}) {
    const auto pool = crossings_in_disk(spec, 15.0);
    int checked = 0;
    while (checked < 100) {
      const Crossing c = pick(rng, pool);
      if (!adjacent_directions(spec, c.a.grid, c.b.grid)) continue;
      std::uniform_int_distribution<std::int64_t> steps(1, 10);
      const Crossing a = nth_crossing(spec, c.a, c.point, rng() % 2 ? 1 : -1, steps(rng));
      const Crossing b = nth_crossing(spec, c.b, c.point, rng() % 2 ? 1 : -1, steps(rng));
      if (scalar_product(c.point - a.point, b.point - c.point) < 0.0) continue;
      const auto ab = graph_distance(spec, a, b, 100);
      REQUIRE(ab);
      CHECK(*ab == *graph_distance(spec, a, c, 100) + *graph_distance(spec, c, b, 100));
      ++checked;
    }
  }
}

TEST_CASE("every crossing type occurs within the density radius") {
  const MultigridSpec pg = MultigridSpec::dfold(5, {0.5});
  double max_inverse = 0.0;
  for (int i = 0; i < pg.d(); ++i) {
    for (int j = 0; j < pg.d(); ++j) {
      if (i != j) max_inverse = std::max(max_inverse, 1.0 / std::abs(scalar_product(pg.normal_perp(i), pg.normal(j))));
    }
  }
  const double r = 2.0 * max_inverse;
  const auto k_r = static_cast<std::size_t>(2 * (pg.d() - 1) * std::ceil(r / 2.0));
  std::mt19937_64 rng(8);
  const auto pool = crossings_in_disk(pg, 30.0);
  for (int k = 0; k < 100; ++k) {
    const Crossing z = pick(rng, pool);
    const CoronaSequence ball = corona_sequence(pg, Patch(pg, {z}), k_r);
    for (int i = 0; i < pg.d(); ++i) {
      for (int j = i + 1; j < pg.d(); ++j) {
        const auto members = ball.cumulative(k_r);
        const bool found = std::any_of(members.begin(), members.end(), [&](const Crossing& c) {
          return c.a.grid == i && c.b.grid == j && std::abs(c.point - z.point) <= r;
        });
        CHECK(found);
      }
    }
  }
}
