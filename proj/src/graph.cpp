#include "corona/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <fmt/format.h>

#include "corona/error.hpp"

namespace corona {

Crossing next_on_line(const MultigridSpec& spec, const Crossing& c, const LineId& line, int direction) {
  const int i = line.grid;
  const LineId& across = c.other(line);
  const double foot = static_cast<double>(line.k) + spec.offset(i);
  const Point zi = spec.normal(i);
  const Point zi_perp = spec.normal_perp(i);

  auto rate_of = [&](int m) { return scalar_product(zi_perp, spec.normal(m)); };
  auto intercept_of = [&](int m) { return foot * scalar_product(zi, spec.normal(m)) - spec.offset(m); };

  const double t_here = (static_cast<double>(across.k) - intercept_of(across.grid)) / rate_of(across.grid);

  int best_grid = -1;
  std::int64_t best_level = 0;
  double best = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  for (int m = 0; m < spec.d(); ++m) {
    if (m == i) continue;
    const double rate = rate_of(m);
    const double intercept = intercept_of(m);
    const int step = rate * direction > 0.0 ? 1 : -1;
    std::int64_t level = 0;
    if (m == across.grid) {
      level = across.k + step;
    } else {
      const double v = intercept + rate * t_here;
      if (std::abs(v - std::round(v)) < kEpsSingular) {
        throw Error(ErrorCode::SingularMultigrid,
                    fmt::format("a line of grid {} passes through crossing {}", m, to_string(c)));
      }
      level = static_cast<std::int64_t>(step > 0 ? std::floor(v) + 1.0 : std::ceil(v) - 1.0);
    }
    const double travel = direction * ((static_cast<double>(level) - intercept) / rate - t_here);
    if (travel < best) {
      second = best;
      best = travel;
      best_grid = m;
      best_level = level;
    } else if (travel < second) {
      second = travel;
    }
  }
  if (second - best <= kEpsSingular) {
    throw Error(ErrorCode::SingularMultigrid,
                fmt::format("two crossings coincide next to {} on line {}", to_string(c), to_string(line)));
  }
  return make_crossing(spec, line, {best_grid, best_level});
}

std::array<Crossing, 4> neighbors(const MultigridSpec& spec, const Crossing& c) {
  return {next_on_line(spec, c, c.a, -1), next_on_line(spec, c, c.a, +1), next_on_line(spec, c, c.b, -1),
          next_on_line(spec, c, c.b, +1)};
}

Patch::Patch(const MultigridSpec& spec, std::vector<Crossing> crossings) : crossings_(std::move(crossings)) {
  if (crossings_.empty()) throw Error(ErrorCode::InvalidArgument, "a patch needs at least one crossing");
  std::sort(crossings_.begin(), crossings_.end());
  crossings_.erase(std::unique(crossings_.begin(), crossings_.end()), crossings_.end());

  const CrossingSet members(crossings_.begin(), crossings_.end());
  CrossingSet reached{crossings_.front()};
  std::vector<Crossing> stack{crossings_.front()};
  while (!stack.empty()) {
    const Crossing c = stack.back();
    stack.pop_back();
    for (const Crossing& n : neighbors(spec, c)) {
      if (members.count(n) && reached.insert(n).second) stack.push_back(n);
    }
  }
  if (reached.size() != members.size()) {
    throw Error(ErrorCode::DisconnectedPatch,
                fmt::format("{} of {} crossings reachable inside the patch", reached.size(), members.size()));
  }
}

bool Patch::contains(const Crossing& c) const {
  return std::binary_search(crossings_.begin(), crossings_.end(), c);
}

Patch corona_step(const MultigridSpec& spec, const Patch& p) {
  std::vector<Crossing> grown = p.crossings();
  for (const Crossing& c : p.crossings()) {
    for (const Crossing& n : neighbors(spec, c)) grown.push_back(n);
  }
  return Patch(spec, std::move(grown));
}

CoronaSequence::CoronaSequence(const Patch& base, std::vector<std::vector<Crossing>> frontiers)
    : base_(base), frontiers_(std::move(frontiers)) {
  if (frontiers_.empty()) throw Error(ErrorCode::InvalidArgument, "corona sequence needs frontier 0");
}

std::vector<Crossing> CoronaSequence::cumulative(std::size_t n) const {
  std::vector<Crossing> out;
  out.reserve(cumulative_size(n));
  for (std::size_t k = 0; k <= n; ++k) {
    const auto& f = frontiers_.at(k);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

std::size_t CoronaSequence::cumulative_size(std::size_t n) const {
  std::size_t total = 0;
  for (std::size_t k = 0; k <= n; ++k) total += frontiers_.at(k).size();
  return total;
}

CoronaSequence corona_sequence(const MultigridSpec& spec, const Patch& p, std::size_t n_max,
                               std::size_t crossing_cap) {
  CrossingSet visited(p.crossings().begin(), p.crossings().end());
  std::vector<std::vector<Crossing>> frontiers{p.crossings()};
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<Crossing> next;
    for (const Crossing& c : frontiers.back()) {
      for (const Crossing& nb : neighbors(spec, c)) {
        if (visited.insert(nb).second) next.push_back(nb);
      }
    }
    if (visited.size() > crossing_cap) {
      throw Error(ErrorCode::ResourceLimit,
                  fmt::format("corona {} needs more than {} crossings", n, crossing_cap));
    }
    std::sort(next.begin(), next.end());
    frontiers.push_back(std::move(next));
  }
  return CoronaSequence(p, std::move(frontiers));
}

std::optional<std::int64_t> graph_distance(const MultigridSpec& spec, const Crossing& a, const Crossing& b,
                                           std::int64_t cap) {
  if (a == b) return 0;
  if (cap <= 0) return std::nullopt;
  // Bidirectional BFS, expanding whole layers of the smaller side.
  using DistMap = std::unordered_map<Crossing, std::int64_t, CrossingHash>;
  DistMap from_a{{a, 0}};
  DistMap from_b{{b, 0}};
  std::vector<Crossing> layer_a{a};
  std::vector<Crossing> layer_b{b};
  std::int64_t depth_a = 0;
  std::int64_t depth_b = 0;
  while (depth_a + depth_b < cap && !layer_a.empty() && !layer_b.empty()) {
    const bool grow_a = layer_a.size() <= layer_b.size();
    auto& layer = grow_a ? layer_a : layer_b;
    auto& mine = grow_a ? from_a : from_b;
    const auto& theirs = grow_a ? from_b : from_a;
    auto& depth = grow_a ? depth_a : depth_b;
    ++depth;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<Crossing> next;
    for (const Crossing& c : layer) {
      for (const Crossing& nb : neighbors(spec, c)) {
        if (!mine.emplace(nb, depth).second) continue;
        next.push_back(nb);
        if (auto it = theirs.find(nb); it != theirs.end()) best = std::min(best, depth + it->second);
      }
    }
    if (best != std::numeric_limits<std::int64_t>::max()) {
      if (best > cap) return std::nullopt;
      return best;
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace corona
