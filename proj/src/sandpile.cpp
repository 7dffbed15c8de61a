#include "corona/sandpile.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include <fmt/format.h>

#include "corona/error.hpp"
#include "corona/graph.hpp"

namespace corona {

namespace {

constexpr std::int64_t kContaminationDistance = 2;

std::shared_ptr<const SandpileTopology> build_topology(const TilingWindow& window) {
  auto topo = std::make_shared<SandpileTopology>();
  for (const auto& [c, tile] : window.tiles()) topo->tiles.push_back(c);
  const std::size_t n = topo->tiles.size();
  topo->adjacent.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (const Crossing& nb : neighbors(window.spec(), topo->tiles[k])) {
      auto it = std::lower_bound(topo->tiles.begin(), topo->tiles.end(), nb);
      if (it != topo->tiles.end() && *it == nb) {
        topo->adjacent[k].push_back(static_cast<std::size_t>(it - topo->tiles.begin()));
      }
    }
  }
  // Multi-source BFS from the boundary tiles.
  topo->boundary_distance.assign(n, -1);
  std::deque<std::size_t> queue;
  for (std::size_t k = 0; k < n; ++k) {
    if (topo->adjacent[k].size() < 4) {
      topo->boundary_distance[k] = 0;
      queue.push_back(k);
    }
  }
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    for (std::size_t nb : topo->adjacent[k]) {
      if (topo->boundary_distance[nb] < 0) {
        topo->boundary_distance[nb] = topo->boundary_distance[k] + 1;
        queue.push_back(nb);
      }
    }
  }
  return topo;
}

}  // namespace

std::size_t SandpileTopology::index_of(const Crossing& c) const {
  auto it = std::lower_bound(tiles.begin(), tiles.end(), c);
  if (it == tiles.end() || !(*it == c)) {
    throw Error(ErrorCode::InvalidArgument, "crossing " + to_string(c) + " is not in the window");
  }
  return static_cast<std::size_t>(it - tiles.begin());
}

SandpileConfig::SandpileConfig(std::shared_ptr<const SandpileTopology> topology)
    : topology_(std::move(topology)),
      grains_(topology_->tiles.size(), 0),
      toppled_round_(topology_->tiles.size(), 0) {}

std::int64_t SandpileConfig::total_grains() const noexcept {
  return std::accumulate(grains_.begin(), grains_.end(), std::int64_t{0});
}

std::vector<Crossing> SandpileConfig::toppled_by_round(std::int64_t n) const {
  std::vector<Crossing> out;
  for (std::size_t k = 0; k < grains_.size(); ++k) {
    if (toppled_round_[k] > 0 && toppled_round_[k] <= n) out.push_back(topology_->tiles[k]);
  }
  return out;
}

SandpileConfig max_stable(const TilingWindow& window) {
  SandpileConfig config(build_topology(window));
  const auto& topo = config.topology();
  for (std::size_t k = 0; k < config.grains_.size(); ++k) {
    config.grains_[k] = static_cast<std::int64_t>(topo.degree(k)) - 1;
  }
  return config;
}

SandpileConfig add_grain_and_topple(SandpileConfig config, const Crossing& at, std::int64_t rounds) {
  const auto& topo = config.topology();
  const std::size_t seed = topo.index_of(at);
  if (topo.degree(seed) != 4 || topo.boundary_distance[seed] <= kContaminationDistance) {
    throw Error(ErrorCode::InvalidArgument, "grain must be added to an interior tile");
  }
  if (rounds < 0) throw Error(ErrorCode::InvalidArgument, "rounds must be non-negative");
  config.grains_[seed] += 1;

  std::vector<std::size_t> unstable;
  for (std::int64_t r = 0; r < rounds; ++r) {
    const std::int64_t round = config.rounds_run_ + 1;
    unstable.clear();
    for (std::size_t k = 0; k < config.grains_.size(); ++k) {
      const auto degree = static_cast<std::int64_t>(topo.degree(k));
      if (degree > 0 && config.grains_[k] >= degree) unstable.push_back(k);
    }
    for (std::size_t k : unstable) {
      if (topo.boundary_distance[k] <= kContaminationDistance) {
        throw Error(ErrorCode::BoundaryContamination,
                    fmt::format("round {}: tile {} topples {} steps from the window boundary", round,
                                to_string(topo.tiles[k]), topo.boundary_distance[k]));
      }
    }
    // Synchronous: all unstable tiles fire on the state at the start of the round.
    for (std::size_t k : unstable) {
      config.grains_[k] -= static_cast<std::int64_t>(topo.degree(k));
      for (std::size_t nb : topo.adjacent[k]) config.grains_[nb] += 1;
      if (config.toppled_round_[k] == 0) config.toppled_round_[k] = round;
    }
    config.rounds_run_ = round;
  }
  return config;
}

}  // namespace corona
