#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "corona/dual.hpp"

namespace corona {

/// Tile adjacency of a window, with each tile's graph distance to the window
/// boundary (tiles with fewer than four in-window neighbors).
struct SandpileTopology {
  std::vector<Crossing> tiles;  // sorted by key; index = position
  std::vector<std::vector<std::size_t>> adjacent;
  std::vector<std::int64_t> boundary_distance;

  std::size_t index_of(const Crossing& c) const;  // throws Error(InvalidArgument) if absent
  std::size_t degree(std::size_t k) const { return adjacent[k].size(); }
};

/// Grain counts on the tiles of a window. A tile topples when it holds at
/// least as many grains as in-window neighbors, giving one to each.
class SandpileConfig {
 public:
  explicit SandpileConfig(std::shared_ptr<const SandpileTopology> topology);

  const SandpileTopology& topology() const noexcept { return *topology_; }
  std::size_t size() const noexcept { return grains_.size(); }
  std::int64_t grains(const Crossing& c) const { return grains_[topology_->index_of(c)]; }
  /// First round in which the tile toppled; 0 if it never did.
  std::int64_t toppled_round(const Crossing& c) const { return toppled_round_[topology_->index_of(c)]; }
  std::int64_t rounds_run() const noexcept { return rounds_run_; }
  std::int64_t total_grains() const noexcept;
  /// Tiles whose first toppling happened at or before round n, sorted by key.
  std::vector<Crossing> toppled_by_round(std::int64_t n) const;

 private:
  friend SandpileConfig max_stable(const TilingWindow& window);
  friend SandpileConfig add_grain_and_topple(SandpileConfig config, const Crossing& at, std::int64_t rounds);

  std::shared_ptr<const SandpileTopology> topology_;
  std::vector<std::int64_t> grains_;
  std::vector<std::int64_t> toppled_round_;
  std::int64_t rounds_run_ = 0;
};

/// Every tile holds degree − 1 grains.
SandpileConfig max_stable(const TilingWindow& window);

/// Adds one grain at `at` (an interior tile) and runs `rounds` synchronous
/// rounds. Throws Error(BoundaryContamination) as soon as a toppling tile is
/// within graph distance 2 of the window boundary.
SandpileConfig add_grain_and_topple(SandpileConfig config, const Crossing& at, std::int64_t rounds);

}  // namespace corona
