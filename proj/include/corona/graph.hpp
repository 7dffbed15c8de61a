#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "corona/multigrid.hpp"

namespace corona {

// The multigrid as an infinite graph: vertices are crossings, edges join
// consecutive crossings along a line. Nothing is materialized beyond what a
// search touches.

using CrossingSet = std::unordered_set<Crossing, CrossingHash>;

inline constexpr std::size_t kDefaultCrossingCap = 5'000'000;

/// The next crossing after `c` along `line` (one of c's two lines) in
/// direction ±1. O(d), closed form per grid. Throws Error(SingularMultigrid).
Crossing next_on_line(const MultigridSpec& spec, const Crossing& c, const LineId& line, int direction);

/// The four neighbors: for line a then line b, the predecessor then successor.
std::array<Crossing, 4> neighbors(const MultigridSpec& spec, const Crossing& c);

/// Finite connected set of crossings, kept sorted by key.
class Patch {
 public:
  /// Throws Error(InvalidArgument) when empty, Error(DisconnectedPatch) when
  /// not connected in the multigrid graph.
  Patch(const MultigridSpec& spec, std::vector<Crossing> crossings);

  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  std::size_t size() const noexcept { return crossings_.size(); }
  bool contains(const Crossing& c) const;

 private:
  std::vector<Crossing> crossings_;
};

/// P ∪ {t : t ∼ P}.
Patch corona_step(const MultigridSpec& spec, const Patch& p);

/// Frontier BFS from a base patch: frontier n holds the crossings at graph
/// distance exactly n, so P_n is the union of frontiers 0..n.
class CoronaSequence {
 public:
  CoronaSequence(const Patch& base, std::vector<std::vector<Crossing>> frontiers);

  const Patch& base() const noexcept { return base_; }
  std::size_t n_max() const noexcept { return frontiers_.size() - 1; }
  const std::vector<Crossing>& frontier(std::size_t n) const { return frontiers_.at(n); }
  const std::vector<std::vector<Crossing>>& frontiers() const noexcept { return frontiers_; }
  /// P_n, in frontier order.
  std::vector<Crossing> cumulative(std::size_t n) const;
  std::size_t cumulative_size(std::size_t n) const;

 private:
  Patch base_;
  std::vector<std::vector<Crossing>> frontiers_;
};

/// P_0 … P_{n_max}. Throws Error(ResourceLimit) once more than `crossing_cap`
/// crossings have been discovered.
CoronaSequence corona_sequence(const MultigridSpec& spec, const Patch& p, std::size_t n_max,
                               std::size_t crossing_cap = kDefaultCrossingCap);

/// Exact BFS distance, or nullopt when it exceeds `cap`.
std::optional<std::int64_t> graph_distance(const MultigridSpec& spec, const Crossing& a, const Crossing& b,
                                           std::int64_t cap);

}  // namespace corona
