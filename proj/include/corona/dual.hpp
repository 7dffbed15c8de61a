#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "corona/multigrid.hpp"

namespace corona {

/// Integer d-vector K; the canonical identity of a tiling vertex.
using VertexKey = std::vector<std::int64_t>;

/// A vertex of the dual tiling: key K and position Σ K_i ζ_i.
struct TilingVertex {
  VertexKey key;
  Point position;
};

/// Σ K_i ζ_i.
Point vertex_position(const MultigridSpec& spec, const VertexKey& key);

/// F(z): K_i = ⌈z·ζ_i − γ_i⌉. Throws Error(OnGridLine) when some level is
/// within kEpsGeom of an integer, since F is only defined on open cells.
TilingVertex dualize_F(const MultigridSpec& spec, Point z);

/// 𝓕(z) = Σ (z·ζ_i) ζ_i, the linear companion of F.
Point linear_dual(const MultigridSpec& spec, Point z);

/// Rhombus dual to a crossing of type (i, j). Vertex keys (in cyclic order):
/// base, base + e_i, base + e_i + e_j, base + e_j.
struct Tile {
  Crossing crossing;
  std::array<VertexKey, 4> keys;
  std::array<Point, 4> corners;

  int grid_i() const noexcept { return crossing.a.grid; }
  int grid_j() const noexcept { return crossing.b.grid; }
};

/// Builds the tile from the four cells around the crossing. The base cell lies
/// on the negative side of both lines, so base K_i = k_i and base K_j = k_j;
/// every other coordinate is ⌈level⌉ at the crossing point. Throws
/// Error(SingularMultigrid) when a third line passes within kEpsSingular.
Tile tile_of_crossing(const MultigridSpec& spec, const Crossing& c);

/// All tiles dual to crossings with |point| ≤ radius, plus the deduplicated
/// vertex set. Immutable after construction.
class TilingWindow {
 public:
  /// Throws Error(SingularMultigrid) if any crossing in the window is singular.
  TilingWindow(MultigridSpec spec, double radius);

  const MultigridSpec& spec() const noexcept { return spec_; }
  double radius() const noexcept { return radius_; }
  const std::map<Crossing, Tile>& tiles() const noexcept { return tiles_; }
  const std::map<VertexKey, Point>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return tiles_.size(); }
  bool contains(const Crossing& c) const { return tiles_.count(c) != 0; }

 private:
  MultigridSpec spec_;
  double radius_;
  std::map<Crossing, Tile> tiles_;
  std::map<VertexKey, Point> vertices_;
};

TilingWindow tiling_window(const MultigridSpec& spec, double radius);

}  // namespace corona
