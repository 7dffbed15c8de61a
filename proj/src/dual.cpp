#include "corona/dual.hpp"

#include <cmath>

#include <fmt/format.h>

#include "corona/error.hpp"

namespace corona {

Point vertex_position(const MultigridSpec& spec, const VertexKey& key) {
  Point p{};
  for (int i = 0; i < spec.d(); ++i) p += static_cast<double>(key[static_cast<std::size_t>(i)]) * spec.normal(i);
  return p;
}

TilingVertex dualize_F(const MultigridSpec& spec, Point z) {
  TilingVertex v;
  v.key.reserve(static_cast<std::size_t>(spec.d()));
  for (int i = 0; i < spec.d(); ++i) {
    const double level = spec.level(i, z);
    if (std::abs(level - std::round(level)) <= kEpsGeom) {
      throw Error(ErrorCode::OnGridLine, fmt::format("point ({}, {}) lies on a line of grid {}", z.real(), z.imag(), i));
    }
    v.key.push_back(static_cast<std::int64_t>(std::ceil(level)));
  }
  v.position = vertex_position(spec, v.key);
  return v;
}

Point linear_dual(const MultigridSpec& spec, Point z) {
  Point out{};
  for (const Point& normal : spec.normals()) out += scalar_product(z, normal) * normal;
  return out;
}

Tile tile_of_crossing(const MultigridSpec& spec, const Crossing& c) {
  const int i = c.a.grid;
  const int j = c.b.grid;
  VertexKey base(static_cast<std::size_t>(spec.d()));
  for (int m = 0; m < spec.d(); ++m) {
    if (m == i || m == j) continue;
    const double level = spec.level(m, c.point);
    if (std::abs(level - std::round(level)) < kEpsSingular) {
      throw Error(ErrorCode::SingularMultigrid,
                  fmt::format("a line of grid {} passes through crossing {}", m, to_string(c)));
    }
    base[static_cast<std::size_t>(m)] = static_cast<std::int64_t>(std::ceil(level));
  }
  base[static_cast<std::size_t>(i)] = c.a.k;
  base[static_cast<std::size_t>(j)] = c.b.k;

  Tile tile{c, {base, base, base, base}, {}};
  tile.keys[1][static_cast<std::size_t>(i)] += 1;
  tile.keys[2][static_cast<std::size_t>(i)] += 1;
  tile.keys[2][static_cast<std::size_t>(j)] += 1;
  tile.keys[3][static_cast<std::size_t>(j)] += 1;
  for (std::size_t k = 0; k < 4; ++k) tile.corners[k] = vertex_position(spec, tile.keys[k]);
  return tile;
}

TilingWindow::TilingWindow(MultigridSpec spec, double radius) : spec_(std::move(spec)), radius_(radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "window radius must be positive");
  for (const Crossing& c : crossings_in_disk(spec_, radius)) {
    Tile tile = tile_of_crossing(spec_, c);
    for (std::size_t k = 0; k < 4; ++k) vertices_.emplace(tile.keys[k], tile.corners[k]);
    tiles_.emplace(c, std::move(tile));
  }
}

TilingWindow tiling_window(const MultigridSpec& spec, double radius) { return TilingWindow(spec, radius); }

}  // namespace corona
