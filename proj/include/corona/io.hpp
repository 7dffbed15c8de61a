#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "corona/analysis.hpp"
#include "corona/dual.hpp"
#include "corona/graph.hpp"
#include "corona/multigrid.hpp"

namespace corona {

// ---------------------------------------------------------------------------
// Config documents. Grammar (one entry per line, '#' starts a comment):
//
//   dfold: 5                      ζ_k = e^{2πik/5}
//   angles: [0, 45, 90, 135]      normals from degrees
//   normals: [1 0, 0 1]           explicit unit normals "re im"
//   offsets: [0.5, 0.5] | 0.5 | [0.5x5]
//   radius: 12
//   n: [10, 20, 40, 80] | 40
//   tile: [0, 1, 0, 0]            seed crossing (i, j, k_i, k_j)
//   ball: 2                       seed = 2nd corona of the crossing nearest 0
//   side: tiling | multigrid
//   seed: 0
//
// Exactly one of dfold / angles / normals is required.
// ---------------------------------------------------------------------------

struct RunParams {
  std::optional<double> radius;
  std::vector<std::int64_t> ns;
  std::optional<std::array<std::int64_t, 4>> tile;
  std::optional<std::int64_t> ball;
  std::optional<Side> side;
  std::optional<std::uint64_t> seed;
};

struct Config {
  MultigridSpec spec;
  RunParams run;
  std::vector<std::string> warnings;  // e.g. offsets normalized mod 1
};

/// Throws Error(ParseError) with "line L, column C" for malformed input and
/// Error(ValidationError) for well-formed but invalid multigrids.
Config parse_spec(std::string_view text);

/// Lossless text form (explicit normals, 17 significant digits).
std::string serialize_spec(const MultigridSpec& spec);

/// γ mod 1, mapped into [0, 1).
double normalize_offset(double gamma);

// ---------------------------------------------------------------------------
// SVG scenes
// ---------------------------------------------------------------------------

struct Style {
  std::vector<std::string> palette;  // fill colors indexed by TileShape::shade
  double tile_stroke = 0.03;
  double line_stroke = 0.02;
  double overlay_stroke = 0.08;
  std::string stroke_color = "#222222";
  std::string background = "#ffffff";
};

struct TileShape {
  std::array<Point, 4> corners;
  std::size_t shade = 0;
};

struct TilesLayer {
  std::vector<TileShape> tiles;
};

struct LinesLayer {
  std::vector<std::pair<Point, Point>> segments;
  std::string color = "#888888";
};

struct PolygonLayer {
  std::vector<Point> vertices;
  std::string color = "#d62728";
  bool dashed = false;
};

struct MarkersLayer {
  std::vector<Point> points;
  std::string color = "#1f77b4";
  double radius = 0.1;
};

using Layer = std::variant<TilesLayer, LinesLayer, PolygonLayer, MarkersLayer>;

struct SceneSpec {
  std::vector<Layer> layers;
  Point center{};
  double radius = 1.0;
  Style style;
};

/// n shades from dark to light grey.
std::vector<std::string> greyscale_ramp(std::size_t n);

/// Deterministic SVG 1.1 text; the y axis points up. Throws Error(EmptyScene)
/// when no layer has content and Error(InvalidArgument) for a non-positive
/// viewport or a tile shade outside the palette.
std::string render_svg(const SceneSpec& scene);

/// Grid lines of the multigrid clipped to a disk.
SceneSpec multigrid_scene(const MultigridSpec& spec, double radius);
/// Window tiles shaded by tile type (i, j).
SceneSpec tiling_scene(const TilingWindow& window);
/// Tiles of P_n shaded by corona index, with an optional n·χ̃ overlay.
SceneSpec corona_scene(const MultigridSpec& spec, const CoronaSequence& seq, std::size_t n,
                       const std::optional<Polygon>& overlay);
/// Both characteristic polygons with their axis directions.
SceneSpec charpoly_scene(const CharPolygon& chi, const CharPolygon& chi_dual);

// ---------------------------------------------------------------------------
// CSV ('.' decimals, '\n' line endings, header row)
// ---------------------------------------------------------------------------

/// Columns n,side,h_n,n_times_h_n,hull_vertices.
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);
/// Columns n,frontier,cumulative.
std::string frontier_csv(const CoronaSequence& seq);
/// Columns side,index,radius,x,y; one row per axis vertex χ_i ζ_i⊥ / χ̃_i.
std::string charpoly_csv(const CharPolygon& chi, const CharPolygon& chi_dual);
/// Columns n,h,n_times_h.
std::string endpoints_csv(const EndpointsDiagnostic& diag);
/// One record per tile: grid pair, line indices, 4 vertex keys, 4 positions.
std::string tiling_csv(const TilingWindow& window);

}  // namespace corona
