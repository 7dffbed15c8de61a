#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "corona/geom.hpp"
#include "corona/graph.hpp"
#include "corona/multigrid.hpp"

namespace corona {

/// Which plane a shape lives in: crossing positions (multigrid) or dual tile
/// vertices (tiling).
enum class Side { Multigrid, Tiling };

std::string_view to_string(Side side) noexcept;

/// Characteristic 2d-gon. `axis_vertices[i]` is χ_i ζ_i⊥ (multigrid side) or
/// χ̃_i (tiling side); the polygon has vertices ±axis_vertices.
struct CharPolygon {
  Side side;
  std::vector<double> radii;  // χ_i, or |χ̃_i| on the tiling side
  std::vector<Point> axis_vertices;
  Polygon polygon;
};

/// χ_i = (Σ_j |ζ_i⊥·ζ_j|)⁻¹; vertices ±χ_i ζ_i⊥.
CharPolygon char_polygon_chi(const MultigridSpec& spec);

/// χ̃_i = χ_i Σ_j (ζ_i⊥·ζ_j) ζ_j, i.e. 𝓕 applied to the vertices of χ.
CharPolygon char_polygon_chi_dual(const MultigridSpec& spec);

CharPolygon char_polygon(const MultigridSpec& spec, Side side);

/// Points a patch occupies: crossing positions, or the corners of its tiles.
std::vector<Point> patch_points(const MultigridSpec& spec, std::span<const Crossing> crossings, Side side);

/// Convex hull of the patch points scaled by 1/n about the origin. The hull
/// stands in for the patch contour. Throws Error(DegenerateInput) for
/// collinear input and Error(InvalidArgument) for n < 1.
Polygon normalized_shape(const MultigridSpec& spec, std::span<const Crossing> crossings, std::int64_t n, Side side);

inline constexpr std::string_view kShapeConvention = "convex_hull";

struct ConvergenceRow {
  std::int64_t n = 0;
  Side side = Side::Tiling;
  Polygon hull;  // hull(P_n) / n
  double h_n = 0.0;
  double n_times_h_n = 0.0;
  std::size_t hull_vertices = 0;
  std::string_view shape = kShapeConvention;
};

/// One row per n (ascending, each ≥ 1): Hausdorff distance between hull(P_n)/n
/// and the characteristic polygon of `side`.
std::vector<ConvergenceRow> convergence_table(const MultigridSpec& spec, const Patch& patch,
                                              std::span<const std::int64_t> ns, Side side,
                                              std::size_t crossing_cap = kDefaultCrossingCap);

/// Same, reusing an already computed corona sequence.
std::vector<ConvergenceRow> convergence_table(const MultigridSpec& spec, const CoronaSequence& seq,
                                              std::span<const std::int64_t> ns, Side side);

struct EndpointsRow {
  std::int64_t n = 0;
  double h = 0.0;  // Hausdorff(hull(E_n)/n, χ); for n = 0, max |e| (distance to 0·χ)
  double n_times_h = 0.0;
  std::vector<Point> points;  // the 2d endpoints, unnormalized
};

struct EndpointsDiagnostic {
  std::vector<EndpointsRow> rows;
  DominantLines lines;
  std::size_t growth_steps = 0;    // corona steps applied to reach every dominant line
  double sandwich_constant = 0.0;  // max n·h over the rows
  double delta0 = 0.0;             // max |α_n − nχ_i| observed along the walks
  double bound = 0.0;              // δ0 + max |z| over the extremal patch crossings
};

/// Endpoints E_n along the dominant lines and their normalized hull against χ.
/// A patch missing some dominant line is grown by corona steps first.
EndpointsDiagnostic endpoints_diagnostic(const MultigridSpec& spec, const Patch& patch,
                                         std::span<const std::int64_t> ns);

/// Smallest D with C_n ⊆ (n + D)χ and (n − D)χ ∩ H ⊆ C_n, split into its two
/// sides. Computed with the gauge of χ over C_n and over the crossings outside
/// C_n within the disk of radius n·max|χ vertex|.
struct SandwichRow {
  std::int64_t n = 0;
  double outer = 0.0;  // max gauge over C_n, minus n
  double inner = 0.0;  // n minus min gauge outside C_n
  double deviation() const noexcept { return outer > inner ? outer : inner; }
};

std::vector<SandwichRow> corona_sandwich(const MultigridSpec& spec, const CoronaSequence& seq,
                                         std::span<const std::int64_t> ns);

}  // namespace corona
