#include "corona/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "corona/error.hpp"

namespace corona {

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

[[noreturn]] void parse_fail(std::size_t line, std::size_t column, const std::string& message) {
  throw Error(ErrorCode::ParseError, fmt::format("line {}, column {}: {}", line, column, message));
}

Token trim(Token t) {
  while (!t.text.empty() && std::isspace(static_cast<unsigned char>(t.text.front()))) {
    t.text.remove_prefix(1);
    ++t.column;
  }
  while (!t.text.empty() && std::isspace(static_cast<unsigned char>(t.text.back()))) t.text.remove_suffix(1);
  return t;
}

std::vector<Token> split(Token t, char sep) {
  std::vector<Token> out;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= t.text.size(); ++k) {
    if (k == t.text.size() || t.text[k] == sep) {
      out.push_back(trim({t.text.substr(start, k - start), t.column + start}));
      start = k + 1;
    }
  }
  return out;
}

std::vector<Token> split_ws(Token t) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < t.text.size()) {
    while (k < t.text.size() && std::isspace(static_cast<unsigned char>(t.text[k]))) ++k;
    const std::size_t start = k;
    while (k < t.text.size() && !std::isspace(static_cast<unsigned char>(t.text[k]))) ++k;
    if (k > start) out.push_back({t.text.substr(start, k - start), t.column + start});
  }
  return out;
}

class LineParser {
 public:
  explicit LineParser(std::size_t line) : line_(line) {}

  double number(Token t) const {
    double v = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (!t.text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || t.text.empty()) {
      parse_fail(line_, t.column, fmt::format("expected a number, got '{}'", t.text));
    }
    return v;
  }

  std::int64_t integer(Token t) const {
    std::int64_t v = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (!t.text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || t.text.empty()) {
      parse_fail(line_, t.column, fmt::format("expected an integer, got '{}'", t.text));
    }
    return v;
  }

  // "[a, b, c]" or "a, b, c"; items may repeat as "v x n" (also "v×n", "v*n").
  std::vector<Token> items(Token value) const {
    value = trim(value);
    if (!value.text.empty() && value.text.front() == '[') {
      if (value.text.back() != ']') parse_fail(line_, value.column + value.text.size(), "missing ']'");
      value = {value.text.substr(1, value.text.size() - 2), value.column + 1};
    }
    if (trim(value).text.empty()) parse_fail(line_, value.column, "empty list");
    std::vector<Token> out;
    for (const Token& item : split(value, ',')) {
      if (item.text.empty()) parse_fail(line_, item.column, "empty list item");
      out.push_back(item);
    }
    return out;
  }

  std::vector<double> numbers(Token value) const {
    std::vector<double> out;
    for (const Token& item : items(value)) {
      const auto [base, count] = repeat(item);
      const double v = number(base);
      for (std::int64_t k = 0; k < count; ++k) out.push_back(v);
    }
    return out;
  }

  std::vector<std::int64_t> integers(Token value) const {
    std::vector<std::int64_t> out;
    for (const Token& item : items(value)) {
      const auto [base, count] = repeat(item);
      const std::int64_t v = integer(base);
      for (std::int64_t k = 0; k < count; ++k) out.push_back(v);
    }
    return out;
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::pair<Token, std::int64_t> repeat(Token item) const {
    for (std::string_view mark : {std::string_view("\xC3\x97"), std::string_view("x"), std::string_view("*")}) {
      const auto pos = item.text.find(mark);
      if (pos == std::string_view::npos) continue;
      const Token base = trim({item.text.substr(0, pos), item.column});
      const Token times = trim({item.text.substr(pos + mark.size()), item.column + pos + mark.size()});
      const std::int64_t count = integer(times);
      if (count < 1) parse_fail(line_, times.column, "repeat count must be positive");
      return {base, count};
    }
    return {item, 1};
  }

  std::size_t line_;
};

}  // namespace

double normalize_offset(double gamma) {
  double r = gamma - std::floor(gamma);
  if (r >= 1.0) r = 0.0;
  return r;
}

Config parse_spec(std::string_view text) {
  std::optional<std::int64_t> dfold;
  std::optional<std::vector<double>> angles;
  std::optional<std::vector<Point>> normals;
  std::optional<std::vector<double>> offsets;
  std::size_t offsets_line = 0;
  RunParams run;
  std::vector<std::string> warnings;
  std::set<std::string, std::less<>> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const Token line = trim({raw, 1});
    if (line.text.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    const LineParser p(line_no);
    const auto colon = line.text.find(':');
    if (colon == std::string_view::npos) parse_fail(line_no, line.column, "expected 'key: value'");
    const Token key = trim({line.text.substr(0, colon), line.column});
    const Token value = trim({line.text.substr(colon + 1), line.column + colon + 1});
    if (value.text.empty()) parse_fail(line_no, value.column, fmt::format("missing value for '{}'", key.text));
    if (!seen.insert(std::string(key.text)).second) {
      parse_fail(line_no, key.column, fmt::format("duplicate key '{}'", key.text));
    }

    if (key.text == "dfold") {
      dfold = p.integer(value);
    } else if (key.text == "angles") {
      angles = p.numbers(value);
    } else if (key.text == "normals") {
      std::vector<Point> pts;
      for (const Token& item : p.items(value)) {
        const auto parts = split_ws(item);
        if (parts.size() != 2) parse_fail(line_no, item.column, "a normal is written 're im'");
        pts.emplace_back(p.number(parts[0]), p.number(parts[1]));
      }
      normals = std::move(pts);
    } else if (key.text == "offsets") {
      offsets = p.numbers(value);
      offsets_line = line_no;
    } else if (key.text == "radius") {
      run.radius = p.number(value);
    } else if (key.text == "n") {
      run.ns = p.integers(value);
    } else if (key.text == "tile") {
      const auto v = p.integers(value);
      if (v.size() != 4) parse_fail(line_no, value.column, "tile needs i, j, k_i, k_j");
      run.tile = std::array<std::int64_t, 4>{v[0], v[1], v[2], v[3]};
    } else if (key.text == "ball") {
      run.ball = p.integer(value);
    } else if (key.text == "side") {
      if (value.text == "tiling") {
        run.side = Side::Tiling;
      } else if (value.text == "multigrid") {
        run.side = Side::Multigrid;
      } else {
        parse_fail(line_no, value.column, fmt::format("side must be 'tiling' or 'multigrid', got '{}'", value.text));
      }
    } else if (key.text == "seed") {
      const std::int64_t s = p.integer(value);
      if (s < 0) parse_fail(line_no, value.column, "seed must be non-negative");
      run.seed = static_cast<std::uint64_t>(s);
    } else {
      parse_fail(line_no, key.column, fmt::format("unknown key '{}'", key.text));
    }
    if (eol == text.size()) break;
  }

  const int sources = int(dfold.has_value()) + int(angles.has_value()) + int(normals.has_value());
  if (sources != 1) {
    throw Error(ErrorCode::ValidationError, "exactly one of 'dfold', 'angles', 'normals' is required");
  }
  std::size_t d = 0;
  if (dfold) {
    if (*dfold < 2 || *dfold > 1000) throw Error(ErrorCode::ValidationError, "dfold must be in [2, 1000]");
    d = static_cast<std::size_t>(*dfold);
  } else {
    d = angles ? angles->size() : normals->size();
  }

  std::vector<double> gammas = offsets.value_or(std::vector<double>{0.5});
  if (gammas.size() == 1) gammas.assign(d, gammas.front());
  if (gammas.size() != d) {
    throw Error(ErrorCode::ValidationError, fmt::format("line {}: {} offsets for {} grids", offsets_line, gammas.size(), d));
  }
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!std::isfinite(gammas[i])) throw Error(ErrorCode::ValidationError, fmt::format("offset {} is not finite", i));
    if (gammas[i] < 0.0 || gammas[i] >= 1.0) {
      const double wrapped = normalize_offset(gammas[i]);
      warnings.push_back(fmt::format("offset {} = {} normalized to {}", i, gammas[i], wrapped));
      gammas[i] = wrapped;
    }
  }

  try {
    if (dfold) return Config{MultigridSpec::dfold(static_cast<int>(d), gammas), run, warnings};
    if (angles) return Config{MultigridSpec::from_angles_deg(*angles, gammas), run, warnings};
    return Config{MultigridSpec(*normals, gammas), run, warnings};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidSpec) throw;
    throw Error(ErrorCode::ValidationError, e.what());
  }
}

std::string serialize_spec(const MultigridSpec& spec) {
  std::string out = "normals: [";
  for (int i = 0; i < spec.d(); ++i) {
    if (i > 0) out += ", ";
    out += fmt::format("{:.17g} {:.17g}", spec.normal(i).real(), spec.normal(i).imag());
  }
  out += "]\noffsets: [";
  for (int i = 0; i < spec.d(); ++i) {
    if (i > 0) out += ", ";
    out += fmt::format("{:.17g}", spec.offset(i));
  }
  out += "]\n";
  return out;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace {

// Fixed-point text without a "-0.000…" for values that round to zero.
std::string fixed(double v, int digits) {
  std::string s = fmt::format("{:.{}f}", v, digits);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string num(double v) { return fixed(v, 4); }

std::string xy(Point p) { return num(p.real()) + " " + num(-p.imag()); }

bool layer_empty(const Layer& layer) {
  return std::visit(
      [](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, TilesLayer>) return l.tiles.empty();
        if constexpr (std::is_same_v<T, LinesLayer>) return l.segments.empty();
        if constexpr (std::is_same_v<T, PolygonLayer>) return l.vertices.size() < 2;
        if constexpr (std::is_same_v<T, MarkersLayer>) return l.points.empty();
      },
      layer);
}

double content_radius(const std::vector<Point>& pts) {
  double r = 0.0;
  for (const Point& p : pts) r = std::max(r, std::abs(p));
  return r;
}

}  // namespace

std::vector<std::string> greyscale_ramp(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) {
    // From 0x30 (dark) to 0xf0 (light).
    const int level = n == 1 ? 0x30 : 0x30 + static_cast<int>((0xf0 - 0x30) * k / (n - 1));
    out.push_back(fmt::format("#{:02x}{:02x}{:02x}", level, level, level));
  }
  return out;
}

std::string render_svg(const SceneSpec& scene) {
  if (!(scene.radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "viewport radius must be positive");
  if (std::all_of(scene.layers.begin(), scene.layers.end(), layer_empty)) {
    throw Error(ErrorCode::EmptyScene, "nothing to draw");
  }
  const Style& style = scene.style;
  const double r = scene.radius;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\"{} {} {} {}\">\n",
      num(scene.center.real() - r), num(-scene.center.imag() - r), num(2 * r), num(2 * r));
  out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", num(scene.center.real() - r),
                     num(-scene.center.imag() - r), num(2 * r), num(2 * r), style.background);
  for (const Layer& layer : scene.layers) {
    if (const auto* tiles = std::get_if<TilesLayer>(&layer)) {
      out += fmt::format("<g stroke=\"{}\" stroke-width=\"{}\" stroke-linejoin=\"round\">\n", style.stroke_color,
                         num(style.tile_stroke));
      for (const TileShape& t : tiles->tiles) {
        if (t.shade >= style.palette.size()) {
          throw Error(ErrorCode::InvalidArgument,
                      fmt::format("shade {} outside a palette of {}", t.shade, style.palette.size()));
        }
        out += fmt::format("<path d=\"M {} L {} L {} L {} Z\" fill=\"{}\"/>\n", xy(t.corners[0]), xy(t.corners[1]),
                           xy(t.corners[2]), xy(t.corners[3]), style.palette[t.shade]);
      }
      out += "</g>\n";
    } else if (const auto* lines = std::get_if<LinesLayer>(&layer)) {
      out += fmt::format("<g stroke=\"{}\" stroke-width=\"{}\">\n", lines->color, num(style.line_stroke));
      for (const auto& [a, b] : lines->segments) {
        out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", num(a.real()), num(-a.imag()),
                           num(b.real()), num(-b.imag()));
      }
      out += "</g>\n";
    } else if (const auto* poly = std::get_if<PolygonLayer>(&layer)) {
      std::string pts;
      for (std::size_t k = 0; k < poly->vertices.size(); ++k) {
        if (k > 0) pts += " ";
        pts += num(poly->vertices[k].real()) + "," + num(-poly->vertices[k].imag());
      }
      out += fmt::format("<polygon points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{}/>\n", pts,
                         poly->color, num(style.overlay_stroke),
                         poly->dashed ? fmt::format(" stroke-dasharray=\"{} {}\"", num(4 * style.overlay_stroke),
                                                    num(2 * style.overlay_stroke))
                                      : std::string());
    } else if (const auto* markers = std::get_if<MarkersLayer>(&layer)) {
      out += fmt::format("<g fill=\"{}\">\n", markers->color);
      for (const Point& p : markers->points) {
        out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n", num(p.real()), num(-p.imag()),
                           num(markers->radius));
      }
      out += "</g>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

SceneSpec multigrid_scene(const MultigridSpec& spec, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  SceneSpec scene;
  scene.radius = radius * 1.05;
  scene.style.palette = greyscale_ramp(1);
  for (int i = 0; i < spec.d(); ++i) {
    LinesLayer layer;
    const auto lo = static_cast<std::int64_t>(std::ceil(-radius - spec.offset(i)));
    const auto hi = static_cast<std::int64_t>(std::floor(radius - spec.offset(i)));
    for (std::int64_t k = lo; k <= hi; ++k) {
      const double foot = static_cast<double>(k) + spec.offset(i);
      const double half = std::sqrt(std::max(0.0, radius * radius - foot * foot));
      layer.segments.emplace_back(line_point(spec, {i, k}, -half), line_point(spec, {i, k}, half));
    }
    scene.layers.emplace_back(std::move(layer));
  }
  return scene;
}

SceneSpec tiling_scene(const TilingWindow& window) {
  const int d = window.spec().d();
  SceneSpec scene;
  const auto pairs = static_cast<std::size_t>(d * (d - 1) / 2);
  scene.style.palette = greyscale_ramp(std::max<std::size_t>(pairs, 1));
  TilesLayer layer;
  std::vector<Point> all;
  for (const auto& [c, tile] : window.tiles()) {
    const int i = c.a.grid;
    const int j = c.b.grid;
    // Index of the pair (i, j) in row-major upper-triangular order.
    const auto shade = static_cast<std::size_t>(i * (2 * d - i - 1) / 2 + (j - i - 1));
    layer.tiles.push_back({tile.corners, shade});
    all.insert(all.end(), tile.corners.begin(), tile.corners.end());
  }
  scene.radius = std::max(content_radius(all) * 1.05, 1.0);
  scene.layers.emplace_back(std::move(layer));
  return scene;
}

SceneSpec corona_scene(const MultigridSpec& spec, const CoronaSequence& seq, std::size_t n,
                       const std::optional<Polygon>& overlay) {
  SceneSpec scene;
  scene.style.palette = greyscale_ramp(n + 1);
  TilesLayer layer;
  std::vector<Point> all;
  for (std::size_t k = 0; k <= n; ++k) {
    for (const Crossing& c : seq.frontier(k)) {
      const Tile tile = tile_of_crossing(spec, c);
      layer.tiles.push_back({tile.corners, k});
      all.insert(all.end(), tile.corners.begin(), tile.corners.end());
    }
  }
  scene.layers.emplace_back(std::move(layer));
  if (overlay) {
    scene.layers.emplace_back(PolygonLayer{overlay->vertices(), "#d62728", true});
    all.insert(all.end(), overlay->vertices().begin(), overlay->vertices().end());
  }
  scene.radius = std::max(content_radius(all) * 1.05, 1.0);
  return scene;
}

SceneSpec charpoly_scene(const CharPolygon& chi, const CharPolygon& chi_dual) {
  SceneSpec scene;
  scene.style.palette = greyscale_ramp(1);
  scene.style.overlay_stroke = 0.01;
  scene.style.line_stroke = 0.005;
  std::vector<Point> all = chi_dual.polygon.vertices();
  all.insert(all.end(), chi.polygon.vertices().begin(), chi.polygon.vertices().end());
  const double r = content_radius(all) * 1.15;
  LinesLayer axes;
  for (const Point& v : chi.axis_vertices) axes.segments.emplace_back(-r * v / std::abs(v), r * v / std::abs(v));
  scene.layers.emplace_back(std::move(axes));
  scene.layers.emplace_back(PolygonLayer{chi.polygon.vertices(), "#1f77b4", false});
  scene.layers.emplace_back(PolygonLayer{chi_dual.polygon.vertices(), "#d62728", false});
  scene.layers.emplace_back(MarkersLayer{chi.polygon.vertices(), "#1f77b4", 0.012});
  scene.layers.emplace_back(MarkersLayer{chi_dual.polygon.vertices(), "#d62728", 0.012});
  scene.radius = r;
  return scene;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "n,side,h_n,n_times_h_n,hull_vertices\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{}\n", r.n, to_string(r.side), fixed(r.h_n, 9), fixed(r.n_times_h_n, 9),
                       r.hull_vertices);
  }
  return out;
}

std::string frontier_csv(const CoronaSequence& seq) {
  std::string out = "n,frontier,cumulative\n";
  std::size_t total = 0;
  for (std::size_t n = 0; n <= seq.n_max(); ++n) {
    total += seq.frontier(n).size();
    out += fmt::format("{},{},{}\n", n, seq.frontier(n).size(), total);
  }
  return out;
}

std::string charpoly_csv(const CharPolygon& chi, const CharPolygon& chi_dual) {
  std::string out = "side,index,radius,x,y\n";
  for (const CharPolygon* cp : {&chi, &chi_dual}) {
    for (std::size_t i = 0; i < cp->axis_vertices.size(); ++i) {
      const Point v = cp->axis_vertices[i];
      out += fmt::format("{},{},{},{},{}\n", to_string(cp->side), i, fixed(cp->radii[i], 6), fixed(v.real(), 6),
                         fixed(v.imag(), 6));
    }
  }
  return out;
}

std::string endpoints_csv(const EndpointsDiagnostic& diag) {
  std::string out = "n,h,n_times_h\n";
  for (const auto& r : diag.rows) out += fmt::format("{},{},{}\n", r.n, fixed(r.h, 9), fixed(r.n_times_h, 9));
  return out;
}

std::string tiling_csv(const TilingWindow& window) {
  std::string out = "i,j,k_i,k_j";
  for (int v = 0; v < 4; ++v) out += fmt::format(",key{}", v);
  for (int v = 0; v < 4; ++v) out += fmt::format(",x{},y{}", v, v);
  out += "\n";
  for (const auto& [c, tile] : window.tiles()) {
    out += fmt::format("{},{},{},{}", c.a.grid, c.b.grid, c.a.k, c.b.k);
    for (const auto& key : tile.keys) out += fmt::format(",{}", fmt::join(key, " "));
    for (const Point& p : tile.corners) out += fmt::format(",{},{}", fixed(p.real(), 9), fixed(p.imag(), 9));
    out += "\n";
  }
  return out;
}

}  // namespace corona
