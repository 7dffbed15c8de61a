#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "corona/analysis.hpp"
#include "corona/certify.hpp"
#include "corona/error.hpp"
#include "corona/io.hpp"
#include "corona/sandpile.hpp"

namespace py = pybind11;
using namespace corona;

namespace {

Side side_from(const std::string& s) {
  if (s == "tiling") return Side::Tiling;
  if (s == "multigrid") return Side::Multigrid;
  throw Error(ErrorCode::InvalidArgument, "side must be 'tiling' or 'multigrid'");
}

Patch seed_patch(const MultigridSpec& spec) { return Patch(spec, {nearest_crossing(spec, {})}); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Corona limits of multigrid tilings";

  static py::exception<Error> error(m, "CoronaError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<MultigridSpec>(m, "MultigridSpec")
      .def(py::init<std::vector<Point>, std::vector<double>>(), py::arg("normals"), py::arg("offsets"))
      .def_static("dfold", &MultigridSpec::dfold, py::arg("d"), py::arg("offsets") = std::vector<double>{0.5})
      .def_static(
          "from_angles",
          [](const std::vector<double>& degrees, std::vector<double> offsets) {
            return MultigridSpec::from_angles_deg(degrees, std::move(offsets));
          },
          py::arg("degrees"), py::arg("offsets") = std::vector<double>{0.5})
      .def_static("parse", [](const std::string& text) { return parse_spec(text).spec; })
      .def_property_readonly("d", &MultigridSpec::d)
      .def_property_readonly("normals", &MultigridSpec::normals)
      .def_property_readonly("offsets", &MultigridSpec::offsets)
      .def("serialize", [](const MultigridSpec& s) { return serialize_spec(s); })
      .def("__eq__", [](const MultigridSpec& a, const MultigridSpec& b) { return a == b; })
      .def("__repr__", [](const MultigridSpec& s) { return "<MultigridSpec d=" + std::to_string(s.d()) + ">"; });

  m.def(
      "char_polygon",
      [](const MultigridSpec& spec, const std::string& side) {
        const CharPolygon c = char_polygon(spec, side_from(side));
        return py::make_tuple(c.radii, c.polygon.vertices());
      },
      py::arg("spec"), py::arg("side") = "tiling",
      "Radii and counterclockwise vertices of the characteristic polygon.");

  m.def(
      "corona_sizes",
      [](const MultigridSpec& spec, std::size_t n_max, std::size_t cap) {
        const CoronaSequence seq = corona_sequence(spec, seed_patch(spec), n_max, cap);
        std::vector<std::size_t> sizes;
        for (const auto& f : seq.frontiers()) sizes.push_back(f.size());
        return sizes;
      },
      py::arg("spec"), py::arg("n_max"), py::arg("cap") = kDefaultCrossingCap,
      "Frontier sizes |P_n \\ P_{n-1}| for n = 0..n_max, seeded at the crossing nearest 0.");

  m.def(
      "convergence",
      [](const MultigridSpec& spec, const std::vector<std::int64_t>& ns, const std::string& side) {
        std::vector<std::pair<std::int64_t, double>> out;
        for (const auto& row : convergence_table(spec, seed_patch(spec), ns, side_from(side))) out.emplace_back(row.n, row.h_n);
        return out;
      },
      py::arg("spec"), py::arg("ns"), py::arg("side") = "tiling", "(n, h_n) pairs.");

  m.def(
      "toppled_counts",
      [](const MultigridSpec& spec, double radius, std::int64_t rounds) {
        const SandpileConfig after =
            add_grain_and_topple(max_stable(TilingWindow(spec, radius)), nearest_crossing(spec, {}), rounds);
        std::vector<std::size_t> counts;
        for (std::int64_t n = 1; n <= rounds; ++n) counts.push_back(after.toppled_by_round(n).size());
        return counts;
      },
      py::arg("spec"), py::arg("radius"), py::arg("rounds"));

  m.def(
      "certify",
      [](std::uint64_t seed) {
        std::vector<py::tuple> out;
        CertifyOptions opts;
        opts.seed = seed;
        for (const auto& r : run_acceptance(opts)) out.push_back(py::make_tuple(r.id, r.name, r.passed, r.detail));
        return out;
      },
      py::arg("seed") = 0);
}
