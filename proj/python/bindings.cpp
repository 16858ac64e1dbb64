#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "siegel/acceptance.hpp"
#include "siegel/curvature.hpp"
#include "siegel/error.hpp"
#include "siegel/gauss2.hpp"
#include "siegel/io.hpp"
#include "siegel/pipeline.hpp"
#include "siegel/quadrics.hpp"
#include "siegel/second_kind.hpp"
#include "siegel/util.hpp"
#include "siegel/wolpert_class.hpp"

namespace py = pybind11;
using namespace siegel;

namespace {

py::dict decision_dict(const RankDecision& d) {
  py::dict r;
  r["rank"] = d.rank;
  r["gap"] = d.gap;
  r["ambiguous"] = d.ambiguous;
  r["singular_values"] = d.singular_values;
  return r;
}

}  // namespace

PYBIND11_MODULE(_siegel, m) {
  m.attr("__version__") = kVersion;
  py::register_exception<Error>(m, "SiegelError", PyExc_RuntimeError);

  py::class_<ChartPoint>(m, "ChartPoint")
      .def_readonly("x", &ChartPoint::x)
      .def_readonly("y", &ChartPoint::y)
      .def_readonly("sheet", &ChartPoint::sheet)
      .def_readonly("label", &ChartPoint::label)
      .def_property_readonly("y_chart", [](const ChartPoint& p) { return p.kind == ChartKind::YChart; })
      .def("__repr__", [](const ChartPoint& p) {
        return "ChartPoint(x=" + py::repr(py::cast(p.x)).cast<std::string>() +
               ", y=" + py::repr(py::cast(p.y)).cast<std::string>() + ")";
      });

  py::class_<CurveModel, std::shared_ptr<CurveModel>>(m, "Curve")
      .def(py::init([](const std::string& json) { return std::make_shared<CurveModel>(build_curve(parse_curve_spec(json))); }),
           py::arg("spec_json"))
      .def_static("from_file",
                  [](const std::string& path) { return std::make_shared<CurveModel>(build_curve(read_curve_spec(path))); })
      .def_property_readonly("genus", &CurveModel::genus)
      .def_property_readonly("family", [](const CurveModel& c) { return to_string(c.family()); })
      .def_property_readonly("label", &CurveModel::label)
      .def_property_readonly("branch_points", &CurveModel::branch_points)
      .def("spec_json", [](const CurveModel& c) { return curve_spec_json(c.spec()); })
      .def("point", [](const CurveModel& c, cd x, int sheet) { return point_on_sheet(c, x, sheet); }, py::arg("x"),
           py::arg("sheet") = 0)
      .def("sample_points", [](const CurveModel& c, std::size_t n, std::uint64_t seed) { return sample_points(c, n, seed); },
           py::arg("count"), py::arg("seed") = 1)
      .def("special_points", [](const CurveModel& c) {
        std::vector<ChartPoint> out;
        for (const auto& s : special_points(c))
          if (s.supported) out.push_back(s.point);
        return out;
      });

  py::class_<HodgeFrame>(m, "Frame")
      .def_readonly("gram", &HodgeFrame::gram)
      .def_readonly("transform", &HodgeFrame::transform)
      .def_readonly("gram_error", &HodgeFrame::gram_error)
      .def_readonly("from_cache", &HodgeFrame::from_cache)
      .def_property_readonly("genus", &HodgeFrame::genus)
      .def("hash", &HodgeFrame::hash)
      .def("values", &HodgeFrame::values)
      .def("alpha", [](const HodgeFrame& f, const ChartPoint& p, const ChartPoint& q) { return alpha(f, p, q); });

  m.def(
      "build_frame",
      [](const std::shared_ptr<CurveModel>& c, double tol, const std::string& cache_dir) {
        FrameOptions o;
        o.rel_tol = tol;
        o.cache_dir = cache_dir;
        py::gil_scoped_release release;
        return build_frame(*c, o);
      },
      py::arg("curve"), py::arg("tol") = 1e-7, py::arg("cache_dir") = "");

  py::class_<QuadricSpace>(m, "Quadrics")
      .def_readonly("matrices", &QuadricSpace::a)
      .def_readonly("expected_dimension", &QuadricSpace::expected_dimension)
      .def_property_readonly("dimension", &QuadricSpace::dimension)
      .def_property_readonly("decision", [](const QuadricSpace& q) { return decision_dict(q.decision); });

  m.def("i2_basis", [](const HodgeFrame& f, const std::vector<ChartPoint>& pts) { return i2_basis(f, pts); });
  m.def("mu2_values", [](const HodgeFrame& f, const QuadricSpace& q, const ChartPoint& p) {
    return mu2_values(q, frame_jets(f, p));
  });
  m.def("mu2_rank", [](const HodgeFrame& f, const QuadricSpace& q, const std::vector<ChartPoint>& pts) {
    return decision_dict(mu2_rank(f, q, pts));
  });
  m.def("sectional_H", py::overload_cast<const HodgeFrame&, const QuadricSpace&, const ChartPoint&>(&sectional_H));
  m.def("siegel_sectional", &siegel_sectional, py::arg("a"));
  m.def(
      "psi",
      [](const HodgeFrame& f, const QuadricSpace& q, const ChartPoint& p, const ChartPoint& s, int k) {
        return psi_eval(f, q, eta_form(f, p), k, s);
      },
      py::arg("frame"), py::arg("quadrics"), py::arg("p"), py::arg("s"), py::arg("k") = 0);

  m.def(
      "class_constant",
      [](double tol) {
        const auto c = class_constant(tol);
        py::dict r;
        r["integral"] = c.integral;
        r["error"] = c.error;
        r["c"] = c.constant;
        return r;
      },
      py::arg("tol") = 1e-12);

  m.def(
      "analyze_json",
      [](const std::string& spec_json, const std::string& sweep, double tol, std::uint64_t seed,
         const std::string& cache_dir) {
        AnalyzeOptions o;
        o.sweep = parse_sweep(sweep);
        o.tol = tol;
        o.seed = seed;
        o.cache_dir = cache_dir;
        py::gil_scoped_release release;
        return analysis_json(analyze(parse_curve_spec(spec_json), o), o).dump();
      },
      py::arg("spec_json"), py::arg("sweep") = "special", py::arg("tol") = 1e-7, py::arg("seed") = 1,
      py::arg("cache_dir") = "");

  m.def(
      "acceptance_json",
      [](const std::vector<std::string>& only, bool slow, const std::string& cache_dir) {
        AcceptanceOptions o;
        o.only = only;
        o.slow = slow;
        o.cache_dir = cache_dir;
        py::gil_scoped_release release;
        return acceptance_json(run_acceptance(o), o).dump();
      },
      py::arg("only") = std::vector<std::string>{}, py::arg("slow") = false, py::arg("cache_dir") = "");
}
