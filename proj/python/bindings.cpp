#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ccslab/errors.hpp"
#include "ccslab/families.hpp"
#include "ccslab/limits.hpp"
#include "ccslab/render.hpp"
#include "ccslab/stability.hpp"
#include "ccslab/tameness.hpp"
#include "ccslab/transitions.hpp"

#ifndef CCSLAB_VERSION
#define CCSLAB_VERSION "0.0.0"
#endif

namespace py = pybind11;
using namespace ccslab;

namespace {

// Python-side view of a sphere state: None for ∞, otherwise a complex.
py::object to_py(const ExtComplex& z) {
  if (z.is_infinity()) return py::none();
  return py::cast(z.value());
}

ExtComplex from_py(const py::object& o) {
  if (o.is_none()) return ExtComplex::infinity();
  if (py::isinstance<py::str>(o)) return ExtComplex::parse(o.cast<std::string>());
  return ExtComplex(o.cast<std::complex<double>>());
}

py::object state_to_py(const State& s) {
  if (const auto* x = std::get_if<CantorPoint>(&s)) return py::cast(*x);
  return to_py(std::get<ExtComplex>(s));
}

}  // namespace

PYBIND11_MODULE(_ccslab, m) {
  m.doc() = "Compositional computation structures: limits, tameness diagnostics and Newton basins";
  m.attr("__version__") = CCSLAB_VERSION;

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<DegreeError>(m, "DegreeError", error.ptr());
  py::register_exception<CutError>(m, "CutError", error.ptr());
  py::register_exception<EmptySetError>(m, "EmptySetError", error.ptr());
  py::register_exception<DepthError>(m, "DepthError", error.ptr());

  py::class_<BinaryWord>(m, "BinaryWord")
      .def(py::init(&BinaryWord::parse), py::arg("text"))
      .def("__len__", &BinaryWord::size)
      .def("__str__", &BinaryWord::to_string)
      .def("__repr__", [](const BinaryWord& w) { return "BinaryWord('" + w.to_string() + "')"; })
      .def("is_prefix_of", &BinaryWord::is_prefix_of)
      .def(py::self == py::self);

  py::class_<CantorPoint>(m, "CantorPoint")
      .def(py::init(&CantorPoint::parse), py::arg("text"))
      .def_static("zeros", &CantorPoint::zeros)
      .def_static("ones", &CantorPoint::ones)
      .def("bit", &CantorPoint::bit_at, py::arg("i"))
      .def("first_difference", &CantorPoint::first_difference)
      .def("__str__", &CantorPoint::to_string)
      .def("__repr__", [](const CantorPoint& x) { return "CantorPoint('" + x.to_string() + "')"; })
      .def(py::self == py::self)
      .def(py::self < py::self)
      .def(py::self <= py::self);

  m.def("chordal_distance", [](const py::object& a, const py::object& b) {
    return chordal_distance(from_py(a), from_py(b));
  });

  m.def(
      "newton_orbit",
      [](const std::string& poly, const py::object& start, std::size_t steps) {
        py::list out;
        for (const auto& z : newton_orbit(Polynomial::parse(poly), from_py(start), steps)) out.append(to_py(z));
        return out;
      },
      py::arg("poly"), py::arg("start"), py::arg("steps") = 10,
      "Newton orbit z_0..z_steps; None stands for the point at infinity.");

  m.def(
      "detect_cycle",
      [](const std::vector<py::object>& orbit, double tol) {
        std::vector<ExtComplex> zs;
        for (const auto& o : orbit) zs.push_back(from_py(o));
        return detect_cycle(zs, tol);
      },
      py::arg("orbit"), py::arg("tol") = 1e-12);

  m.def(
      "apply_transition",
      [](const std::string& transition, const std::string& state) {
        const auto t = parse_transition(transition);
        if (t.space() == StateSpace::Cantor) return state_to_py(t.apply(CantorPoint::parse(state)));
        return state_to_py(t.apply(ExtComplex::parse(state)));
      },
      py::arg("transition"), py::arg("state"));

  m.def(
      "limit",
      [](const std::string& kind, const std::string& target, const std::string& x, std::size_t budget) {
        TransitionSequence seq;
        if (kind == "threshold-upper") seq = upper_threshold_sequence(CantorPoint::parse(target));
        else if (kind == "threshold-lower") seq = lower_threshold_sequence(CantorPoint::parse(target));
        else if (kind == "delta") seq = delta_sequence(CantorPoint::parse(target));
        else if (kind == "zero") seq = zero_sequence();
        else throw std::invalid_argument("unknown sequence '" + kind + "'");
        const auto r = pointwise_limit(seq, CantorPoint::parse(x), budget);
        py::dict d;
        d["status"] = to_string(r.status);
        d["value"] = r.value ? state_to_py(*r.value) : py::none();
        d["stabilization_index"] = r.stabilization_index;
        return d;
      },
      py::arg("kind"), py::arg("target"), py::arg("x"), py::arg("budget") = 64);

  m.def(
      "newton_limit",
      [](const std::string& poly, const py::object& x, std::size_t budget, double tol) {
        const auto r = iterate_limit(Transition::newton(Polynomial::parse(poly)), from_py(x), budget, tol);
        py::dict d;
        d["status"] = to_string(r.status);
        d["value"] = r.value ? state_to_py(*r.value) : py::none();
        d["stabilization_index"] = r.stabilization_index;
        return d;
      },
      py::arg("poly"), py::arg("x"), py::arg("budget") = 64, py::arg("tol") = 1e-12);

  m.def("sqrt_deep_value", [](double a, const py::object& x) { return to_py(sqrt_deep_value(a, from_py(x))); });

  m.def(
      "independence_dimension",
      [](const std::vector<std::vector<double>>& rows, double a, double b, std::size_t cap) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < rows.size(); ++i) names.push_back("f" + std::to_string(i));
        std::vector<std::string> cols;
        for (std::size_t j = 0; j < (rows.empty() ? 0 : rows.front().size()); ++j) cols.push_back("x" + std::to_string(j));
        const auto mat = EvalMatrix::from_rows(names, cols, rows);
        const auto r = independence_dimension(mat, a, b, cap);
        py::dict d;
        d["dim"] = r.dim;
        d["capped"] = r.capped;
        d["points"] = r.witness ? py::cast(r.witness->points) : py::cast(std::vector<std::size_t>{});
        d["certificate_ok"] = r.witness ? ip_certificate_check(mat, *r.witness, a, b) : true;
        return d;
      },
      py::arg("rows"), py::arg("a") = 0.25, py::arg("b") = 0.75, py::arg("cap") = 8,
      "Independence dimension of a function-by-point value matrix.");

  m.def(
      "family_matrix",
      [](const std::string& family, std::size_t depth) {
        std::vector<CantorFunction> fs;
        if (family == "threshold") fs = threshold_features(depth);
        else if (family == "prefix") fs = prefix_features(depth);
        else if (family == "delta") fs = delta_functions(depth);
        else fs = family_functions(parse_family_kind(family), identity_subtree(depth), depth);
        const auto sample = family == "delta" ? cylinder_representatives(depth) : spread_sample();
        const auto mat = evaluate_functions(fs, sample);
        std::vector<std::vector<double>> rows;
        for (std::size_t f = 0; f < mat.num_functions(); ++f) {
          const auto r = mat.row(f);
          rows.emplace_back(r.begin(), r.end());
        }
        return py::make_tuple(mat.functions(), mat.sample(), rows);
      },
      py::arg("family"), py::arg("depth"),
      "(function labels, sample labels, value rows) for a named family.");

  m.def(
      "structure_check",
      [](const std::string& family, std::size_t depth, const std::string& subtree) {
        DyadicSubtree s = identity_subtree(depth);
        if (subtree == "alternating") s = alternating_subtree(depth);
        else if (subtree.rfind("spaced:", 0) == 0) s = spaced_subtree(depth, std::stoul(subtree.substr(7)));
        else if (subtree != "identity") throw std::invalid_argument("unknown subtree '" + subtree + "'");
        const auto r = limit_structure_check(parse_family_kind(family), s, depth);
        py::dict d;
        d["passed"] = r.passed();
        d["along_branch"] = r.along_branch;
        d["discreteness"] = r.discreteness;
        d["min_antichain_distance"] = r.min_antichain_distance;
        d["cut_identities"] = r.cut_identities ? py::cast(*r.cut_identities) : py::none();
        return d;
      },
      py::arg("family"), py::arg("depth") = 4, py::arg("subtree") = "identity");

  m.def(
      "cyl_measure", [](const std::string& e) { return cyl_measure(CylinderSet::parse(e)).value(); }, py::arg("E"));

  m.def(
      "talagrand",
      [](const std::vector<std::string>& cylinders, const std::string& e, double a, double b, std::size_t k,
         std::size_t samples, std::uint64_t seed) {
        std::vector<BinaryWord> words;
        for (const auto& w : cylinders) words.push_back(BinaryWord::parse(w));
        const auto est = estimate_dk(cylinder_functions(words), CylinderSet::parse(e), a, b, k, samples, seed);
        py::dict d;
        d["k"] = est.k;
        d["estimate"] = est.estimate;
        d["std_error"] = est.std_error;
        d["exact"] = est.exact ? py::cast(*est.exact) : py::none();
        d["threshold"] = est.threshold;
        d["samples"] = est.samples;
        d["seed"] = est.seed;
        return d;
      },
      py::arg("cylinders"), py::arg("E") = "full", py::arg("a") = 0.25, py::arg("b") = 0.75, py::arg("k") = 1,
      py::arg("samples") = 100000, py::arg("seed") = 0,
      "D_k estimate for the family of cylinder indicators v_w.");

  m.def(
      "render",
      [](const std::string& poly, std::size_t width, std::size_t height, std::size_t iterations,
         std::array<double, 4> window) {
        RenderConfig cfg;
        cfg.re_min = window[0];
        cfg.re_max = window[1];
        cfg.im_min = window[2];
        cfg.im_max = window[3];
        cfg.width = width;
        cfg.height = height;
        cfg.iterations = iterations;
        const auto img = render_basins(Polynomial::parse(poly), cfg);
        std::string bytes;
        bytes.reserve(3 * img.pixels.size());
        for (const auto& px : img.pixels) {
          bytes.push_back(static_cast<char>(px.r));
          bytes.push_back(static_cast<char>(px.g));
          bytes.push_back(static_cast<char>(px.b));
        }
        return py::bytes(bytes);
      },
      py::arg("poly"), py::arg("width") = 300, py::arg("height") = 300, py::arg("iterations") = 100,
      py::arg("window") = std::array<double, 4>{-2.0, 2.0, -2.0, 2.0},
      "Row-major RGB bytes of the Newton basin image.");
}
