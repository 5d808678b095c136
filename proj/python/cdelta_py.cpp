#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cdelta/analysis.hpp"
#include "cdelta/cache.hpp"
#include "cdelta/cli.hpp"
#include "cdelta/expression.hpp"
#include "cdelta/report.hpp"
#include "cdelta/theorems.hpp"

namespace py = pybind11;
using namespace cdelta;

namespace {

BuildOptions options(std::size_t order_cap) { return BuildOptions{order_cap}; }

std::string analyze_json(const std::string& expr, bool full_sets, std::size_t order_cap) {
  RingAnalysis an(build_expression(expr, options(order_cap)));
  return serialize(analysis_report(an, expr, full_sets, 0.0));
}

std::string decompose_json(const std::string& expr, const std::string& element, const std::string& kind,
                           std::size_t order_cap) {
  const FiniteRing ring = build_expression(expr, options(order_cap));
  RingAnalysis an(ring);
  const auto w = an.decompose(resolve_element(ring, parse_element(element)), parse_kind(kind));
  return serialize(decomposition_report(an, expr, w));
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = execute_command(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite ring workbench: Cayley-table rings and central Delta decompositions";

  py::register_exception<Error>(m, "CdeltaError", PyExc_ValueError);

  py::class_<FiniteRing>(m, "Ring")
      .def_property_readonly("name", &FiniteRing::name)
      .def_property_readonly("order", &FiniteRing::order)
      .def_property_readonly("zero", &FiniteRing::zero)
      .def_property_readonly("one", &FiniteRing::one)
      .def("add", py::overload_cast<Index, Index>(&FiniteRing::add, py::const_), py::arg("a"), py::arg("b"))
      .def("mul", py::overload_cast<Index, Index>(&FiniteRing::mul, py::const_), py::arg("a"), py::arg("b"))
      .def("neg", py::overload_cast<Index>(&FiniteRing::neg, py::const_), py::arg("a"))
      .def("label", &FiniteRing::label, py::arg("a"))
      .def("element", [](const FiniteRing& r, const std::string& literal) {
        return resolve_element(r, parse_element(literal));
      }, py::arg("literal"))
      .def("is_commutative", &FiniteRing::is_commutative)
      .def("add_table", [](const FiniteRing& r) {
        const auto t = r.add_table();
        return std::vector<Index>(t.begin(), t.end());
      })
      .def("mul_table", [](const FiniteRing& r) {
        const auto t = r.mul_table();
        return std::vector<Index>(t.begin(), t.end());
      })
      .def("__repr__", [](const FiniteRing& r) { return "<Ring " + r.name() + " of order " + std::to_string(r.order()) + ">"; });

  m.def("build", [](const std::string& expr, std::size_t order_cap) { return build_expression(expr, options(order_cap)); },
        py::arg("expression"), py::arg("order_cap") = kDefaultOrderCap);
  m.def("normalize", [](const std::string& expr) { return print_expression(parse_expression(expr)); },
        py::arg("expression"));
  m.def("analyze_json", &analyze_json, py::arg("expression"), py::arg("full_sets") = false,
        py::arg("order_cap") = kDefaultOrderCap);
  m.def("decompose_json", &decompose_json, py::arg("expression"), py::arg("element"), py::arg("kind") = "cdelta",
        py::arg("order_cap") = kDefaultOrderCap);
  m.def("check_ids", [] {
    std::vector<std::string> ids;
    for (const auto& c : check_catalog()) ids.push_back(c.id);
    return ids;
  });
  m.def("run_check", [](const std::string& id, const std::string& expr) {
    const CheckResult r = run_check(id, build_expression(expr));
    return py::make_tuple(std::string(to_string(r.verdict)), r.detail);
  }, py::arg("check_id"), py::arg("expression"));
  m.def("encode_cache", [](const FiniteRing& r) {
    const auto b = encode_cache(r);
    return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
  }, py::arg("ring"));
  m.def("decode_cache", [](const py::bytes& data, const std::string& name) {
    const std::string s = data;
    return decode_cache(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()), name);
  }, py::arg("data"), py::arg("name") = "Cache");
  m.def("run_cli", &run_cli, py::arg("args"));
  m.attr("__version__") = kToolVersion;
}
