#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cmdir/gross.hpp"
#include "cmdir/qexp.hpp"
#include "cmdir/report.hpp"

namespace py = pybind11;
using namespace cmdir;

namespace {

std::string run_json(const std::string& command, i64 p, std::optional<i64> order, std::size_t terms, prec_t prec) {
  RunConfig cfg;
  cfg.command = command;
  cfg.p = p;
  cfg.order = order;
  cfg.terms = terms;
  cfg.prec = prec;
  validate(cfg);
  py::gil_scoped_release release;
  return run_command(cfg).dump(2);
}

// Integer coefficients a_1..a_terms of the canonical form; h = 1 only.
std::vector<long> canonical_integers(i64 p, std::size_t terms, prec_t prec) {
  RunConfig cfg{"qexp", p, std::nullopt, terms, prec};
  validate(cfg);
  FieldContext k(p);
  if (k.class_number() != 1) throw std::invalid_argument("integer coefficients need class number 1");
  Cocycle c = Cocycle::compute(k, prec);
  auto qe = canonical_direction(k, c, terms);
  std::vector<long> out;
  for (std::size_t n = 1; n <= terms; ++n) out.push_back(qe.integer(n).get_si());
  return out;
}

}  // namespace

PYBIND11_MODULE(_cmdir, m) {
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  m.attr("SCHEMA_VERSION") = kSchemaVersion;
  m.def("run_json", &run_json, py::arg("command"), py::arg("p"), py::arg("order") = py::none(),
        py::arg("terms") = 1000, py::arg("prec") = 256);
  m.def("canonical_integers", &canonical_integers, py::arg("p"), py::arg("terms") = 100, py::arg("prec") = 128);
  m.def("class_number", [](i64 p) { return FieldContext(p).class_number(); }, py::arg("p"));
}
