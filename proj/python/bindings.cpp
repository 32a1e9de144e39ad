#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "codequiv/additive_codes.hpp"
#include "codequiv/cli.hpp"
#include "codequiv/code_core.hpp"
#include "codequiv/equivalence.hpp"
#include "codequiv/errors.hpp"
#include "codequiv/io.hpp"

namespace py = pybind11;
using namespace codequiv;

namespace {

// pybind11 holders cannot point to const.
using MutableFieldPtr = std::shared_ptr<Field>;
MutableFieldPtr unconst(const FieldPtr& f) { return std::const_pointer_cast<Field>(f); }

std::string status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound:
      return "found";
    case SearchStatus::kNotFound:
      return "not-found";
    case SearchStatus::kBudgetExceeded:
      return "undecided";
  }
  return "";
}

// Search outcome as (status, nodes, witness text or None).
template <class W>
py::tuple result_tuple(const Field& field, const SearchResult<W>& r) {
  py::object text = py::none();
  if (r.witness) text = py::str(format_witness(field, AnyWitness(*r.witness)));
  return py::make_tuple(status_name(r.status), r.nodes, text);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Equivalence of codes over finite fields";
  py::register_exception<Error>(m, "Error");

  py::class_<Field, MutableFieldPtr>(m, "Field")
      .def(py::init([](std::uint32_t p, std::uint32_t h) { return unconst(Field::make(p, h)); }),
           py::arg("p"),
           py::arg("h"))
      .def_property_readonly("p", &Field::p)
      .def_property_readonly("h", &Field::h)
      .def_property_readonly("q", &Field::q)
      .def("add", &Field::add)
      .def("mul", &Field::mul)
      .def("inv", &Field::inv)
      .def("exp", &Field::exp)
      .def("format", &Field::format)
      .def("parse", [](const Field& f, const std::string& s) { return f.parse(s); });

  py::class_<Code>(m, "Code")
      .def_property_readonly("field", [](const Code& c) { return unconst(c.field()); })
      .def_property_readonly("length", &Code::length)
      .def_property_readonly("size", &Code::size)
      .def("contains", [](const Code& c, const std::vector<Elem>& w) { return c.contains(w); })
      .def("minimum_distance", [](const Code& c) { return minimum_distance(c); })
      .def("weight_distribution", [](const Code& c) { return weight_distribution(c); })
      .def("mds", [](const Code& c) {
        const auto r = mds_report(c);
        return py::make_tuple(r.mds, r.d, r.size);
      });
  py::class_<LinearCode, Code>(m, "LinearCode")
      .def("__str__", [](const LinearCode& c) { return format_code(c); });
  py::class_<AdditiveCode, Code>(m, "AdditiveCode")
      .def_static("from_linear", &AdditiveCode::from_linear)
      .def("is_fq_linear", [](const AdditiveCode& c) { return is_fq_linear(c); })
      .def("__str__", [](const AdditiveCode& c) { return format_code(c); });

  auto parse = [](const std::string& text) -> py::object {
    std::istringstream in(text);
    auto code = read_code(in);
    if (auto* l = std::get_if<LinearCode>(&code)) return py::cast(std::move(*l));
    return py::cast(std::get<AdditiveCode>(std::move(code)));
  };
  m.def("parse_code", parse, py::arg("text"));
  m.def("read_code", [parse](const std::string& path) -> py::object {
    auto code = read_code_file(path);
    if (auto* l = std::get_if<LinearCode>(&code)) return py::cast(std::move(*l));
    return py::cast(std::get<AdditiveCode>(std::move(code)));
  }, py::arg("path"));

  m.def("search_semilinear",
        [](const LinearCode& a, const LinearCode& b, std::uint64_t budget, bool linear_only) {
          return result_tuple(*a.field(), search_semilinear(a, b, budget, linear_only));
        },
        py::arg("a"), py::arg("b"), py::arg("budget") = kDefaultSearchBudget,
        py::arg("linear_only") = false);
  m.def("search_general",
        [](const LinearCode& a, const LinearCode& b, std::uint64_t budget) {
          return result_tuple(*a.field(), search_general(a, b, budget));
        },
        py::arg("a"), py::arg("b"), py::arg("budget") = kDefaultSearchBudget);
  m.def("search_additive",
        [](const AdditiveCode& a, const AdditiveCode& b, std::uint64_t budget) {
          return result_tuple(*a.field(), search_additive(a, b, budget));
        },
        py::arg("a"), py::arg("b"), py::arg("budget") = kDefaultSearchBudget);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = cli::run(args, out, err);
    return py::make_tuple(status, out.str(), err.str());
  }, py::arg("args"));
}
