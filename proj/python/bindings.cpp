#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfreal/bihomographic.hpp"
#include "cfreal/errors.hpp"
#include "cfreal/expr.hpp"
#include "cfreal/extraction.hpp"
#include "cfreal/series.hpp"

namespace py = pybind11;
using namespace cfr;

namespace {

// Integers and rationals cross the boundary as decimal text; the Python side
// turns them into int and Fraction.
py::int_ to_py(const Integer& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

Integer to_integer(const py::int_& v) { return Integer(py::str(v).cast<std::string>()); }

Rational to_rational(const std::string& text) {
  ExtRational v = ExtRational::parse(text);
  if (!v.finite()) throw py::value_error("expected a finite rational, got " + text);
  return v.value();
}

std::vector<Integer> to_integers(const std::vector<py::int_>& v) {
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_integer(x));
  return out;
}

py::list to_py(const std::vector<Integer>& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

py::dict to_py(const TermPrefix& p) {
  py::dict d;
  d["certified"] = to_py(p.certified);
  d["terms"] = to_py(p.terms);
  d["tail"] = py::make_tuple(p.tail.lo().str(), p.tail.hi().str());
  d["enclosure"] = py::make_tuple(p.enclosure.lo().str(), p.enclosure.hi().str());
  d["exact"] = p.exact;
  d["pulls"] = p.pulls;
  return d;
}

using Unary = Stream (*)(Stream, std::size_t);

template <Unary f>
Stream apply(const Stream& x, std::size_t refine_cap) {
  py::gil_scoped_release release;
  return f(x, refine_cap);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact real arithmetic on continued fractions";

  auto base = py::register_exception<Error>(m, "CfError", PyExc_ArithmeticError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<DivisionByZero>(m, "DivisionByZero", base.ptr());
  py::register_exception<IterationCapExceeded>(m, "IterationCapExceeded", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidityViolation>(m, "ValidityViolation", PyExc_RuntimeError);

  m.attr("DEFAULT_ITERATION_CAP") = kDefaultIterationCap;
  m.attr("DEFAULT_REFINE_CAP") = kDefaultRefineCap;

  py::class_<Stream>(m, "Stream")
      .def("items", [](const Stream& s, std::size_t n) {
        std::vector<std::string> out;
        py::gil_scoped_release release;
        for (const auto& item : s.prefix(n)) out.push_back(item.str());
        return out;
      }, py::arg("n"))
      .def("terms", [](const Stream& s, std::size_t count, std::size_t cap) {
        TermPrefix p;
        {
          py::gil_scoped_release release;
          p = leading_terms(s, count, cap);
        }
        return to_py(p.certified);
      }, py::arg("count"), py::arg("cap") = kDefaultIterationCap)
      .def("approximate", [](const Stream& s, const std::string& eps, std::size_t cap) {
        Rational e = to_rational(eps);
        TermPrefix p;
        {
          py::gil_scoped_release release;
          p = approximate(s, e, cap);
        }
        return to_py(p);
      }, py::arg("eps"), py::arg("cap") = kDefaultIterationCap)
      .def("decimal", [](const Stream& s, std::size_t digits, std::size_t cap) {
        py::gil_scoped_release release;
        return to_decimal(s, digits, cap);
      }, py::arg("digits"), py::arg("cap") = kDefaultIterationCap)
      .def("same_as", &Stream::same_as);

  m.def("rational", [](const std::string& v) { return cf_from_rational(to_rational(v)); }, py::arg("value"));
  m.def("from_terms", [](const py::int_& a0, const std::vector<py::int_>& rest,
                         std::optional<std::vector<py::int_>> period) {
    std::optional<std::vector<Integer>> p;
    if (period) p = to_integers(*period);
    return cf_from_terms(to_integer(a0), to_integers(rest), std::move(p));
  }, py::arg("a0"), py::arg("rest") = std::vector<py::int_>{}, py::arg("period") = py::none());
  m.def("rational_terms", [](const std::string& v) { return to_py(rational_terms(to_rational(v))); });

  m.def("add", &cfr::add);
  m.def("sub", &cfr::sub);
  m.def("mul", &cfr::mul);
  m.def("div", static_cast<Stream (*)(Stream, Stream)>(&cfr::div));

  m.def("pi", &pi_cf);
  m.def("e", &e_cf);
  auto cap = py::arg("refine_cap") = kDefaultRefineCap;
  m.def("exp", &apply<exp_cf>, py::arg("x"), cap);
  m.def("log", &apply<log_cf>, py::arg("x"), cap);
  m.def("cos", &apply<cos_cf>, py::arg("x"), cap);
  m.def("sin", &apply<sin_cf>, py::arg("x"), cap);
  m.def("tan", &apply<tan_cf>, py::arg("x"), cap);
  m.def("arcsin", &apply<arcsin_cf>, py::arg("x"), cap);
  m.def("sqrt", &apply<sqrt_cf>, py::arg("x"), cap);

  py::class_<Evaluator>(m, "Evaluator")
      .def(py::init<std::size_t>(), py::arg("refine_cap") = kDefaultRefineCap)
      .def("eval", [](Evaluator& ev, const std::string& src) {
        ExprPtr e = parse_expr(src);
        py::gil_scoped_release release;
        return ev.eval(e);
      }, py::arg("expression"))
      .def("bind", &Evaluator::bind, py::arg("name"), py::arg("value"))
      .def("bound", &Evaluator::bound, py::arg("name"));
}
