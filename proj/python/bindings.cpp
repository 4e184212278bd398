#include "superpoisson/cli.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
namespace sp = superpoisson;

namespace {

sp::Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::int_>(h) || py::isinstance<py::str>(h)) return sp::Rational(py::str(h).cast<std::string>());
  if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator")) {
    return sp::Rational(py::str(h.attr("numerator")).cast<std::string>() + "/" +
                        py::str(h.attr("denominator")).cast<std::string>());
  }
  throw py::type_error("expected an int, a Fraction or a rational string");
}

py::object to_fraction(const sp::Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(q.get_str());
}

sp::Truncation trunc(std::optional<std::uint32_t> fiber, std::optional<std::uint32_t> lam,
                     std::optional<std::uint32_t> base) {
  sp::Truncation t;
  if (fiber) t.set(sp::Grading::FiberDegree, *fiber);
  if (lam) t.set(sp::Grading::LambdaDegree, *lam);
  if (base) t.set(sp::Grading::BaseDegree, *base);
  return t;
}

sp::Grading grading(const std::string& s) {
  if (s == "fiber") return sp::Grading::FiberDegree;
  if (s == "lambda") return sp::Grading::LambdaDegree;
  if (s == "base") return sp::Grading::BaseDegree;
  throw py::value_error("grading must be 'fiber', 'lambda' or 'base'");
}

// Charts are shared as pointers to const, which pybind11 cannot hold directly.
struct ChartHandle {
  sp::ChartPtr ptr;
};

std::optional<std::string> parity_name(const sp::GradedPoly& u) {
  const auto p = u.parity();
  if (!p) return std::nullopt;
  return *p == sp::Parity::Odd ? "odd" : "even";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Higher Poisson brackets, Koszul brackets and fiberwise Legendre transforms on R^{n|m}";

  py::register_exception<sp::ScriptError>(m, "ScriptError", PyExc_ValueError);
  py::register_exception<sp::BracketError>(m, "BracketError", PyExc_ValueError);
  py::register_exception<sp::LegendreError>(m, "LegendreError", PyExc_ValueError);

  py::class_<ChartHandle>(m, "Chart")
      .def(py::init([](const std::vector<std::pair<std::string, std::string>>& coords,
                       const std::vector<std::string>& params) {
             std::vector<sp::Coordinate> cs;
             for (const auto& [name, par] : coords) {
               if (par != "even" && par != "odd") throw py::value_error("parity must be 'even' or 'odd'");
               cs.push_back({name, par == "odd" ? sp::Parity::Odd : sp::Parity::Even});
             }
             return ChartHandle{sp::make_chart(std::move(cs), params)};
           }),
           py::arg("coords"), py::arg("params") = std::vector<std::string>{})
      .def_property_readonly("name", [](const ChartHandle& c) { return c.ptr->name(); })
      .def_property_readonly("dim", [](const ChartHandle& c) { return c.ptr->dim(); })
      .def("__call__", [](const ChartHandle& c, const std::string& text) { return sp::parse_poly(c.ptr, text); },
           "Parses a polynomial in this chart's variables.")
      .def("__eq__", [](const ChartHandle& a, const ChartHandle& b) { return sp::same_chart(a.ptr, b.ptr); })
      .def("__repr__", [](const ChartHandle& c) { return "Chart(" + c.ptr->name() + ")"; });

  py::class_<sp::GradedPoly>(m, "Poly")
      .def("__str__", &sp::GradedPoly::str)
      .def("__repr__", [](const sp::GradedPoly& u) { return "Poly(" + u.str() + ")"; })
      .def("latex", &sp::GradedPoly::latex)
      .def_property_readonly("chart", [](const sp::GradedPoly& u) { return ChartHandle{u.chart()}; })
      .def_property_readonly("parity", &parity_name)
      .def("is_zero", &sp::GradedPoly::is_zero)
      .def("__len__", &sp::GradedPoly::size)
      .def("constant_term", [](const sp::GradedPoly& u) { return to_fraction(u.constant_term()); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__mul__", [](const sp::GradedPoly& u, const py::object& q) { return u * to_rational(q); })
      .def("__rmul__", [](const sp::GradedPoly& u, const py::object& q) { return u * to_rational(q); })
      .def("__add__", [](const sp::GradedPoly& u, const py::object& q) {
        return u + sp::GradedPoly::constant(u.chart(), to_rational(q));
      })
      .def("__radd__", [](const sp::GradedPoly& u, const py::object& q) {
        return u + sp::GradedPoly::constant(u.chart(), to_rational(q));
      })
      .def("__sub__", [](const sp::GradedPoly& u, const py::object& q) {
        return u - sp::GradedPoly::constant(u.chart(), to_rational(q));
      })
      .def("__rsub__", [](const sp::GradedPoly& u, const py::object& q) {
        return sp::GradedPoly::constant(u.chart(), to_rational(q)) - u;
      })
      .def("slice", [](const sp::GradedPoly& u, const std::string& g, std::uint32_t k) {
        return sp::degree_slice(u, grading(g), k);
      })
      .def("truncate", [](const sp::GradedPoly& u, std::optional<std::uint32_t> fiber, std::optional<std::uint32_t> lam,
                          std::optional<std::uint32_t> base) { return sp::truncate(u, trunc(fiber, lam, base)); },
           py::arg("fiber") = py::none(), py::arg("lam") = py::none(), py::arg("base") = py::none());

  m.def("schouten", [](const sp::GradedPoly& a, const sp::GradedPoly& b) { return sp::schouten(a, b); });
  m.def("poisson", [](const sp::GradedPoly& a, const sp::GradedPoly& b) { return sp::canonical_poisson(a, b); },
        "Canonical bracket on the cotangent bundle of the doubled space.");
  m.def("hp", [](const sp::GradedPoly& P, py::args fs) {
    return sp::higher_poisson(P, fs.cast<std::vector<sp::GradedPoly>>());
  });
  m.def("koszul", [](const sp::GradedPoly& P, py::args forms) {
    return sp::higher_koszul(P, forms.cast<std::vector<sp::GradedPoly>>());
  });
  m.def("alpha", [](const sp::GradedPoly& P) { return sp::alpha(P).K; });
  m.def("d", &sp::de_rham);
  m.def("kappa", &sp::kappa);
  m.def("euler", [](const sp::GradedPoly& u) { return sp::fiber_euler(u, sp::VarKind::AntiFiber); });

  const auto F = py::arg("fiber") = 6, L = py::arg("lam") = 2, B = py::arg("base") = 4;
  m.def("legendre", [](const sp::GradedPoly& P, std::optional<std::uint32_t> f, std::optional<std::uint32_t> l,
                       std::optional<std::uint32_t> b) { return sp::legendre_transform(P, trunc(f, l, b)); },
        py::arg("P"), F, L, B);
  m.def("invlegendre", [](const sp::GradedPoly& w, std::optional<std::uint32_t> f, std::optional<std::uint32_t> l,
                          std::optional<std::uint32_t> b) { return sp::legendre_inverse(w, trunc(f, l, b)); },
        py::arg("omega"), F, L, B);
  m.def("phi", &sp::phi_pullback, py::arg("P"), py::arg("u"));
  m.def("psi", &sp::psi_pullback, py::arg("omega"), py::arg("u"));
  m.def("nondeg", [](const sp::GradedPoly& u, const std::vector<py::object>& point) {
    std::vector<sp::Rational> p;
    for (const auto& x : point) p.push_back(to_rational(x));
    return sp::hessian_nondegenerate(u, p).nondegenerate;
  }, py::arg("u"), py::arg("point") = std::vector<py::object>{});

  py::class_<sp::BracketReport>(m, "Report")
      .def_readonly("name", &sp::BracketReport::name)
      .def_readonly("chart", &sp::BracketReport::chart)
      .def_readonly("passed", &sp::BracketReport::pass)
      .def_readonly("residual", &sp::BracketReport::residual)
      .def_readonly("cases", &sp::BracketReport::cases)
      .def_readonly("failures", &sp::BracketReport::failures)
      .def_readonly("notes", &sp::BracketReport::notes)
      .def("line", &sp::BracketReport::line)
      .def("json", &sp::BracketReport::json)
      .def("__bool__", [](const sp::BracketReport& r) { return r.pass; })
      .def("__repr__", &sp::BracketReport::line);

  m.def("check_discrepancy", [](const sp::GradedPoly& P) { return sp::check_discrepancy(P); });
  m.def("check_domega", [](const sp::GradedPoly& P, std::optional<std::uint32_t> f, std::optional<std::uint32_t> l,
                           std::optional<std::uint32_t> b) { return sp::check_domega(P, trunc(f, l, b)); },
        py::arg("P"), F, L, B);
  m.def("check_linfty", [](const sp::GradedPoly& P, unsigned N) { return sp::check_linfty(P, N); });
  m.def("check_koszul", [](const sp::GradedPoly& P, unsigned N) { return sp::check_koszul_suite(P, N); },
        py::arg("P"), py::arg("N") = 3);
  m.def("check_weight", [](const sp::GradedPoly& P, const sp::GradedPoly& Q) {
    return sp::check_weight_identities(P, Q);
  });

  m.def("run", [](const std::string& script) {
    sp::Session s;
    std::ostringstream out, err;
    const int rc = s.run(script, out, err);
    return py::make_tuple(rc, out.str(), err.str());
  }, "Runs a script; returns (exit code, stdout, stderr).");
}
