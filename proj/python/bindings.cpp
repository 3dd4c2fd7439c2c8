#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <variant>

#include "deforma/dcalc.hpp"
#include "deforma/errors.hpp"
#include "deforma/expression.hpp"
#include "deforma/fractional.hpp"
#include "deforma/qcalc.hpp"
#include "deforma/qpotential.hpp"
#include "deforma/special.hpp"
#include "deforma/spectral.hpp"
#include "deforma/verify.hpp"

namespace py = pybind11;
using namespace deforma;

namespace {

// Functions arrive either as expression text in x or as Python callables.
using FunctionArg = std::variant<std::string, py::function>;

FunctionHandle to_handle(const FunctionArg& f) {
  if (const auto* text = std::get_if<std::string>(&f)) return parse_expression(*text);
  py::function fn = std::get<py::function>(f);
  return FunctionHandle([fn](double x) {
    py::gil_scoped_acquire gil;
    return fn(x).cast<Complex>();
  });
}

Parity to_parity(const std::string& name) {
  if (name == "even") return Parity::even;
  if (name == "odd") return Parity::odd;
  if (name == "none") return Parity::none;
  throw DomainError("parity must be 'even', 'odd' or 'none'");
}

py::dict profile_dict(const Profile& p) {
  std::vector<double> re;
  std::vector<double> im;
  for (const Complex& v : p.values()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  py::dict d;
  d["xi"] = p.grid().abscissae();
  d["value_re"] = re;
  d["value_im"] = im;
  d["meta"] = p.meta();
  return d;
}

}  // namespace

PYBIND11_MODULE(_deforma, m) {
  m.doc() = "Deformed and fractional calculus toolkit";
  m.attr("__version__") = "0.1.0";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("gamma", &deforma::gamma, py::arg("x"));
  m.def("bessel_j", &bessel_j, py::arg("nu"), py::arg("x"));
  m.def("evaluate", [](const std::string& text, double x) { return parse_expression(text).real(x); },
        py::arg("expression"), py::arg("x"));

  m.def("q_bracket", &qcalc::q_bracket, py::arg("x"), py::arg("q"));
  m.def("Q_bracket", &qcalc::Q_bracket, py::arg("x"), py::arg("Q"));
  m.def("q_derivative",
        [](const FunctionArg& f, double q, double x) { return qcalc::q_derivative(to_handle(f), q)(x); },
        py::arg("f"), py::arg("q"), py::arg("x"));
  m.def("Q_derivative",
        [](const FunctionArg& f, double Q, double x) { return qcalc::Q_derivative(to_handle(f), Q)(x); },
        py::arg("f"), py::arg("Q"), py::arg("x"));
  m.def("q_exp", &qcalc::q_exp, py::arg("a"), py::arg("z"), py::arg("q"), py::arg("tol") = 1e-14);
  m.def("q_integral",
        [](const FunctionArg& f, double a, double q) { return qcalc::q_integral(to_handle(f), a, q); },
        py::arg("f"), py::arg("a"), py::arg("q"));

  m.def("caputo",
        [](const FunctionArg& f, double alpha, double x, double h) {
          return fractional::caputo(to_handle(f), alpha, x, h);
        },
        py::arg("f"), py::arg("alpha"), py::arg("x"), py::arg("h") = 1.0 / 512);
  m.def("riesz",
        [](const FunctionArg& f, double alpha, double x) { return fractional::riesz(to_handle(f), alpha, x); },
        py::arg("f"), py::arg("alpha"), py::arg("x"));
  m.def("feller",
        [](const FunctionArg& f, double alpha, double x) { return fractional::feller(to_handle(f), alpha, x); },
        py::arg("f"), py::arg("alpha"), py::arg("x"));
  m.def("caputo_power_coeff", &fractional::caputo_power_coeff, py::arg("n"), py::arg("alpha"));
  m.def("mittag_leffler", &fractional::mittag_leffler, py::arg("alpha"), py::arg("z"),
        py::arg("tol") = 1e-14);

  m.def("d_bracket", &dcalc::d_bracket, py::arg("n"), py::arg("D"));
  m.def("d_factorial", &dcalc::d_factorial, py::arg("n"), py::arg("D"));
  m.def("d_derivative",
        [](const FunctionArg& f, double D, double xi) { return dcalc::d_derivative(to_handle(f), D)(xi); },
        py::arg("f"), py::arg("D"), py::arg("xi"));
  m.def("d_exp", &dcalc::d_exp, py::arg("D"), py::arg("z"), py::arg("tol") = 1e-14);
  m.def("d_integral",
        [](const FunctionArg& f, double D, double x) { return dcalc::d_integral(to_handle(f), D, x); },
        py::arg("f"), py::arg("D"), py::arg("x"));
  m.def("eigenfunction",
        [](int n, double D, double xi) { return dcalc::eigenfunction(n, D).evaluate(xi); },
        py::arg("n"), py::arg("D"), py::arg("xi"));

  m.def("q_oscillator_energies",
        [](double q, int nmax) { return spectral::q_oscillator_energies(q, nmax).energies; },
        py::arg("q"), py::arg("nmax"));
  m.def("wkb_energies",
        [](double alpha, int nmax) { return spectral::wkb_energies(alpha, nmax).energies; },
        py::arg("alpha"), py::arg("nmax"));
  m.def("d_oscillator_energies",
        [](double D, int nmax) { return spectral::d_oscillator_energies(D, nmax).energies; },
        py::arg("D"), py::arg("nmax"));
  m.def("fractional_oscillator_numeric",
        [](double alpha, double L, int N, int k) {
          return spectral::fractional_oscillator_numeric(alpha, L, N, k).energies;
        },
        py::arg("alpha"), py::arg("L") = 8.0, py::arg("N") = 401, py::arg("k") = 5);
  m.def("free_particle_psi",
        [](double p, double D, double xi) { return spectral::free_particle_psi(p, D)(xi); },
        py::arg("p"), py::arg("D"), py::arg("xi"));
  m.def("probability_density",
        [](double p, double D, double L, std::size_t N) {
          return profile_dict(spectral::probability_density(p, D, Grid::uniform(-L, L, N)));
        },
        py::arg("p"), py::arg("D"), py::arg("L") = 8.0, py::arg("N") = 401);

  m.def("qp_standard",
        [](const FunctionArg& r, double xi) { return qpotential::qp_standard(to_handle(r), xi); },
        py::arg("r"), py::arg("xi"));
  m.def("qp_deformed",
        [](const FunctionArg& r, double D, const std::string& parity, double xi) {
          return qpotential::qp_deformed(to_handle(r), D, to_parity(parity), xi);
        },
        py::arg("r"), py::arg("D"), py::arg("parity"), py::arg("xi"));
  m.def("qp_relation_check",
        [](const FunctionArg& r, double D, const std::string& parity, double L, std::size_t N) {
          return profile_dict(
              qpotential::qp_relation_check(to_handle(r), D, to_parity(parity), Grid::uniform(-L, L, N)));
        },
        py::arg("r"), py::arg("D"), py::arg("parity"), py::arg("L") = 8.0, py::arg("N") = 401);
  m.def("relation_constants",
        [](double D) {
          const auto k = qpotential::relation_constants(D);
          py::dict d;
          d["quoted_relation"] = k.quoted_relation;
          d["square_first_form"] = k.square_first_form;
          d["square_second_form"] = k.square_second_form;
          d["implied_by_second_form"] = k.implied_by_second_form;
          return d;
        },
        py::arg("D"));

  m.def("verify",
        [](const std::string& only, std::uint64_t seed) {
          py::list out;
          for (const auto& r : verify::run({only, seed})) {
            py::dict d;
            d["status"] = verify::to_string(r.status);
            d["module"] = r.module;
            d["name"] = r.name;
            d["max_error"] = r.max_error;
            d["tolerance"] = r.tolerance;
            d["detail"] = r.detail;
            out.append(d);
          }
          return out;
        },
        py::arg("only") = "", py::arg("seed") = 1);
}
