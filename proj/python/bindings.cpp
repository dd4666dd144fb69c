#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "gammatime/analytic.hpp"
#include "gammatime/errors.hpp"
#include "gammatime/gamma_sim.hpp"
#include "gammatime/martingales.hpp"
#include "gammatime/modular.hpp"
#include "gammatime/specfun.hpp"
#include "gammatime/suite.hpp"

namespace py = pybind11;
using namespace gammatime;

namespace {

double as_double(const ExtReal& v) { return v.as_double(); }

HSeriesConfig series(std::size_t terms, const std::string& density, double horizon, std::uint64_t seed) {
  HSeriesConfig c;
  c.terms = terms;
  c.density = BaseDensity::parse(density);
  c.horizon = horizon;
  c.seed = seed;
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gamma process laboratory: special functions, transforms, simulation and checks";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def("e1", &exp_integral_e1, py::arg("v"), "E1(v) = int_v^inf e^-x / x dx");
  m.def(
      "h_inverse",
      [](double x, double tol_rel) {
        InversionOptions o;
        o.tol_rel = tol_rel;
        return h_inverse(x, o);
      },
      py::arg("x"), py::arg("tol_rel") = InversionOptions{}.tol_rel, "H(x), the inverse of E1");

  m.def(
      "laplace", [](const std::string& f, double theta) { return laplace_gamma(Integrand::parse(f), theta); },
      py::arg("f"), py::arg("theta"), "E exp(-theta Gamma f)");
  m.def(
      "fourier",
      [](const std::string& f, double theta, double beta) { return fourier_gamma(Integrand::parse(f), theta, beta); },
      py::arg("f"), py::arg("theta"), py::arg("beta") = 0.0, "E exp(i theta Gamma^(beta) f)");
  m.def(
      "moment", [](const std::string& f, int p) {
        const auto lm = levy_moments(Integrand::parse(f), p);
        return moments_from_levy(lm, p);
      },
      py::arg("f"), py::arg("p"), "E (Gamma f)^p");
  m.def(
      "f_norm",
      [](const std::string& f, const std::string& phi) {
        return as_double(f_norm(ModularKind::parse(phi), Integrand::parse(f)));
      },
      py::arg("f"), py::arg("phi") = "phi1", "F-norm inf{c > 0 : Phi(f/c) <= c}");
  m.def(
      "modular",
      [](const std::string& f, const std::string& phi) {
        return as_double(modular_value(ModularKind::parse(phi), Integrand::parse(f)));
      },
      py::arg("f"), py::arg("phi") = "phi1", "int phi(|f|) dx");
  m.def(
      "qv_modular", [](const std::string& f) { return as_double(qv_modular(Integrand::parse(f))); }, py::arg("f"));
  m.def(
      "integrable",
      [](const std::string& f, double beta) { return to_string(gamma_integrable(Integrand::parse(f), beta)); },
      py::arg("f"), py::arg("beta") = 1.0);
  m.def(
      "thorin_k",
      [](const std::string& f, const std::vector<double>& ys) {
        const ThorinDescriptor d = thorin_from_integrand(Integrand::parse(f));
        std::vector<double> out;
        out.reserve(ys.size());
        for (double y : ys) out.push_back(d.k(y));
        return out;
      },
      py::arg("f"), py::arg("y"), "k(y) of the Thorin measure of f");
  m.def("gamma_cdf", &gamma_cdf, py::arg("shape"), py::arg("t"), "P(Gamma_shape <= t)");

  m.def(
      "sample_path",
      [](std::size_t terms, const std::string& density, double horizon, std::uint64_t seed) {
        const JumpPath p = sample_gamma_path(series(terms, density, horizon, seed));
        return py::make_tuple(p.times(), p.heights());
      },
      py::arg("terms") = 200, py::arg("density") = "uniform", py::arg("horizon") = 1.0, py::arg("seed") = 0,
      "Jump times and heights of one truncated series path");
  m.def(
      "sample_symmetric",
      [](double t, std::size_t n, std::size_t terms, std::uint64_t seed) {
        const HSeriesConfig c = series(terms, "uniform", 1.0, 0);
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
          Rng rng(stream_seed(seed, i));
          out[i] = sample_symmetric(t, c, rng);
        }
        return out;
      },
      py::arg("t"), py::arg("n"), py::arg("terms") = 200, py::arg("seed") = 0);

  m.def(
      "exp_martingale",
      [](const std::string& kind, double theta, double t, double x) {
        return exp_martingale(MartingaleKind::parse(kind, theta), t, x);
      },
      py::arg("kind"), py::arg("theta"), py::arg("t"), py::arg("x"));
  m.def(
      "poly_martingale_coefficients",
      [](const std::string& kind, int n, double t) {
        return poly_martingale_coefficients(MartingaleKind::parse(kind, 0.0).kind(), n, t);
      },
      py::arg("kind"), py::arg("n"), py::arg("t"), "Coefficients in descending powers of x");

  m.def("default_manifest", &default_manifest);
  m.def(
      "run_check",
      [](const std::string& name, std::uint64_t seed, std::size_t reps, unsigned jobs) {
        SuiteOptions o;
        o.seed = seed;
        o.reps = reps;
        o.jobs = jobs;
        CheckResult r;
        {
          py::gil_scoped_release release;
          r = run_check(name, o);
        }
        return report_line(r);
      },
      py::arg("name"), py::arg("seed") = 42, py::arg("reps") = 0, py::arg("jobs") = 1,
      "Runs one suite check and returns its JSON report line");
}
