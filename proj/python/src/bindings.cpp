#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "maxcoh/cli.hpp"
#include "maxcoh/core_model.hpp"
#include "maxcoh/elliptic.hpp"
#include "maxcoh/errors.hpp"
#include "maxcoh/experiments.hpp"
#include "maxcoh/oracles.hpp"
#include "maxcoh/propagation.hpp"

namespace py = pybind11;
using namespace maxcoh;
namespace pr = maxcoh::propagation;
namespace ex = maxcoh::experiments;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

py::dict grid_to_dict(const ex::GridResult& g) {
  py::array_t<double> j({static_cast<py::ssize_t>(g.z.size()), static_cast<py::ssize_t>(g.tau.size())});
  std::copy(g.J.begin(), g.J.end(), j.mutable_data());
  py::dict d;
  d["z"] = to_array(g.z);
  d["tau"] = to_array(g.tau);
  d["J"] = j;
  d["regime"] = g.regime;
  d["b1"] = to_array(g.b1);
  d["b2"] = to_array(g.b2);
  d["pump"] = to_array(g.pump);
  d["flagged"] = g.flagged;
  d["oracle_slices"] = g.oracle_slices;
  d["omega_ratio"] = g.omega_ratio;
  d["W"] = to_array(ex::efficiency_curve(g));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core of the maxcoh package";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SingularConfiguration>(m, "SingularConfiguration", base.ptr());
  py::register_exception<RegimeMismatch>(m, "RegimeMismatch", base.ptr());
  py::register_exception<RegimeBoundary>(m, "RegimeBoundary", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<AtomicParams>(m, "AtomicParams")
      .def(py::init<>())
      .def_readwrite("mu1", &AtomicParams::mu1)
      .def_readwrite("mu2", &AtomicParams::mu2)
      .def_readwrite("mu3", &AtomicParams::mu3)
      .def_readwrite("beta21", &AtomicParams::beta21)
      .def_readwrite("beta22", &AtomicParams::beta22)
      .def_readwrite("beta23", &AtomicParams::beta23)
      .def_readwrite("beta31", &AtomicParams::beta31)
      .def_readwrite("beta32", &AtomicParams::beta32)
      .def_readwrite("beta33", &AtomicParams::beta33)
      .def_readwrite("delta30", &AtomicParams::delta30)
      .def_readwrite("delta20", &AtomicParams::delta20)
      .def_readwrite("density", &AtomicParams::density)
      .def_readwrite("dk_over_n", &AtomicParams::dk_over_n)
      .def_readwrite("lambda1_nm", &AtomicParams::lambda1_nm)
      .def_readwrite("lambda2_nm", &AtomicParams::lambda2_nm)
      .def_readwrite("lambda3_nm", &AtomicParams::lambda3_nm)
      .def_property_readonly("q", &AtomicParams::q)
      .def_property_readonly("dk", &AtomicParams::dk)
      .def("validate", &AtomicParams::validate)
      .def("multiphoton_resonant", &AtomicParams::multiphoton_resonant);

  py::class_<DressedState>(m, "DressedState")
      .def_readonly("lambda0", &DressedState::lambda0)
      .def_readonly("c1", &DressedState::c1)
      .def_readonly("c2", &DressedState::c2)
      .def_readonly("rho12", &DressedState::rho12);

  m.def("kr_preset", &kr_preset);
  m.def("figure_atoms", &ex::figure_atoms);
  m.def("solve_cubic", &solve_cubic, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));
  m.def("dressed_state", &dressed_state, py::arg("delta2"), py::arg("omega1"));

  m.def("complete_K", py::overload_cast<double>(&elliptic::complete_K), py::arg("k"));
  m.def("incomplete_F", py::overload_cast<double, double>(&elliptic::incomplete_F), py::arg("gamma"),
        py::arg("k"));
  m.def("incomplete_Pi", py::overload_cast<double, double, double>(&elliptic::incomplete_Pi),
        py::arg("gamma"), py::arg("n"), py::arg("k"));
  m.def(
      "jacobi_sn_cn",
      [](double u, double k) {
        const auto v = elliptic::jacobi_sn_cn(u, k);
        return py::make_tuple(v.sn, v.cn);
      },
      py::arg("u"), py::arg("k"));

  py::enum_<pr::Convention>(m, "Convention")
      .value("AS_PRINTED", pr::Convention::AsPrinted)
      .value("MANLEY_ROWE", pr::Convention::ManleyRowe);
  py::enum_<pr::Regime>(m, "Regime").value("A", pr::Regime::A).value("B", pr::Regime::B).value("C", pr::Regime::C);

  py::class_<pr::ReducedProblem>(m, "ReducedProblem")
      .def(py::init([](double b1, double b2, double ratio, double alpha, double kp, pr::Convention conv) {
             pr::ReducedProblem rp;
             rp.b1 = b1;
             rp.b2 = b2;
             rp.ratio = ratio;
             rp.alpha = alpha;
             rp.kp = kp;
             rp.convention = conv;
             return rp;
           }),
           py::arg("b1"), py::arg("b2"), py::arg("ratio"), py::arg("alpha") = 0.0, py::arg("kp") = 1.0,
           py::arg("convention") = pr::Convention::AsPrinted)
      .def_readwrite("b1", &pr::ReducedProblem::b1)
      .def_readwrite("b2", &pr::ReducedProblem::b2)
      .def_readwrite("ratio", &pr::ReducedProblem::ratio)
      .def_readwrite("alpha", &pr::ReducedProblem::alpha)
      .def_readwrite("kp", &pr::ReducedProblem::kp)
      .def_readwrite("convention", &pr::ReducedProblem::convention)
      .def("poly", &pr::ReducedProblem::poly)
      .def("canonical", &pr::ReducedProblem::canonical);

  py::class_<pr::PropagationCoefficients>(m, "PropagationCoefficients")
      .def_readonly("b1", &pr::PropagationCoefficients::b1)
      .def_readonly("b2", &pr::PropagationCoefficients::b2)
      .def_readonly("ratio", &pr::PropagationCoefficients::ratio)
      .def_readonly("alpha", &pr::PropagationCoefficients::alpha)
      .def_readonly("regime", &pr::PropagationCoefficients::regime)
      .def_readonly("boundary", &pr::PropagationCoefficients::boundary)
      .def_readonly("modulus", &pr::PropagationCoefficients::p)
      .def_readonly("characteristic", &pr::PropagationCoefficients::n)
      .def_readonly("slowdown", &pr::PropagationCoefficients::s)
      .def_readonly("kappa_prime", &pr::PropagationCoefficients::kappa_prime)
      .def_property_readonly("roots", [](const pr::PropagationCoefficients& c) {
        return py::make_tuple(c.x.x1, c.x.x2, c.x.x3);
      });

  m.def(
      "roots",
      [](double b1, double b2, double ratio, pr::Convention conv) {
        const auto r = pr::roots(b1, b2, ratio, conv);
        return py::make_tuple(r.x1, r.x2, r.x3);
      },
      py::arg("b1"), py::arg("b2"), py::arg("ratio"), py::arg("convention") = pr::Convention::AsPrinted);
  m.def("exact_roots", &pr::exact_roots);
  m.def("closed_form", &pr::closed_form);
  m.def("solve", &pr::solve, py::arg("coefficients"), py::arg("z"));
  m.def("plateau_distance", &pr::plateau_distance);
  m.def("plateau_value", &pr::plateau_value);
  m.def("expansion_defect", &pr::expansion_defect);

  py::class_<pr::ExactSolution>(m, "ExactSolution")
      .def(py::init<const pr::ReducedProblem&>())
      .def_property_readonly("regime", &pr::ExactSolution::regime)
      .def_property_readonly("x1", &pr::ExactSolution::x1)
      .def_property_readonly("kappa", &pr::ExactSolution::kappa_exact)
      .def("z_of_x", &pr::ExactSolution::z_of_x)
      .def("x_of_z", &pr::ExactSolution::x_of_z);

  py::class_<oracles::ReducedQuadrature>(m, "ReducedQuadrature")
      .def(py::init<const pr::ReducedProblem&>())
      .def_property_readonly("turning_point", &oracles::ReducedQuadrature::turning_point)
      .def_property_readonly("half_period", &oracles::ReducedQuadrature::half_period)
      .def("z_of_x", &oracles::ReducedQuadrature::z_of_x)
      .def("x_of_z", &oracles::ReducedQuadrature::x_of_z);

  py::class_<ex::ExperimentConfig>(m, "ExperimentConfig")
      .def_readonly("name", &ex::ExperimentConfig::name)
      .def_readwrite("atomic", &ex::ExperimentConfig::atomic)
      .def_readwrite("nz", &ex::ExperimentConfig::nz)
      .def_readwrite("ntau", &ex::ExperimentConfig::ntau)
      .def_readwrite("z_max", &ex::ExperimentConfig::z_max)
      .def_readwrite("tau_min", &ex::ExperimentConfig::tau_min)
      .def_readwrite("tau_max", &ex::ExperimentConfig::tau_max)
      .def_readwrite("convention", &ex::ExperimentConfig::convention)
      .def_readwrite("closed_form_defect", &ex::ExperimentConfig::closed_form_defect)
      .def_property(
          "oracle", [](const ex::ExperimentConfig& c) { return ex::to_string(c.oracle); },
          [](ex::ExperimentConfig& c, const std::string& s) { c.oracle = ex::parse_oracle(s); })
      .def("validate", &ex::ExperimentConfig::validate);

  m.def("preset_names", &ex::preset_names);
  m.def("figure_preset", &ex::figure_preset, py::arg("name"));
  m.def(
      "grid_simulate", [](const ex::ExperimentConfig& c) { return grid_to_dict(ex::grid_simulate(c)); },
      py::arg("config"), "J(z, tau) grid as numpy arrays; W is the efficiency curve");
  m.def(
      "efficiency_curve",
      [](const ex::ExperimentConfig& c) { return to_array(ex::efficiency_curve(ex::grid_simulate(c))); },
      py::arg("config"));

  m.def(
      "selftest",
      [](unsigned seed) {
        py::list out;
        for (const auto& l : cli::run_selftest(seed)) {
          py::dict d;
          d["name"] = l.name;
          d["pass"] = l.pass;
          d["value"] = l.value;
          d["threshold"] = l.threshold;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 20240601u);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"maxcoh"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr)");
}
