#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shorlab/commands.hpp"

namespace py = pybind11;
using namespace shorlab;

namespace {

ExperimentConfig config_from(const std::string& text) {
  return parse_config(nlohmann::json::parse(text.empty() ? "{}" : text));
}

BMode mode_from(const std::string& s) { return parse_b_mode(s); }

}  // namespace

PYBIND11_MODULE(_shorlab, m) {
  m.doc() = "Shor order-finding simulator with coherence closed forms";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<Error>(m, "ShorlabError", PyExc_RuntimeError);

  m.def("find_order", &find_order, py::arg("x"), py::arg("n"));
  m.def("euler_phi", &euler_phi, py::arg("r"));

  py::class_<ShorInstance>(m, "ShorInstance")
      .def(py::init([](std::int64_t n, std::int64_t x, int t, const std::string& b_mode) {
             return ShorInstance::circuit(n, x, t, mode_from(b_mode));
           }),
           py::arg("n"), py::arg("x"), py::arg("t"), py::arg("b_mode") = "compact")
      .def_static(
          "with_register_size",
          [](std::int64_t n, std::int64_t x, std::int64_t q, const std::string& b_mode) {
            return ShorInstance::with_register_size(n, x, q, mode_from(b_mode));
          },
          py::arg("n"), py::arg("x"), py::arg("q"), py::arg("b_mode") = "compact")
      .def_property_readonly("n", &ShorInstance::n)
      .def_property_readonly("x", &ShorInstance::x)
      .def_property_readonly("t", &ShorInstance::t)
      .def_property_readonly("q", &ShorInstance::q)
      .def_property_readonly("r", &ShorInstance::r)
      .def_property_readonly("d", &ShorInstance::d)
      .def_property_readonly("exact_mode", &ShorInstance::exact_mode)
      .def("__repr__", [](const ShorInstance& i) {
        return "ShorInstance(n=" + std::to_string(i.n()) + ", x=" + std::to_string(i.x()) +
               ", q=" + std::to_string(i.q()) + ", r=" + std::to_string(i.r()) + ")";
      });

  m.def(
      "outcome_distribution",
      [](const ShorInstance& inst, const CVector& alpha) {
        return outcome_distribution(QuantumState{run_pure_pipeline(inst, alpha)}, inst);
      },
      py::arg("inst"), py::arg("alpha"));
  m.def(
      "success_probability",
      [](const ShorInstance& inst, const std::vector<double>& dist) {
        return success_probability(inst, dist);
      },
      py::arg("inst"), py::arg("dist"));
  m.def(
      "thm1_closed_forms",
      [](const ShorInstance& inst, const CVector& alpha) {
        const auto cd = thm1_closed_forms(inst, alpha);
        return py::make_tuple(cd.c, cd.d);
      },
      py::arg("inst"), py::arg("alpha"));
  m.def(
      "pseudo_pure_closed_forms",
      [](const ShorInstance& inst, const CVector& alpha, double epsilon, const std::string& f) {
        const auto p = pseudo_pure_closed_forms(inst, alpha, epsilon, OperatorMonotoneFunction::by_name(f));
        return py::dict(py::arg("c_f") = p.c_f, py::arg("d_f") = p.d_f, py::arg("c_wy") = p.c_wy,
                        py::arg("d_wy") = p.d_wy);
      },
      py::arg("inst"), py::arg("alpha"), py::arg("epsilon"), py::arg("f") = "wy");
  m.def(
      "noisy_closed_forms",
      [](const ShorInstance& inst, double lambda, const std::string& f) {
        const auto n = noisy_closed_forms(inst, lambda, OperatorMonotoneFunction::by_name(f));
        return py::dict(py::arg("c_f") = n.c_f, py::arg("c_wy") = n.c_wy, py::arg("d") = n.d);
      },
      py::arg("inst"), py::arg("lam"), py::arg("f") = "wy");
  m.def(
      "noisy_bound_and_gamma",
      [](const ShorInstance& inst, double lambda) {
        const auto b = noisy_bound_and_gamma(inst, lambda);
        return py::make_tuple(b.thm7_lower, b.gamma);
      },
      py::arg("inst"), py::arg("lam"));

  // Command entry points take and return JSON text.
  m.def(
      "_simulate",
      [](const std::string& config) {
        const auto c = config_from(config);
        return simulate_json(c, simulate(c));
      },
      py::arg("config"));
  m.def(
      "_verify", [](const std::string& config) { return verify_json(run_verification(config_from(config))); },
      py::arg("config"));
  m.def(
      "_sweep",
      [](const std::string& config, std::size_t threads) {
        const auto c = config_from(config);
        return sweep_json(c, sweep(c, threads));
      },
      py::arg("config"), py::arg("threads") = 0);
}
