#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cpsrel/architecture.hpp"
#include "cpsrel/catalog.hpp"
#include "cpsrel/data_quality.hpp"
#include "cpsrel/errors.hpp"
#include "cpsrel/json_io.hpp"
#include "cpsrel/montecarlo.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

// Holder so the plain std::variant is not hijacked by the stl.h caster.
struct PyFailureModel {
  cpsrel::FailureModel model;
};

py::dict breakdown_dict(const cpsrel::CpsBreakdown& b) {
  py::dict out;
  out["r_sensors"] = b.sensors;
  out["r_actuators"] = b.actuators;
  out["r_network"] = b.network;
  out["r_cc_software"] = b.cc_software;
  out["r_cc_hardware"] = b.cc_hardware;
  out["r_cc_interaction"] = b.cc_interaction;
  out["r_cc"] = b.cc.value;
  out["cc_exceeds_unity"] = b.cc.exceeds_unity;
  out["r_cps"] = b.cps_without_data;
  if (b.cps_with_data) out["r_cps_with_data"] = *b.cps_with_data;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "CPS reliability engine core";

  py::register_exception<cpsrel::ValidationError>(m, "ValidationError",
                                                  PyExc_ValueError);
  py::register_exception<cpsrel::IoError>(m, "IoError", PyExc_IOError);

  py::class_<PyFailureModel>(m, "FailureModel")
      .def_static("constant",
                  [](double lam) {
                    return PyFailureModel{cpsrel::ConstantRate(lam)};
                  },
                  py::arg("lambda_"))
      .def_static("powerlaw",
                  [](double scale, double shape) {
                    return PyFailureModel{cpsrel::PowerLaw(scale, shape)};
                  },
                  py::arg("scale"), py::arg("shape"))
      .def_static("srgm",
                  [](double a, double b, double t_test) {
                    return PyFailureModel{cpsrel::SrgmNhpp(a, b, t_test)};
                  },
                  py::arg("a"), py::arg("b"), py::arg("t_test") = 0.0)
      .def("reliability_at",
           [](const PyFailureModel& self, double mission) {
             return cpsrel::reliability_at(self.model, mission);
           },
           py::arg("mission_hours"))
      .def("windowed_reliability",
           [](const PyFailureModel& self, double t_start, double x) {
             return cpsrel::windowed_reliability(self.model, t_start, x);
           },
           py::arg("t_start_hours"), py::arg("x_hours"))
      .def("__repr__", [](const PyFailureModel& self) {
        return "<FailureModel " + cpsrel::model_type_name(self.model) + ">";
      });

  m.def("series_reliability", &cpsrel::series_reliability, py::arg("parts"));
  m.def("parallel_reliability", &cpsrel::parallel_reliability, py::arg("parts"));
  m.def("k_of_n_reliability", &cpsrel::k_of_n_reliability, py::arg("k"),
        py::arg("parts"));
  m.def("mtbf",
        [](double lam) -> std::optional<double> {
          return cpsrel::mtbf(cpsrel::ConstantRate(lam));
        },
        py::arg("lambda_"), "1/lambda, or None for the infinite-MTBF case");
  m.def("srgm_mean_value", &cpsrel::srgm_mean_value, py::arg("a"), py::arg("b"),
        py::arg("t_hours"));
  m.def("srgm_intensity", &cpsrel::srgm_intensity, py::arg("a"), py::arg("b"),
        py::arg("t_hours"));
  m.def("srgm_count_pmf", &cpsrel::srgm_count_pmf, py::arg("a"), py::arg("b"),
        py::arg("t_hours"), py::arg("n"));
  m.def("sh_intensity", &cpsrel::sh_intensity, py::arg("scale"),
        py::arg("shape"), py::arg("t_hours"));

  m.def("evaluate_architecture",
        [](const std::string& doc_json, bool allow_literal_sum) {
          const auto arch =
              cpsrel::parse_architecture(doc_json, "<string>");
          return breakdown_dict(cpsrel::evaluate_cps(arch, allow_literal_sum));
        },
        py::arg("doc_json"), py::arg("allow_literal_sum") = false);

  m.def("simulate_architecture",
        [](const std::string& doc_json, std::uint64_t samples,
           std::uint64_t seed) {
          const auto arch = cpsrel::parse_architecture(doc_json, "<string>");
          const auto est = cpsrel::simulate(
              arch, cpsrel::SimulationConfig{samples, seed, arch.mission_hours});
          py::dict out;
          out["p_hat"] = est.p_hat;
          out["std_error"] = est.std_error;
          out["ci95"] = py::make_tuple(est.ci_lo, est.ci_hi);
          out["samples"] = est.samples;
          out["seed"] = est.seed;
          out["degenerate_ci"] = est.degenerate_ci;
          return out;
        },
        py::arg("doc_json"), py::arg("samples") = 100000, py::arg("seed") = 0);

  m.def("score_records",
        [](const std::string& schema_json, const std::string& records_csv) {
          const auto schema =
              cpsrel::schema_from_json(json::parse(schema_json));
          std::istringstream in(records_csv);
          const auto batch = cpsrel::parse_records(in, schema, "<string>");
          const auto scores = cpsrel::score_batch(batch, schema);
          const auto combined = cpsrel::data_reliability(
              scores, cpsrel::CombinerMode::normalized_mean(
                          {0.25, 0.25, 0.25, 0.25}));
          py::dict out;
          out["completeness"] = scores.completeness.score;
          out["accuracy"] = scores.accuracy.score;
          out["consistency"] = scores.consistency.score;
          out["timeliness"] = scores.timeliness.score;
          out["r_data"] = combined.value;
          return out;
        },
        py::arg("schema_json"), py::arg("records_csv"));
}
