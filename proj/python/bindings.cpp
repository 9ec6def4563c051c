#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orrlab/config.hpp"
#include "orrlab/coords.hpp"
#include "orrlab/experiments.hpp"
#include "orrlab/init_data.hpp"
#include "orrlab/lemma_harness.hpp"
#include "orrlab/linear.hpp"
#include "orrlab/sim.hpp"
#include "orrlab/toy.hpp"
#include "orrlab/weights.hpp"

namespace py = pybind11;
using namespace orrlab;

namespace {

py::array_t<std::complex<double>> field_to_numpy(const SpectralField& f) {
  const Grid& g = f.grid();
  py::array_t<std::complex<double>> out({g.n_k(), g.n_y()});
  auto buf = out.mutable_unchecked<2>();
  for (int r = 0; r < g.n_k(); ++r)
    for (int j = 0; j < g.n_y(); ++j) buf(r, j) = f.at(r, j);
  return out;
}

SpectralField numpy_to_field(const Grid& g,
                             py::array_t<std::complex<double>> arr,
                             double frame_time) {
  auto buf = arr.unchecked<2>();
  if (buf.shape(0) != g.n_k() || buf.shape(1) != g.n_y())
    throw ConfigError("coefficient array shape does not match grid");
  SpectralField f(g, frame_time);
  for (int r = 0; r < g.n_k(); ++r)
    for (int j = 0; j < g.n_y(); ++j) f.at(r, j) = buf(r, j);
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sheared-frame spectral solver and norm machinery";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<BlowupError>(m, "BlowupError");
  py::register_exception<RangeError>(m, "RangeError");
  py::register_exception<DivergenceError>(m, "DivergenceError");

  py::class_<Grid>(m, "Grid")
      .def(py::init<int, int, double>(), py::arg("n_z"), py::arg("n_y"),
           py::arg("l_y"))
      .def_property_readonly("k_max", &Grid::k_max)
      .def_property_readonly("n_z", &Grid::n_z)
      .def_property_readonly("n_y", &Grid::n_y)
      .def_property_readonly("l_y", &Grid::l_y)
      .def_property_readonly("delta_eta", &Grid::delta_eta)
      .def_property_readonly("eta_max", &Grid::eta_max)
      .def("eta_of_col", &Grid::eta_of_col)
      .def("col_of_eta", &Grid::col_of_eta, py::arg("eta"),
           py::arg("tol") = 1e-9);

  py::class_<MultiplierSpec>(m, "MultiplierSpec")
      .def(py::init<>())
      .def_readwrite("s", &MultiplierSpec::s)
      .def_readwrite("lam", &MultiplierSpec::lam)
      .def_readwrite("lam_prime", &MultiplierSpec::lam_prime)
      .def_readwrite("sigma", &MultiplierSpec::sigma)
      .def_readwrite("c_kappa", &MultiplierSpec::c_kappa)
      .def_readwrite("q_tilde", &MultiplierSpec::q_tilde)
      .def_property_readonly("mu", &MultiplierSpec::mu)
      .def("validate", &MultiplierSpec::validate);

  py::class_<WeightSystem>(m, "WeightSystem")
      .def(py::init<const MultiplierSpec&>())
      .def_static("critical_time", &WeightSystem::critical_time)
      .def_static("interval_count", &WeightSystem::interval_count)
      .def_static("interval_of",
                  [](double t, double eta) -> py::object {
                    const auto k = WeightSystem::interval_of(t, eta);
                    if (!k) return py::none();
                    return py::int_(*k);
                  })
      .def("log_w", &WeightSystem::log_w)
      .def("log_w_nr", &WeightSystem::log_w_nr)
      .def("log_w_r", &WeightSystem::log_w_r)
      .def("dlog_w_dt", &WeightSystem::dlog_w_dt)
      .def("lambda_of", &WeightSystem::lambda_of)
      .def("log_J", &WeightSystem::log_J)
      .def("log_A", &WeightSystem::log_A)
      .def("log_A_R", &WeightSystem::log_A_R);

  py::class_<SpectralField>(m, "SpectralField")
      .def(py::init<const Grid&, double>(), py::arg("grid"),
           py::arg("frame_time") = 0.0, py::keep_alive<1, 2>())
      .def_property_readonly("frame_time", &SpectralField::frame_time)
      .def("l2_norm", &SpectralField::l2_norm)
      .def("coeffs", &field_to_numpy);

  m.def(
      "make_field",
      [](const Grid& g, py::array_t<std::complex<double>> arr, double t) {
        return numpy_to_field(g, arr, t);
      },
      py::arg("grid"), py::arg("coeffs"), py::arg("frame_time") = 0.0,
      py::keep_alive<0, 1>());

  m.def("linear_evolve", &linear_evolve, py::keep_alive<0, 1>());
  m.def("orr_streamfunction", &orr_streamfunction, py::keep_alive<0, 1>());
  m.def("xavg_feedback", &xavg_feedback);
  m.def("sobolev_norm", &sobolev_norm);
  m.def("sobolev_norm_physical", &sobolev_norm_physical);
  m.def("gevrey_norm", &gevrey_norm);

  py::class_<ToyTrajectory>(m, "ToyTrajectory")
      .def_readonly("tau", &ToyTrajectory::tau)
      .def_readonly("f_r", &ToyTrajectory::f_r)
      .def_readonly("f_nr", &ToyTrajectory::f_nr);

  py::class_<ToyGrowthFit>(m, "ToyGrowthFit")
      .def_readonly("alpha_left", &ToyGrowthFit::alpha_left)
      .def_readonly("alpha_right", &ToyGrowthFit::alpha_right)
      .def_readonly("c_emp", &ToyGrowthFit::c_emp)
      .def_readonly("ratio_at_zero", &ToyGrowthFit::ratio_at_zero);

  m.def("integrate_toy", &integrate_toy, py::arg("k"), py::arg("eta"),
        py::arg("kappa"), py::arg("n_steps") = 0,
        py::arg("self_interaction") = false);
  m.def("fit_growth_exponents", &fit_growth_exponents);

  py::class_<LemmaReport>(m, "LemmaReport")
      .def_readonly("lemma_id", &LemmaReport::lemma_id)
      .def_readonly("samples", &LemmaReport::samples)
      .def_readonly("admissible", &LemmaReport::admissible)
      .def_readonly("violations", &LemmaReport::violations)
      .def_readonly("c_emp", &LemmaReport::c_emp)
      .def_readonly("stable", &LemmaReport::stable)
      .def_readonly("vacuous", &LemmaReport::vacuous)
      .def("to_json", &LemmaReport::to_json);

  m.def(
      "run_lemma",
      [](const WeightSystem& ws, const std::string& id, long samples,
         std::uint64_t seed) {
        LemmaSampleSpec spec;
        spec.count = samples;
        spec.seed = seed;
        return run_lemma(ws, lemma_from_name(id), spec);
      },
      py::arg("weights"), py::arg("lemma_id"), py::arg("samples") = 2000,
      py::arg("seed") = 1);

  m.def(
      "run_experiment_json",
      [](const std::string& config_json) {
        return run_experiment(parse_config_text(config_json));
      },
      "run an experiment from a JSON config string");
  m.def("run_experiment_file",
        [](const std::string& path) {
          return run_experiment(parse_config(path));
        });
}
