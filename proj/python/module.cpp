#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thziscap/config.hpp"
#include "thziscap/link.hpp"
#include "thziscap/optimizer.hpp"
#include "thziscap/sweep.hpp"

namespace py = pybind11;
using namespace thziscap;

PYBIND11_MODULE(_thziscap, m) {
  m.doc() = "THz two-phase sensing/SWIPT link simulator and optimizer";

  py::enum_<RegionClass>(m, "RegionClass")
      .value("Reactive", RegionClass::Reactive)
      .value("FresnelZone", RegionClass::FresnelZone)
      .value("FarField", RegionClass::FarField)
      .value("BelowGainFloor", RegionClass::BelowGainFloor);

  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("Optimal", SolveStatus::Optimal)
      .value("Infeasible", SolveStatus::Infeasible)
      .value("FellBackToGrid", SolveStatus::FellBackToGrid);

  py::class_<AntennaSpec>(m, "AntennaSpec")
      .def(py::init<double, double>(), py::arg("diameter_m"), py::arg("efficiency"))
      .def_readwrite("diameter_m", &AntennaSpec::diameter_m)
      .def_readwrite("efficiency", &AntennaSpec::efficiency);

  py::class_<Atmosphere>(m, "Atmosphere")
      .def(py::init<>())
      .def_readwrite("relative_humidity", &Atmosphere::relative_humidity)
      .def_readwrite("temperature_c", &Atmosphere::temperature_c)
      .def_readwrite("pressure_pa", &Atmosphere::pressure_pa);

  py::class_<EnergyHarvestModel>(m, "EnergyHarvestModel")
      .def_static("linear", &EnergyHarvestModel::linear, py::arg("eta"))
      .def_static("nonlinear", &EnergyHarvestModel::nonlinear, py::arg("a0"),
                  py::arg("b0"), py::arg("c0"))
      .def_static("reference_fit", &EnergyHarvestModel::reference_fit);

  py::class_<FadingModel> fading(m, "FadingModel");
  py::enum_<FadingModel::Mode>(fading, "Mode")
      .value("DeterministicMean", FadingModel::Mode::DeterministicMean)
      .value("MonteCarlo", FadingModel::Mode::MonteCarlo);
  fading.def(py::init<>())
      .def_readwrite("mode", &FadingModel::mode)
      .def_readwrite("rician_k", &FadingModel::rician_k)
      .def_readwrite("sample_count", &FadingModel::sample_count)
      .def_readwrite("seed", &FadingModel::seed);

  py::class_<AbsorptionProvider>(m, "AbsorptionProvider")
      .def_static("line_model", &AbsorptionProvider::line_model)
      .def_static("table", &AbsorptionProvider::table, py::arg("frequency_hz"),
                  py::arg("k_per_m"))
      .def_static("from_csv", &AbsorptionProvider::from_csv, py::arg("path"))
      .def("coefficient", &AbsorptionProvider::coefficient, py::arg("frequency_hz"),
           py::arg("mixing_ratio"));

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("frequency_hz", &SystemParams::frequency_hz)
      .def_readwrite("tx_power_w", &SystemParams::tx_power_w)
      .def_readwrite("bs_tx", &SystemParams::bs_tx)
      .def_readwrite("bs_rx", &SystemParams::bs_rx)
      .def_readwrite("user_rx", &SystemParams::user_rx)
      .def_readwrite("distance_m", &SystemParams::distance_m)
      .def_readwrite("total_time_s", &SystemParams::total_time_s)
      .def_readwrite("noise_power_w", &SystemParams::noise_power_w)
      .def_readwrite("initial_misalignment_m", &SystemParams::initial_misalignment_m)
      .def_readwrite("misalignment_decay_per_s", &SystemParams::misalignment_decay_per_s)
      .def_readwrite("atmosphere", &SystemParams::atmosphere)
      .def_readwrite("harvest", &SystemParams::harvest)
      .def_readwrite("fading", &SystemParams::fading)
      .def_readwrite("absorption", &SystemParams::absorption)
      .def_readwrite("split_before_harvest", &SystemParams::split_before_harvest);

  py::class_<ChannelSnapshot>(m, "ChannelSnapshot")
      .def_readonly("g_bs_t", &ChannelSnapshot::g_bs_t)
      .def_readonly("g_bs_r", &ChannelSnapshot::g_bs_r)
      .def_readonly("g_r", &ChannelSnapshot::g_r)
      .def_readonly("pl", &ChannelSnapshot::pl)
      .def_readonly("region", &ChannelSnapshot::region)
      .def_readonly("h_abs", &ChannelSnapshot::h_abs)
      .def_readonly("s0", &ChannelSnapshot::s0)
      .def_readonly("r_ebw_m", &ChannelSnapshot::r_ebw_m)
      .def_readonly("h_mis", &ChannelSnapshot::h_mis)
      .def_readonly("hf_sq", &ChannelSnapshot::hf_sq)
      .def_readonly("eta_b", &ChannelSnapshot::eta_b)
      .def_readonly("xi1", &ChannelSnapshot::xi1)
      .def_readonly("xi2", &ChannelSnapshot::xi2)
      .def_readonly("c1", &ChannelSnapshot::c1)
      .def_readonly("c2", &ChannelSnapshot::c2)
      .def_readonly("c3", &ChannelSnapshot::c3);

  py::class_<FeasibleInterval>(m, "FeasibleInterval")
      .def_readonly("lo", &FeasibleInterval::lo)
      .def_readonly("hi", &FeasibleInterval::hi)
      .def_readonly("peak", &FeasibleInterval::peak)
      .def_readonly("empty", &FeasibleInterval::empty);

  py::class_<OptimizationOutcome>(m, "OptimizationOutcome")
      .def_readonly("objective", &OptimizationOutcome::objective)
      .def_readonly("rho0", &OptimizationOutcome::rho0)
      .def_readonly("rho1", &OptimizationOutcome::rho1)
      .def_readonly("interval", &OptimizationOutcome::interval)
      .def_readonly("evaluations", &OptimizationOutcome::evaluations)
      .def_readonly("status", &OptimizationOutcome::status)
      .def("__repr__", [](const OptimizationOutcome& o) {
        return "OptimizationOutcome(status=" + std::string(to_string(o.status)) +
               ", objective=" + std::to_string(o.objective) + ", rho0=" +
               std::to_string(o.rho0) + ", rho1=" + std::to_string(o.rho1) + ")";
      });

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("bisection_tol", &SolverConfig::bisection_tol)
      .def_readwrite("grid_step", &SolverConfig::grid_step)
      .def_readwrite("max_iterations", &SolverConfig::max_iterations);

  py::class_<LinkObjectives>(m, "LinkObjectives")
      .def(py::init<const SystemParams&>(), py::arg("params"))
      .def("received_power_at", &LinkObjectives::received_power_at, py::arg("rho0"))
      .def("energy", &LinkObjectives::energy, py::arg("rho0"), py::arg("rho1"))
      .def("rate", &LinkObjectives::rate, py::arg("rho0"), py::arg("rho1"))
      .def("dE_drho0", &LinkObjectives::dE_drho0)
      .def("dE_drho1", &LinkObjectives::dE_drho1)
      .def("dR_drho0", &LinkObjectives::dR_drho0)
      .def("dR_drho1", &LinkObjectives::dR_drho1)
      .def("channel", &LinkObjectives::channel, py::return_value_policy::copy);

  m.def("table1", &table1_params, "Default scenario parameters");
  m.def("wavelength_m", &wavelength_m, py::arg("params"));
  m.def("snapshot", &snapshot, py::arg("params"), py::arg("t_sense_s"));
  m.def("received_power", &received_power, py::arg("params"), py::arg("t_sense_s"));
  m.def("reflected_power", &reflected_power, py::arg("params"), py::arg("t_sense_s"));
  m.def("capacity", &capacity, py::arg("p_r_w"), py::arg("n_r_w"));
  m.def(
      "harvested_energy",
      [](const SystemParams& p, double rho0, double rho1) {
        return harvested_energy(p, AllocationPoint{rho0, rho1});
      },
      py::arg("params"), py::arg("rho0"), py::arg("rho1"));
  m.def(
      "achievable_rate",
      [](const SystemParams& p, double rho0, double rho1) {
        return achievable_rate(p, AllocationPoint{rho0, rho1});
      },
      py::arg("params"), py::arg("rho0"), py::arg("rho1"));

  m.def("maximize_energy_subject_to_rate",
        [](const SystemParams& p, double r_eps, const SolverConfig& cfg) {
          LinkObjectives obj(p);
          return maximize_energy_subject_to_rate(obj, r_eps, cfg);
        },
        py::arg("params"), py::arg("r_eps"), py::arg("config") = SolverConfig{});
  m.def("maximize_rate_subject_to_energy",
        [](const SystemParams& p, double e_eps, const SolverConfig& cfg) {
          LinkObjectives obj(p);
          return maximize_rate_subject_to_energy(obj, e_eps, cfg);
        },
        py::arg("params"), py::arg("e_eps"), py::arg("config") = SolverConfig{});
  m.def("grid_oracle_p1",
        [](const SystemParams& p, double r_eps, double step) {
          LinkObjectives obj(p);
          return grid_oracle_p1(obj, r_eps, step);
        },
        py::arg("params"), py::arg("r_eps"), py::arg("step") = 0.01);
  m.def("grid_oracle_p2",
        [](const SystemParams& p, double e_eps, double step) {
          LinkObjectives obj(p);
          return grid_oracle_p2(obj, e_eps, step);
        },
        py::arg("params"), py::arg("e_eps"), py::arg("step") = 0.01);

  m.def(
      "sweep_csv",
      [](const SystemParams& params, const std::string& variable, double from, double to,
         int steps, double rho0, double rho1) {
        ScenarioConfig cfg;
        cfg.params = params;
        SweepSpec spec;
        if (variable == "sensing_time") spec.variable = SweepSpec::Variable::SensingTime;
        else if (variable == "rho0") spec.variable = SweepSpec::Variable::Rho0;
        else if (variable == "distance") spec.variable = SweepSpec::Variable::Distance;
        else if (variable == "frequency") spec.variable = SweepSpec::Variable::Frequency;
        else if (variable == "tx_aperture") spec.variable = SweepSpec::Variable::TxAperture;
        else throw std::invalid_argument("unknown sweep variable: " + variable);
        spec.from = from;
        spec.to = to;
        spec.steps = steps;
        spec.rho0 = rho0;
        spec.rho1 = rho1;
        cfg.sweep = spec;
        return to_csv(run_sweep(cfg));
      },
      py::arg("params"), py::arg("variable"), py::arg("from_"), py::arg("to"),
      py::arg("steps") = 200, py::arg("rho0") = 0.4, py::arg("rho1") = 0.5,
      "Run a sweep and return the CSV text");

  m.def("parse_config",
        [](const std::string& json_text) { return parse_config(json_text).params; },
        py::arg("json_text"), "Parse a JSON scenario and return its SystemParams");
  m.def("load_config",
        [](const std::string& path) { return load_config(path).params; },
        py::arg("path"), "Load a JSON scenario file and return its SystemParams");
}
