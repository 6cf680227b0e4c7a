#include "thziscap/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace thziscap {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void reject_unknown_keys(const json& obj, const std::string& scope,
                         const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key()))
      fail("unknown key '" + (scope.empty() ? item.key() : scope + "." + item.key()) + "'");
  }
}

double get_number(const json& obj, const std::string& scope, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(scope + "." + key + ": expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& scope, const std::string& key,
            int fallback) {
  const double v = get_number(obj, scope, key, static_cast<double>(fallback));
  if (!(v >= -2147483648.0 && v <= 2147483647.0) || v != std::floor(v))
    fail(scope + "." + key + ": expected an integer");
  return static_cast<int>(v);
}

std::string get_string(const json& obj, const std::string& scope, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(scope + "." + key + ": expected a string");
  return v.get<std::string>();
}

void parse_antenna(const json& obj, const std::string& scope, AntennaSpec& spec) {
  if (!obj.is_object()) fail(scope + ": expected an object");
  reject_unknown_keys(obj, scope, {"diameter_m", "efficiency"});
  spec.diameter_m = get_number(obj, scope, "diameter_m", spec.diameter_m);
  spec.efficiency = get_number(obj, scope, "efficiency", spec.efficiency);
  try {
    validate(spec);
  } catch (const std::exception& e) {
    fail(scope + ": " + e.what());
  }
}

void parse_params(const json& obj, SystemParams& p) {
  static const std::set<std::string> keys = {
      "frequency_ghz", "tx_power_w",   "distance_m",          "total_time_s",
      "noise_dbm",     "bs_tx",        "bs_rx",               "user_rx",
      "atmosphere",    "harvest",      "fading",              "absorption",
      "initial_misalignment_m",        "decay_rate_per_s",    "split_before_harvest"};
  reject_unknown_keys(obj, "params", keys);

  p.frequency_hz = get_number(obj, "params", "frequency_ghz", p.frequency_hz / 1e9) * 1e9;
  p.tx_power_w = get_number(obj, "params", "tx_power_w", p.tx_power_w);
  p.distance_m = get_number(obj, "params", "distance_m", p.distance_m);
  p.total_time_s = get_number(obj, "params", "total_time_s", p.total_time_s);
  if (obj.contains("noise_dbm"))
    p.noise_power_w = dbm_to_watts(get_number(obj, "params", "noise_dbm", 0.0));
  p.initial_misalignment_m =
      get_number(obj, "params", "initial_misalignment_m", p.initial_misalignment_m);
  p.misalignment_decay_per_s =
      get_number(obj, "params", "decay_rate_per_s", p.misalignment_decay_per_s);

  if (obj.contains("bs_tx")) parse_antenna(obj.at("bs_tx"), "params.bs_tx", p.bs_tx);
  // The base-station receive antenna mirrors the transmit antenna unless
  // set explicitly.
  if (obj.contains("bs_tx") && !obj.contains("bs_rx")) p.bs_rx = p.bs_tx;
  if (obj.contains("bs_rx")) parse_antenna(obj.at("bs_rx"), "params.bs_rx", p.bs_rx);
  if (obj.contains("user_rx")) parse_antenna(obj.at("user_rx"), "params.user_rx", p.user_rx);

  if (obj.contains("atmosphere")) {
    const json& a = obj.at("atmosphere");
    if (!a.is_object()) fail("params.atmosphere: expected an object");
    reject_unknown_keys(a, "params.atmosphere",
                        {"relative_humidity", "temperature_c", "pressure_pa"});
    p.atmosphere.relative_humidity = get_number(a, "params.atmosphere", "relative_humidity",
                                                p.atmosphere.relative_humidity);
    p.atmosphere.temperature_c =
        get_number(a, "params.atmosphere", "temperature_c", p.atmosphere.temperature_c);
    p.atmosphere.pressure_pa =
        get_number(a, "params.atmosphere", "pressure_pa", p.atmosphere.pressure_pa);
  }

  if (obj.contains("harvest")) {
    const json& h = obj.at("harvest");
    if (!h.is_object()) fail("params.harvest: expected an object");
    reject_unknown_keys(h, "params.harvest", {"model", "efficiency", "a0", "b0", "c0"});
    const std::string model = get_string(h, "params.harvest", "model", "nonlinear");
    try {
      if (model == "linear") {
        p.harvest = EnergyHarvestModel::linear(
            get_number(h, "params.harvest", "efficiency", 0.5));
      } else if (model == "nonlinear") {
        const EnergyHarvestModel ref = EnergyHarvestModel::reference_fit();
        p.harvest = EnergyHarvestModel::nonlinear(
            get_number(h, "params.harvest", "a0", ref.a0),
            get_number(h, "params.harvest", "b0", ref.b0),
            get_number(h, "params.harvest", "c0", ref.c0));
      } else {
        fail("params.harvest.model: must be 'linear' or 'nonlinear'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(std::string("params.harvest: ") + e.what());
    }
  }

  if (obj.contains("fading")) {
    const json& f = obj.at("fading");
    if (!f.is_object()) fail("params.fading: expected an object");
    reject_unknown_keys(f, "params.fading", {"mode", "rician_k", "samples", "seed"});
    const std::string mode = get_string(f, "params.fading", "mode", "mean");
    if (mode == "mean") {
      p.fading.mode = FadingModel::Mode::DeterministicMean;
    } else if (mode == "mc") {
      p.fading.mode = FadingModel::Mode::MonteCarlo;
    } else {
      fail("params.fading.mode: must be 'mean' or 'mc'");
    }
    p.fading.rician_k = get_number(f, "params.fading", "rician_k", p.fading.rician_k);
    p.fading.sample_count = get_int(f, "params.fading", "samples", p.fading.sample_count);
    const double seed =
        get_number(f, "params.fading", "seed", static_cast<double>(p.fading.seed));
    if (!(seed >= 0.0 && seed <= 18446744073709549568.0))
      fail("params.fading.seed: out of range");
    p.fading.seed = static_cast<std::uint64_t>(seed);
  }

  if (obj.contains("absorption")) {
    const json& a = obj.at("absorption");
    if (!a.is_object()) fail("params.absorption: expected an object");
    reject_unknown_keys(a, "params.absorption", {"provider", "csv_path"});
    const std::string provider = get_string(a, "params.absorption", "provider", "line");
    if (provider == "line") {
      p.absorption = AbsorptionProvider::line_model();
    } else if (provider == "table") {
      const std::string path = get_string(a, "params.absorption", "csv_path", "");
      if (path.empty()) fail("params.absorption.csv_path: required for the table provider");
      try {
        p.absorption = AbsorptionProvider::from_csv(path);
      } catch (const std::exception& e) {
        fail(std::string("params.absorption: ") + e.what());
      }
    } else {
      fail("params.absorption.provider: must be 'line' or 'table'");
    }
  }

  if (obj.contains("split_before_harvest")) {
    const json& v = obj.at("split_before_harvest");
    if (!v.is_boolean()) fail("params.split_before_harvest: expected a boolean");
    p.split_before_harvest = v.get<bool>();
  }

  try {
    validate(p);
  } catch (const std::exception& e) {
    fail(std::string("params: ") + e.what());
  }
}

void parse_solver(const json& obj, SolverConfig& s) {
  reject_unknown_keys(obj, "solver", {"bisection_tol", "grid_step", "max_iterations"});
  s.bisection_tol = get_number(obj, "solver", "bisection_tol", s.bisection_tol);
  s.grid_step = get_number(obj, "solver", "grid_step", s.grid_step);
  s.max_iterations = get_int(obj, "solver", "max_iterations", s.max_iterations);
  try {
    validate(s);
  } catch (const std::exception& e) {
    fail(std::string("solver: ") + e.what());
  }
}

SweepSpec::Variable parse_variable(const std::string& name) {
  if (name == "sensing_time") return SweepSpec::Variable::SensingTime;
  if (name == "rho0") return SweepSpec::Variable::Rho0;
  if (name == "distance") return SweepSpec::Variable::Distance;
  if (name == "frequency") return SweepSpec::Variable::Frequency;
  if (name == "tx_aperture") return SweepSpec::Variable::TxAperture;
  fail("sweep.variable: unknown variable '" + name +
       "' (expected sensing_time|rho0|distance|frequency|tx_aperture)");
}

void parse_sweep(const json& obj, SweepSpec& s) {
  reject_unknown_keys(obj, "sweep", {"variable", "from", "to", "steps", "rho0", "rho1"});
  s.variable = parse_variable(get_string(obj, "sweep", "variable", "sensing_time"));
  s.from = get_number(obj, "sweep", "from", s.from);
  s.to = get_number(obj, "sweep", "to", s.to);
  s.steps = get_int(obj, "sweep", "steps", s.steps);
  s.rho0 = get_number(obj, "sweep", "rho0", s.rho0);
  s.rho1 = get_number(obj, "sweep", "rho1", s.rho1);
  if (s.steps < 2) fail("sweep.steps: must be >= 2");
  if (!(s.from <= s.to)) fail("sweep.from: must be <= sweep.to");
  if (s.rho0 < 0.0 || s.rho0 > 1.0) fail("sweep.rho0: must be in [0, 1]");
  if (s.rho1 < 0.0 || s.rho1 > 1.0) fail("sweep.rho1: must be in [0, 1]");
}

}  // namespace

const char* to_string(SweepSpec::Variable v) {
  switch (v) {
    case SweepSpec::Variable::SensingTime: return "sensing_time";
    case SweepSpec::Variable::Rho0: return "rho0";
    case SweepSpec::Variable::Distance: return "distance";
    case SweepSpec::Variable::Frequency: return "frequency";
    case SweepSpec::Variable::TxAperture: return "tx_aperture";
  }
  return "unknown";
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

std::vector<std::string> preset_names() { return {"table1"}; }

SystemParams preset(const std::string& name) {
  if (name == "table1") return table1_params();
  fail("unknown preset '" + name + "' (available: table1)");
}

ScenarioConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text.empty() ? "{}" : json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) fail("config root must be a JSON object");
  reject_unknown_keys(root, "", {"preset", "params", "solver", "sweep", "output_path"});

  ScenarioConfig cfg{};
  cfg.params = preset(get_string(root, "", "preset", "table1"));
  if (root.contains("params")) {
    if (!root.at("params").is_object()) fail("params: expected an object");
    parse_params(root.at("params"), cfg.params);
  }
  if (root.contains("solver")) {
    if (!root.at("solver").is_object()) fail("solver: expected an object");
    parse_solver(root.at("solver"), cfg.solver);
  }
  if (root.contains("sweep")) {
    if (!root.at("sweep").is_object()) fail("sweep: expected an object");
    SweepSpec s{};
    parse_sweep(root.at("sweep"), s);
    cfg.sweep = s;
  }
  cfg.output_path = get_string(root, "", "output_path", "");
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace thziscap
