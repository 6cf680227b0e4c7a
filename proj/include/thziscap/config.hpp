#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thziscap/link.hpp"
#include "thziscap/optimizer.hpp"

namespace thziscap {

/// Configuration problems (parse errors, unknown keys, bad values).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  enum class Variable { SensingTime, Rho0, Distance, Frequency, TxAperture };
  Variable variable = Variable::SensingTime;
  double from = 0.0;   // unit of the swept variable (s, -, m, GHz, m)
  double to = 100.0;
  int steps = 200;
  double rho0 = 0.4;   // fixed split used where the sweep does not set it
  double rho1 = 0.5;
};

const char* to_string(SweepSpec::Variable v);

struct ScenarioConfig {
  SystemParams params{};
  SolverConfig solver{};
  std::optional<SweepSpec> sweep{};
  std::string output_path{};
};

std::vector<std::string> preset_names();
SystemParams preset(const std::string& name);

/// Parse a JSON scenario. Unknown keys are rejected; units are
/// converted on load (GHz -> Hz, dBm -> W). Fields omitted fall back to
/// the named preset (default table1).
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

/// dBm -> W.
double dbm_to_watts(double dbm);

}  // namespace thziscap
