#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "thziscap/config.hpp"

namespace thziscap {

struct SweepRecord {
  double value = 0.0;      // swept variable, in its config unit
  double p_r_w = 0.0;
  double p_rr_w = 0.0;
  double e_ws = 0.0;
  double r_bits_per_hz = 0.0;
  double h_mis = 0.0;
  RegionClass region = RegionClass::FarField;
  std::string warnings;    // semicolon-joined tokens, usually empty
};

/// Evaluate the configured sweep. Deterministic: identical configs
/// produce identical records (and byte-identical CSV).
std::vector<SweepRecord> run_sweep(const ScenarioConfig& cfg);

/// Fixed columns: value,p_r_w,p_rr_w,e_ws,r_bits_per_hz,h_mis,region,warnings.
/// Doubles are written with enough digits to round-trip exactly.
void write_csv(const std::vector<SweepRecord>& records, std::ostream& out);
std::string to_csv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_csv(std::istream& in);

}  // namespace thziscap
