#include "thziscap/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace thziscap {

namespace {

// Shortest-exact formatting so parsed CSV reproduces the doubles.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SweepRecord evaluate_point(const SystemParams& base, const SweepSpec& spec, double value) {
  SystemParams p = base;
  double rho0 = spec.rho0;

  switch (spec.variable) {
    case SweepSpec::Variable::SensingTime:
      rho0 = std::clamp(value / p.total_time_s, 0.0, 1.0);
      break;
    case SweepSpec::Variable::Rho0:
      rho0 = value;
      break;
    case SweepSpec::Variable::Distance:
      p.distance_m = value;
      break;
    case SweepSpec::Variable::Frequency:
      p.frequency_hz = value * 1e9;
      break;
    case SweepSpec::Variable::TxAperture: {
      // Both ends scale with the transmit aperture, keeping the
      // configured receiver-to-transmitter diameter ratio.
      const double ratio = base.user_rx.diameter_m / base.bs_tx.diameter_m;
      p.bs_tx.diameter_m = value;
      p.bs_rx.diameter_m = value;
      p.user_rx.diameter_m = value * ratio;
      break;
    }
  }
  const double t_sense = rho0 * p.total_time_s;

  SweepRecord rec{};
  rec.value = value;
  const ChannelSnapshot snap = snapshot(p, t_sense);
  rec.h_mis = snap.h_mis;
  rec.region = snap.region;

  std::string warnings;
  if (snap.absorption_clamped) warnings = "k_clamped_to_band_edge";
  if (snap.region != RegionClass::FarField && snap.region != RegionClass::FresnelZone) {
    if (!warnings.empty()) warnings += ";";
    warnings += "degenerate_region";
  }

  rec.p_r_w = received_power(p, t_sense);
  rec.p_rr_w = reflected_power(p, t_sense);

  LinkObjectives obj(p);
  rec.e_ws = obj.energy(rho0, spec.rho1);
  rec.r_bits_per_hz = obj.rate(rho0, spec.rho1);
  rec.warnings = warnings;
  return rec;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const ScenarioConfig& cfg) {
  if (!cfg.sweep) throw std::invalid_argument("config has no sweep section");
  const SweepSpec& spec = *cfg.sweep;
  std::vector<SweepRecord> out;
  out.reserve(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(spec.steps - 1);
    const double value = spec.from + t * (spec.to - spec.from);
    out.push_back(evaluate_point(cfg.params, spec, value));
  }
  return out;
}

void write_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
  out << "value,p_r_w,p_rr_w,e_ws,r_bits_per_hz,h_mis,region,warnings\n";
  for (const SweepRecord& r : records) {
    out << fmt(r.value) << ',' << fmt(r.p_r_w) << ',' << fmt(r.p_rr_w) << ','
        << fmt(r.e_ws) << ',' << fmt(r.r_bits_per_hz) << ',' << fmt(r.h_mis) << ','
        << to_string(r.region) << ',' << r.warnings << '\n';
  }
}

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  write_csv(records, out);
  return out.str();
}

std::vector<SweepRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  std::vector<SweepRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    SweepRecord r{};
    auto next = [&]() {
      if (!std::getline(row, field, ',')) throw std::invalid_argument("short CSV row");
      return field;
    };
    r.value = std::stod(next());
    r.p_r_w = std::stod(next());
    r.p_rr_w = std::stod(next());
    r.e_ws = std::stod(next());
    r.r_bits_per_hz = std::stod(next());
    r.h_mis = std::stod(next());
    const std::string region = next();
    if (region == "reactive") r.region = RegionClass::Reactive;
    else if (region == "fresnel_zone") r.region = RegionClass::FresnelZone;
    else if (region == "far_field") r.region = RegionClass::FarField;
    else if (region == "below_gain_floor") r.region = RegionClass::BelowGainFloor;
    else throw std::invalid_argument("unknown region tag: " + region);
    std::getline(row, r.warnings);
    out.push_back(r);
  }
  return out;
}

}  // namespace thziscap
