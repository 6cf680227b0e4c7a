#include "thziscap/absorption.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace thziscap {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

// Six-line fit of the 100-450 GHz molecular absorption coefficient.
// Each line is a pressure-broadened Lorentzian in wavenumber
//   y_i = a*mu*(b*mu + c) / ((d*mu + e)^2 + (f/100c - p)^2)
// centered on the 118.75 GHz oxygen line and the 183.31, 325.15,
// 380.20, 439.15 and 448.00 GHz water lines, plus a continuum term.
// Strengths are calibrated against sea-level attenuation magnitudes;
// substitute a Table provider for measured data.
struct Line {
  double center_cm;  // line center as f/(100*c), cm^-1
  double a, b, c, d, e;
};

constexpr Line kLines[] = {
    {3.961077, 9.173e-3, 0.1303, 0.0294, 0.4093, 0.0925},
    {6.114590, 0.1974, 0.1303, 0.0294, 0.4093, 0.0925},
    {10.845940, 0.2205, 0.1303, 0.0294, 0.4093, 0.0925},
    {12.682025, 2.014, 0.1702, 0.0303, 0.5370, 0.0956},
    {14.648472, 1.451, 0.1702, 0.0303, 0.5370, 0.0956},
    {14.943632, 1.935, 0.1702, 0.0303, 0.5370, 0.0956},
};

constexpr double kSpeedOfLightLocal = 299792458.0;

double line_model_k(double frequency_hz, double mu) {
  const double nu_cm = frequency_hz / (100.0 * kSpeedOfLightLocal);
  double k = (mu / 0.0157) * (2.0e-4 + 0.915e-112 * std::pow(frequency_hz, 9.42));
  for (const Line& l : kLines) {
    const double num = l.a * mu * (l.b * mu + l.c);
    const double half_width = l.d * mu + l.e;
    const double det = nu_cm - l.center_cm;
    k += num / (half_width * half_width + det * det);
  }
  return k;
}

}  // namespace

void validate(const Atmosphere& atm) {
  require(atm.relative_humidity >= 0.0 && atm.relative_humidity <= 1.0,
          "relative humidity must be in [0, 1]");
  require(atm.pressure_pa > 0.0, "pressure must be > 0");
}

double saturation_pressure_pa(double temperature_c) {
  // Buck (1996) over liquid water.
  return 611.21 * std::exp((18.678 - temperature_c / 234.5) * temperature_c /
                           (257.14 + temperature_c));
}

double mixing_ratio(const Atmosphere& atm) {
  validate(atm);
  return atm.relative_humidity * saturation_pressure_pa(atm.temperature_c) / atm.pressure_pa;
}

AbsorptionProvider AbsorptionProvider::line_model() { return AbsorptionProvider{}; }

AbsorptionProvider AbsorptionProvider::table(std::vector<double> frequency_hz,
                                             std::vector<double> k_per_m) {
  if (frequency_hz.size() != k_per_m.size() || frequency_hz.size() < 2)
    throw std::invalid_argument("absorption table needs >= 2 matching knots");
  for (std::size_t i = 0; i < frequency_hz.size(); ++i) {
    if (k_per_m[i] < 0.0) throw std::invalid_argument("absorption table: k must be >= 0");
    if (i > 0 && frequency_hz[i] <= frequency_hz[i - 1])
      throw std::invalid_argument("absorption table: frequencies must be strictly increasing");
  }
  AbsorptionProvider p;
  p.kind_ = Kind::Table;
  p.freq_hz_ = std::move(frequency_hz);
  p.k_per_m_ = std::move(k_per_m);
  return p;
}

AbsorptionProvider AbsorptionProvider::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open absorption table: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("absorption table is empty: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "frequency_hz,k_per_m")
    throw std::invalid_argument("absorption table must start with header 'frequency_hz,k_per_m'");
  std::vector<double> f, k;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b))
      throw std::invalid_argument("absorption table: bad row at line " + std::to_string(lineno));
    f.push_back(std::stod(a));
    k.push_back(std::stod(b));
  }
  return table(std::move(f), std::move(k));
}

double AbsorptionProvider::evaluate(double frequency_hz, double mu) const {
  if (kind_ == Kind::LineModel) {
    require(mu >= 0.0, "mixing ratio must be >= 0");
    return line_model_k(frequency_hz, mu);
  }
  // Linear interpolation; ends are held constant beyond the knots.
  if (frequency_hz <= freq_hz_.front()) return k_per_m_.front();
  if (frequency_hz >= freq_hz_.back()) return k_per_m_.back();
  const auto it = std::upper_bound(freq_hz_.begin(), freq_hz_.end(), frequency_hz);
  const std::size_t i = static_cast<std::size_t>(it - freq_hz_.begin());
  const double t = (frequency_hz - freq_hz_[i - 1]) / (freq_hz_[i] - freq_hz_[i - 1]);
  return k_per_m_[i - 1] + t * (k_per_m_[i] - k_per_m_[i - 1]);
}

double AbsorptionProvider::coefficient(double frequency_hz, double mu) const {
  if (frequency_hz < kAbsorptionBandLoHz || frequency_hz > kAbsorptionBandHiHz)
    throw std::out_of_range("absorption model is valid for 100-450 GHz only");
  return evaluate(frequency_hz, mu);
}

double AbsorptionProvider::coefficient_clamped(double frequency_hz, double mu,
                                               bool* clamped) const {
  double f = frequency_hz;
  bool c = false;
  if (f < kAbsorptionBandLoHz) {
    f = kAbsorptionBandLoHz;
    c = true;
  } else if (f > kAbsorptionBandHiHz) {
    f = kAbsorptionBandHiHz;
    c = true;
  }
  if (clamped) *clamped = c;
  return evaluate(f, mu);
}

double molecular_loss(double frequency_hz, double distance_m, double mu,
                      const AbsorptionProvider& provider) {
  require(distance_m >= 0.0, "distance must be >= 0");
  return std::exp(-provider.coefficient(frequency_hz, mu) * distance_m);
}

}  // namespace thziscap
