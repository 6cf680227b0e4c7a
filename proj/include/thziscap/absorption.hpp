#pragma once

#include <string>
#include <vector>

namespace thziscap {

/// Validity window of the molecular absorption model.
inline constexpr double kAbsorptionBandLoHz = 100e9;
inline constexpr double kAbsorptionBandHiHz = 450e9;

struct Atmosphere {
  double relative_humidity = 0.5;  // fraction in [0, 1]
  double temperature_c = 25.0;
  double pressure_pa = 101325.0;
};

void validate(const Atmosphere& atm);

/// Saturation vapor pressure over water (Buck equation), Pa.
double saturation_pressure_pa(double temperature_c);

/// Volume mixing ratio of water vapor, RH * p_sat(T) / p.
double mixing_ratio(const Atmosphere& atm);

/// Molecular absorption coefficient k(f) in 1/m.
///
/// Two providers:
///  - LineModel: six pressure-broadened water/oxygen lines plus a
///    continuum polynomial, valid over 100-450 GHz.
///  - Table: user-supplied (frequency, k) knots with linear
///    interpolation, e.g. measured or ITU data loaded from CSV.
class AbsorptionProvider {
 public:
  static AbsorptionProvider line_model();
  static AbsorptionProvider table(std::vector<double> frequency_hz,
                                  std::vector<double> k_per_m);
  /// Two-column CSV with mandatory header `frequency_hz,k_per_m` and
  /// strictly increasing frequencies.
  static AbsorptionProvider from_csv(const std::string& path);

  /// k(f) at mixing ratio mu. Throws std::out_of_range outside the
  /// 100-450 GHz validity window.
  double coefficient(double frequency_hz, double mixing_ratio) const;

  /// Same as coefficient() but clamps out-of-band frequencies to the
  /// nearest band edge instead of throwing; sets *clamped when given.
  double coefficient_clamped(double frequency_hz, double mixing_ratio,
                             bool* clamped = nullptr) const;

  bool is_table() const { return kind_ == Kind::Table; }

 private:
  enum class Kind { LineModel, Table };
  Kind kind_ = Kind::LineModel;
  std::vector<double> freq_hz_;
  std::vector<double> k_per_m_;

  double evaluate(double frequency_hz, double mixing_ratio) const;
};

/// Beer-Lambert transmittance exp(-k(f) * d).
double molecular_loss(double frequency_hz, double distance_m, double mixing_ratio,
                      const AbsorptionProvider& provider);

}  // namespace thziscap
