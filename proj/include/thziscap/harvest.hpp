#pragma once

namespace thziscap {

/// RF-to-DC conversion model. Linear applies a fixed efficiency;
/// Nonlinear is the rational saturation fit
///   f(x) = (a0*x + b0)/(x + c0) - b0/c0,
/// which is zero at zero input and bounded by a0 - b0/c0.
struct EnergyHarvestModel {
  enum class Kind { Linear, Nonlinear };
  Kind kind = Kind::Nonlinear;
  double eta = 0.5;  // Linear only
  double a0 = 0.0, b0 = 0.0, c0 = 0.0;

  static EnergyHarvestModel linear(double eta);
  static EnergyHarvestModel nonlinear(double a0, double b0, double c0);
  /// Curve-fit constants a0=0.3929, b0=0.01675, c0=0.04401.
  static EnergyHarvestModel reference_fit();
};

void validate(const EnergyHarvestModel& model);

/// DC output power for RF input p_rf (W). Monotone nondecreasing.
double dc_output(double p_rf_w, const EnergyHarvestModel& model);

/// d(dc_output)/d(p_rf).
double dc_output_slope(double p_rf_w, const EnergyHarvestModel& model);

/// Conversion efficiency dc_output(p)/p; requires p_rf > 0.
double conversion_efficiency(double p_rf_w, const EnergyHarvestModel& model);

/// Upper bound of dc_output: a0 - b0/c0 (Nonlinear), +inf (Linear).
double saturation_limit(const EnergyHarvestModel& model);

}  // namespace thziscap
