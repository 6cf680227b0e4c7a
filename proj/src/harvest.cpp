#include "thziscap/harvest.hpp"

#include <limits>
#include <stdexcept>

namespace thziscap {

EnergyHarvestModel EnergyHarvestModel::linear(double eta) {
  EnergyHarvestModel m;
  m.kind = Kind::Linear;
  m.eta = eta;
  validate(m);
  return m;
}

EnergyHarvestModel EnergyHarvestModel::nonlinear(double a0, double b0, double c0) {
  EnergyHarvestModel m;
  m.kind = Kind::Nonlinear;
  m.a0 = a0;
  m.b0 = b0;
  m.c0 = c0;
  validate(m);
  return m;
}

EnergyHarvestModel EnergyHarvestModel::reference_fit() {
  return nonlinear(0.3929, 0.01675, 0.04401);
}

void validate(const EnergyHarvestModel& model) {
  if (model.kind == EnergyHarvestModel::Kind::Linear) {
    if (!(model.eta > 0.0 && model.eta <= 1.0))
      throw std::domain_error("linear harvest efficiency must be in (0, 1]");
    return;
  }
  if (!(model.c0 > 0.0)) throw std::domain_error("harvest c0 must be > 0");
  if (!(model.b0 >= 0.0)) throw std::domain_error("harvest b0 must be >= 0");
  if (!(model.a0 > model.b0 / model.c0))
    throw std::domain_error("harvest fit must saturate above zero (a0 > b0/c0)");
}

double dc_output(double p_rf_w, const EnergyHarvestModel& model) {
  if (p_rf_w < 0.0) throw std::domain_error("RF input power must be >= 0");
  if (model.kind == EnergyHarvestModel::Kind::Linear) return model.eta * p_rf_w;
  // Factored form of (a0*x + b0)/(x + c0) - b0/c0; no cancellation for
  // inputs far below b0.
  return p_rf_w * (model.a0 * model.c0 - model.b0) / (model.c0 * (p_rf_w + model.c0));
}

double dc_output_slope(double p_rf_w, const EnergyHarvestModel& model) {
  if (p_rf_w < 0.0) throw std::domain_error("RF input power must be >= 0");
  if (model.kind == EnergyHarvestModel::Kind::Linear) return model.eta;
  const double den = p_rf_w + model.c0;
  return (model.a0 * model.c0 - model.b0) / (den * den);
}

double conversion_efficiency(double p_rf_w, const EnergyHarvestModel& model) {
  if (model.kind == EnergyHarvestModel::Kind::Linear) {
    if (p_rf_w <= 0.0) throw std::domain_error("conversion efficiency needs p_rf > 0");
    return model.eta;
  }
  if (p_rf_w <= 0.0) throw std::domain_error("conversion efficiency needs p_rf > 0");
  return dc_output(p_rf_w, model) / p_rf_w;
}

double saturation_limit(const EnergyHarvestModel& model) {
  if (model.kind == EnergyHarvestModel::Kind::Linear)
    return std::numeric_limits<double>::infinity();
  return model.a0 - model.b0 / model.c0;
}

}  // namespace thziscap
