#pragma once

#include <vector>

#include "thziscap/absorption.hpp"
#include "thziscap/harvest.hpp"
#include "thziscap/propagation.hpp"

namespace thziscap {

/// Complete scenario description. Distances and powers are SI; noise is
/// stored in watts (config files use dBm and convert on load).
struct SystemParams {
  double frequency_hz = 300e9;
  double tx_power_w = 10.0;
  AntennaSpec bs_tx{0.1, 0.2};
  AntennaSpec bs_rx{0.1, 0.2};
  AntennaSpec user_rx{0.2, 0.2};
  double distance_m = 20.0;
  double total_time_s = 100.0;
  double noise_power_w = 1e-8;
  double initial_misalignment_m = 0.8;   // l0
  double misalignment_decay_per_s = 0.1; // alpha
  Atmosphere atmosphere{};
  EnergyHarvestModel harvest = EnergyHarvestModel::reference_fit();
  FadingModel fading{};
  AbsorptionProvider absorption = AbsorptionProvider::line_model();
  /// Exploration variant: apply the harvest nonlinearity to the split
  /// power f(rho1*P_r) instead of rho1*f(P_r). Off by default.
  bool split_before_harvest = false;
};

/// Named default scenario.
SystemParams table1_params();

void validate(const SystemParams& params);

double wavelength_m(const SystemParams& params);

/// Time/power split: rho0 of the frame goes to sensing, rho1 of the
/// received power to harvesting.
struct AllocationPoint {
  double rho0 = 0.0;
  double rho1 = 0.0;
};

void validate(const AllocationPoint& alloc);

/// Every split-independent channel coefficient, computed once per
/// (params, sensing time). The composite constants fold the full
/// coefficient chain at perfect alignment:
///   c2 = P_t*G_bs_t*G_r*PL(d)*h_abs*|h_f|^2*eta_b*S0^2
///   c1 = xi2 = c2 / N_r,   c3 = eta*c2,   xi1 = eta*T*c2
struct ChannelSnapshot {
  double g_bs_t = 0, g_bs_r = 0, g_r = 0;
  double pl = 0;
  RegionClass region = RegionClass::FarField;
  double pl_round_trip = 0;
  RegionClass region_round_trip = RegionClass::FarField;
  double h_abs = 1;            // one-way transmittance at d
  bool absorption_clamped = false;  // carrier was outside the k(f) band
  double s0 = 0;
  double r_ebw_m = 0;
  double h_mis = 0;            // at t_sense
  double hf_sq = 1;            // mean of the |h_f|^2 draws
  double eta_b = 0;
  double eta_effective = 1;    // fixed efficiency (linear) or f(c2)/c2
  double xi1 = 0, xi2 = 0, c1 = 0, c2 = 0, c3 = 0;

  double t_sense_s = 0;
  double decay_gain_a = 0;     // 4*l0^2 / R_ebw^2
  double decay_rate_b = 0;     // 2*alpha*T
  std::vector<double> hf_sq_draws;
};

ChannelSnapshot snapshot(const SystemParams& params, double t_sense_s);

/// Signal power delivered to the user after t_sense seconds of sensing.
double received_power(const SystemParams& params, double t_sense_s);

/// Round-trip sensing echo power back at the base station.
double reflected_power(const SystemParams& params, double t_sense_s);

/// log2(1 + p_r/n_r), bits/s/Hz.
double capacity(double p_r_w, double n_r_w);

/// Bound evaluator for the two-phase objectives. Precomputes the
/// snapshot once; all evaluations are closed-form in (rho0, rho1) and
/// averaged over the fading draws. Tracks how many objective
/// evaluations were made (one instance per thread).
class LinkObjectives {
 public:
  explicit LinkObjectives(const SystemParams& params);

  /// P_r as a function of the sensing share rho0 (mean over draws).
  double received_power_at(double rho0) const;

  /// Harvested energy E(rho0, rho1) in W*s.
  double energy(double rho0, double rho1) const;

  /// Achievable rate R(rho0, rho1) in bits/Hz.
  double rate(double rho0, double rho1) const;

  // Analytic partials; exact for the active harvest model. rho0 must
  // lie in [0, 1).
  double dE_drho0(double rho0, double rho1) const;
  double dE_drho1(double rho0, double rho1) const;
  double dR_drho0(double rho0, double rho1) const;
  double dR_drho1(double rho0, double rho1) const;

  /// Largest rho1 with R(rho0, rho1) >= r_eps, unclamped (may be < 0
  /// when infeasible or > 1 when the constraint is slack at rho1 = 1).
  double rho1_upper_for_rate(double rho0, double r_eps) const;

  /// Smallest rho1 with E(rho0, rho1) >= e_eps, unclamped.
  double rho1_lower_for_energy(double rho0, double e_eps) const;

  const ChannelSnapshot& channel() const { return snap_; }
  const SystemParams& params() const { return params_; }

  long evaluations() const { return evals_; }
  void reset_evaluations() const { evals_ = 0; }

 private:
  SystemParams params_;
  ChannelSnapshot snap_;
  mutable long evals_ = 0;

  double per_draw_power(double rho0, double hf_sq) const;
};

/// Convenience wrappers that build a snapshot per call.
double harvested_energy(const SystemParams& params, const AllocationPoint& alloc);
double achievable_rate(const SystemParams& params, const AllocationPoint& alloc);

}  // namespace thziscap
