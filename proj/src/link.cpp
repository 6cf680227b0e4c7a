#include "thziscap/link.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace thziscap {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// log2(1 + x) without losing tiny x to the 1.0 + x rounding.
double log2_1p(double x) { return std::log1p(x) / kLn2; }

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

SystemParams table1_params() { return SystemParams{}; }

double wavelength_m(const SystemParams& params) {
  return kSpeedOfLight / params.frequency_hz;
}

void validate(const SystemParams& params) {
  require(params.frequency_hz > 0.0, "frequency must be > 0");
  require(params.tx_power_w > 0.0, "tx power must be > 0");
  require(params.distance_m > 0.0, "distance must be > 0");
  require(params.total_time_s > 0.0, "total time must be > 0");
  require(params.noise_power_w > 0.0, "noise power must be > 0");
  require(params.initial_misalignment_m >= 0.0, "initial misalignment must be >= 0");
  require(params.misalignment_decay_per_s >= 0.0, "decay rate must be >= 0");
  validate(params.bs_tx);
  validate(params.bs_rx);
  validate(params.user_rx);
  validate(params.atmosphere);
  validate(params.harvest);
  validate(params.fading);
}

void validate(const AllocationPoint& alloc) {
  require(alloc.rho0 >= 0.0 && alloc.rho0 <= 1.0, "rho0 must be in [0, 1]");
  require(alloc.rho1 >= 0.0 && alloc.rho1 <= 1.0, "rho1 must be in [0, 1]");
}

ChannelSnapshot snapshot(const SystemParams& params, double t_sense_s) {
  validate(params);
  require(t_sense_s >= 0.0, "sensing time must be >= 0");
  const double lambda = wavelength_m(params);

  ChannelSnapshot s{};
  s.t_sense_s = t_sense_s;
  s.g_bs_t = antenna_gain(params.bs_tx, lambda);
  s.g_bs_r = antenna_gain(params.bs_rx, lambda);
  s.g_r = antenna_gain(params.user_rx, lambda);

  const PathLoss pl = path_loss(params.distance_m, lambda, params.bs_tx);
  s.pl = pl.value;
  s.region = pl.info.region;
  const PathLoss pl2 = path_loss(2.0 * params.distance_m, lambda, params.bs_tx);
  s.pl_round_trip = pl2.value;
  s.region_round_trip = pl2.info.region;

  // Out-of-band carriers take the band-edge coefficient; the flag lets
  // sweep output surface a warning instead of aborting mid-run.
  const double mu = mixing_ratio(params.atmosphere);
  const double k =
      params.absorption.coefficient_clamped(params.frequency_hz, mu, &s.absorption_clamped);
  s.h_abs = std::exp(-k * params.distance_m);

  // Waist = half the transmit aperture, receiver radius = half the
  // receive aperture.
  const BeamGeometry beam = beam_geometry(params.distance_m, params.bs_tx.diameter_m / 2.0,
                                          params.user_rx.diameter_m / 2.0, lambda);
  s.s0 = beam.collected_fraction_s0;
  s.r_ebw_m = beam.equivalent_beamwidth_m;

  const double l_mis = misalignment_error(t_sense_s, params.initial_misalignment_m,
                                          params.misalignment_decay_per_s);
  s.h_mis = misalignment_coefficient(l_mis, s.s0, s.r_ebw_m);

  s.eta_b = beam_collection_efficiency(aperture_area(params.bs_tx),
                                       aperture_area(params.user_rx), lambda,
                                       params.distance_m);

  s.hf_sq_draws = fading_power(params.fading);
  s.hf_sq = mean(s.hf_sq_draws);

  const double l0 = params.initial_misalignment_m;
  s.decay_gain_a = 4.0 * l0 * l0 / (s.r_ebw_m * s.r_ebw_m);
  s.decay_rate_b = 2.0 * params.misalignment_decay_per_s * params.total_time_s;

  s.c2 = params.tx_power_w * s.g_bs_t * s.g_r * s.pl * s.h_abs * s.hf_sq * s.eta_b *
         s.s0 * s.s0;
  if (params.harvest.kind == EnergyHarvestModel::Kind::Linear) {
    s.eta_effective = params.harvest.eta;
  } else {
    s.eta_effective = s.c2 > 0.0 ? dc_output(s.c2, params.harvest) / s.c2 : 0.0;
  }
  s.c1 = s.c2 / params.noise_power_w;
  s.xi2 = s.c1;
  s.c3 = s.eta_effective * s.c2;
  s.xi1 = s.eta_effective * params.total_time_s * s.c2;
  return s;
}

double received_power(const SystemParams& params, double t_sense_s) {
  const ChannelSnapshot s = snapshot(params, t_sense_s);
  return params.tx_power_w * s.g_bs_t * s.g_r * s.pl * s.h_abs * s.h_mis * s.h_mis *
         s.hf_sq * s.eta_b;
}

double reflected_power(const SystemParams& params, double t_sense_s) {
  const ChannelSnapshot s = snapshot(params, t_sense_s);
  double hf_quad = 0.0;
  for (double v : s.hf_sq_draws) hf_quad += v * v;
  hf_quad /= static_cast<double>(s.hf_sq_draws.size());
  const double h_mis_sq = s.h_mis * s.h_mis;
  return params.tx_power_w * s.g_bs_t * s.g_bs_r * s.pl_round_trip * s.h_abs * s.h_abs *
         h_mis_sq * h_mis_sq * hf_quad * s.eta_b * s.eta_b;
}

double capacity(double p_r_w, double n_r_w) {
  require(n_r_w > 0.0, "noise power must be > 0");
  require(p_r_w >= 0.0, "received power must be >= 0");
  return log2_1p(p_r_w / n_r_w);
}

LinkObjectives::LinkObjectives(const SystemParams& params)
    : params_(params), snap_(snapshot(params, 0.0)) {}

double LinkObjectives::per_draw_power(double rho0, double hf_sq) const {
  // P_r(rho0) = c2_unit * hf^2 * exp(-a * exp(-b*rho0))
  const double c2_unit = snap_.hf_sq > 0.0 ? snap_.c2 / snap_.hf_sq : 0.0;
  const double x = std::exp(-snap_.decay_gain_a * std::exp(-snap_.decay_rate_b * rho0));
  return c2_unit * hf_sq * x;
}

double LinkObjectives::received_power_at(double rho0) const {
  require(rho0 >= 0.0 && rho0 <= 1.0, "rho0 must be in [0, 1]");
  double acc = 0.0;
  for (double hf : snap_.hf_sq_draws) acc += per_draw_power(rho0, hf);
  return acc / static_cast<double>(snap_.hf_sq_draws.size());
}

double LinkObjectives::energy(double rho0, double rho1) const {
  validate(AllocationPoint{rho0, rho1});
  ++evals_;
  const double t2 = (1.0 - rho0) * params_.total_time_s;
  double acc = 0.0;
  for (double hf : snap_.hf_sq_draws) {
    const double pr = per_draw_power(rho0, hf);
    if (params_.split_before_harvest) {
      acc += t2 * dc_output(rho1 * pr, params_.harvest);
    } else {
      acc += t2 * rho1 * dc_output(pr, params_.harvest);
    }
  }
  return acc / static_cast<double>(snap_.hf_sq_draws.size());
}

double LinkObjectives::rate(double rho0, double rho1) const {
  validate(AllocationPoint{rho0, rho1});
  ++evals_;
  const double t2 = (1.0 - rho0) * params_.total_time_s;
  double acc = 0.0;
  for (double hf : snap_.hf_sq_draws) {
    const double pr = per_draw_power(rho0, hf);
    acc += t2 * log2_1p((1.0 - rho1) * pr / params_.noise_power_w);
  }
  return acc / static_cast<double>(snap_.hf_sq_draws.size());
}

double LinkObjectives::dE_drho1(double rho0, double rho1) const {
  validate(AllocationPoint{rho0, rho1});
  require(rho0 < 1.0, "derivatives are defined for rho0 in [0, 1)");
  const double t2 = (1.0 - rho0) * params_.total_time_s;
  double acc = 0.0;
  for (double hf : snap_.hf_sq_draws) {
    const double pr = per_draw_power(rho0, hf);
    if (params_.split_before_harvest) {
      acc += t2 * dc_output_slope(rho1 * pr, params_.harvest) * pr;
    } else {
      acc += t2 * dc_output(pr, params_.harvest);
    }
  }
  return acc / static_cast<double>(snap_.hf_sq_draws.size());
}

double LinkObjectives::dE_drho0(double rho0, double rho1) const {
  validate(AllocationPoint{rho0, rho1});
  require(rho0 < 1.0, "derivatives are defined for rho0 in [0, 1)");
  const double T = params_.total_time_s;
  // dP_r/drho0 = P_r * a*b*exp(-b*rho0)
  const double growth = snap_.decay_gain_a * snap_.decay_rate_b *
                        std::exp(-snap_.decay_rate_b * rho0);
  double acc = 0.0;
  for (double hf : snap_.hf_sq_draws) {
    const double pr = per_draw_power(rho0, hf);
    if (params_.split_before_harvest) {
      acc += T * (-dc_output(rho1 * pr, params_.harvest) +
                  (1.0 - rho0) * dc_output_slope(rho1 * pr, params_.harvest) * rho1 * pr *
                      growth);
    } else {
      acc += T * rho1 *
             (-dc_output(pr, params_.harvest) +
              (1.0 - rho0) * dc_output_slope(pr, params_.harvest) * pr * growth);
    }
  }
  return acc / static_cast<double>(snap_.hf_sq_draws.size());
}

double LinkObjectives::dR_drho1(double rho0, double rho1) const {
  validate(AllocationPoint{rho0, rho1});
  require(rho0 < 1.0, "derivatives are defined for rho0 in [0, 1)");
  const double t2 = (1.0 - rho0) * params_.total_time_s;
  const double n = params_.noise_power_w;
  double acc = 0.0;
  for (double hf : snap_.hf_sq_draws) {
    const double pr = per_draw_power(rho0, hf);
    acc += -t2 * (pr / n) / ((1.0 + (1.0 - rho1) * pr / n) * kLn2);
  }
  return acc / static_cast<double>(snap_.hf_sq_draws.size());
}

double LinkObjectives::dR_drho0(double rho0, double rho1) const {
  validate(AllocationPoint{rho0, rho1});
  require(rho0 < 1.0, "derivatives are defined for rho0 in [0, 1)");
  const double T = params_.total_time_s;
  const double n = params_.noise_power_w;
  const double growth = snap_.decay_gain_a * snap_.decay_rate_b *
                        std::exp(-snap_.decay_rate_b * rho0);
  double acc = 0.0;
  for (double hf : snap_.hf_sq_draws) {
    const double snr = (1.0 - rho1) * per_draw_power(rho0, hf) / n;
    acc += -T * log2_1p(snr) +
           (1.0 - rho0) * T * snr * growth / ((1.0 + snr) * kLn2);
  }
  return acc / static_cast<double>(snap_.hf_sq_draws.size());
}

double LinkObjectives::rho1_upper_for_rate(double rho0, double r_eps) const {
  require(rho0 >= 0.0 && rho0 < 1.0, "rho0 must be in [0, 1)");
  if (r_eps <= 0.0) return 1.0;
  if (snap_.hf_sq_draws.size() > 1) {
    // Sample-mean rate has no closed-form inverse; bisect on rho1.
    const double r1 = rate(rho0, 1.0);
    if (r1 >= r_eps) return 1.0;
    if (rate(rho0, 0.0) < r_eps) return -1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 64; ++i) {
      const double mid = 0.5 * (lo + hi);
      (rate(rho0, mid) >= r_eps ? lo : hi) = mid;
    }
    return lo;
  }
  const double exponent = r_eps * kLn2 / ((1.0 - rho0) * params_.total_time_s);
  if (exponent > 700.0) return -std::numeric_limits<double>::infinity();
  const double needed = std::expm1(exponent) * params_.noise_power_w;
  const double pr = per_draw_power(rho0, snap_.hf_sq_draws.front());
  if (pr <= 0.0) return -std::numeric_limits<double>::infinity();
  return 1.0 - needed / pr;
}

double LinkObjectives::rho1_lower_for_energy(double rho0, double e_eps) const {
  require(rho0 >= 0.0 && rho0 < 1.0, "rho0 must be in [0, 1)");
  if (e_eps <= 0.0) return 0.0;
  const double cap = energy(rho0, 1.0);
  if (cap <= 0.0) return std::numeric_limits<double>::infinity();
  if (params_.split_before_harvest || snap_.hf_sq_draws.size() > 1) {
    if (cap < e_eps) return std::numeric_limits<double>::infinity();
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 64; ++i) {
      const double mid = 0.5 * (lo + hi);
      (energy(rho0, mid) >= e_eps ? hi : lo) = mid;
    }
    return hi;
  }
  // E is linear in rho1: E = rho1 * E(rho0, 1).
  return e_eps / cap;
}

double harvested_energy(const SystemParams& params, const AllocationPoint& alloc) {
  return LinkObjectives(params).energy(alloc.rho0, alloc.rho1);
}

double achievable_rate(const SystemParams& params, const AllocationPoint& alloc) {
  return LinkObjectives(params).rate(alloc.rho0, alloc.rho1);
}

}  // namespace thziscap
