#include "thziscap/propagation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace thziscap {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

// 64-bit splitmix-seeded xorshift mixed into uniform doubles, so that
// fading draws are identical across platforms and standard libraries.
class Rng64 {
 public:
  explicit Rng64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1)
  double next_unit() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace

void validate(const AntennaSpec& spec) {
  require(spec.diameter_m > 0.0, "antenna diameter must be > 0");
  require(spec.efficiency > 0.0 && spec.efficiency <= 1.0,
          "aperture efficiency must be in (0, 1]");
}

double aperture_area(const AntennaSpec& spec) {
  validate(spec);
  const double r = spec.diameter_m / 2.0;
  return kPi * r * r;
}

double antenna_gain(const AntennaSpec& spec, double wavelength_m) {
  validate(spec);
  require(wavelength_m > 0.0, "wavelength must be > 0");
  const double x = kPi * spec.diameter_m / wavelength_m;
  return spec.efficiency * x * x;
}

const char* to_string(RegionClass region) {
  switch (region) {
    case RegionClass::Reactive: return "reactive";
    case RegionClass::FresnelZone: return "fresnel_zone";
    case RegionClass::FarField: return "far_field";
    case RegionClass::BelowGainFloor: return "below_gain_floor";
  }
  return "unknown";
}

namespace {

double gain_floor_distance(double wavelength_m, double tx_gain) {
  const double g_eff = tx_gain >= kGainBranchThreshold ? tx_gain : 2.0 * tx_gain;
  return 2.0 * wavelength_m * std::sqrt(kGainReductionAlpha) * g_eff / (kPi * kPi);
}

}  // namespace

RegionInfo classify_region(double distance_m, double wavelength_m, const AntennaSpec& tx) {
  require(distance_m > 0.0, "distance must be > 0");
  require(wavelength_m > 0.0, "wavelength must be > 0");
  const double d = tx.diameter_m;
  const double gain = antenna_gain(tx, wavelength_m);

  RegionInfo info{};
  info.d_reactive = 0.62 * std::sqrt(d * d * d / wavelength_m);
  info.d_rayleigh = 2.0 * d * d / wavelength_m;
  info.d_min = gain_floor_distance(wavelength_m, gain);

  // Ulp-scale slack so distances that equal a boundary up to rounding of
  // the boundary formula itself land on the documented side.
  const double far_edge = std::max(1.0, info.d_rayleigh) * (1.0 - 1e-14);
  if (distance_m <= info.d_reactive) {
    info.region = RegionClass::Reactive;
  } else if (distance_m >= far_edge) {
    info.region = RegionClass::FarField;
  } else if (distance_m < info.d_min) {
    info.region = RegionClass::BelowGainFloor;
  } else {
    info.region = RegionClass::FresnelZone;
  }
  return info;
}

double gain_reduction_factor(double distance_m, double wavelength_m, double tx_gain) {
  require(distance_m > 0.0, "distance must be > 0");
  require(wavelength_m > 0.0, "wavelength must be > 0");
  require(tx_gain > 0.0, "gain must be > 0");
  const double d_min = gain_floor_distance(wavelength_m, tx_gain);
  if (distance_m < d_min)
    throw std::domain_error("distance below the gain floor: reduction factor undefined");
  const double ratio = d_min / distance_m;
  return 1.0 - ratio * ratio;
}

PathLoss path_loss(double distance_m, double wavelength_m, const AntennaSpec& tx) {
  PathLoss out{};
  out.info = classify_region(distance_m, wavelength_m, tx);
  switch (out.info.region) {
    case RegionClass::Reactive:
    case RegionClass::BelowGainFloor:
      out.value = 0.0;
      break;
    case RegionClass::FarField: {
      const double x = wavelength_m / (4.0 * kPi * distance_m);
      out.value = x * x;
      break;
    }
    case RegionClass::FresnelZone: {
      const double gain = antenna_gain(tx, wavelength_m);
      const double x = wavelength_m / (4.0 * kPi * distance_m);
      out.value = x * x * gain_reduction_factor(distance_m, wavelength_m, gain);
      break;
    }
  }
  return out;
}

double beam_radius(double distance_m, double waist_m, double wavelength_m) {
  require(waist_m > 0.0, "beam waist must be > 0");
  require(wavelength_m > 0.0, "wavelength must be > 0");
  require(distance_m >= 0.0, "distance must be >= 0");
  const double rayleigh = kPi * waist_m * waist_m / wavelength_m;
  const double z = distance_m / rayleigh;
  return waist_m * std::sqrt(1.0 + z * z);
}

PointingGeometry pointing_geometry(double receiver_radius_m, double beam_radius_m) {
  require(receiver_radius_m > 0.0, "receiver radius must be > 0");
  require(beam_radius_m > 0.0, "beam radius must be > 0");
  PointingGeometry g{};
  g.epsilon = std::sqrt(kPi) * receiver_radius_m / (std::sqrt(2.0) * beam_radius_m);
  const double erf_eps = std::erf(g.epsilon);
  g.collected_fraction_s0 = erf_eps * erf_eps;
  const double ratio =
      std::sqrt(kPi) * erf_eps / (2.0 * g.epsilon * std::exp(-g.epsilon * g.epsilon));
  g.equivalent_beamwidth_m = beam_radius_m * std::sqrt(ratio);
  return g;
}

BeamGeometry beam_geometry(double distance_m, double waist_m, double receiver_radius_m,
                           double wavelength_m) {
  BeamGeometry b{};
  b.waist_m = waist_m;
  b.rayleigh_range_m = kPi * waist_m * waist_m / wavelength_m;
  b.beam_radius_m = beam_radius(distance_m, waist_m, wavelength_m);
  b.receiver_radius_m = receiver_radius_m;
  const PointingGeometry g = pointing_geometry(receiver_radius_m, b.beam_radius_m);
  b.collected_fraction_s0 = g.collected_fraction_s0;
  b.equivalent_beamwidth_m = g.equivalent_beamwidth_m;
  return b;
}

double misalignment_error(double t_s, double initial_error_m, double decay_rate_per_s) {
  require(t_s >= 0.0, "time must be >= 0");
  require(initial_error_m >= 0.0, "initial error must be >= 0");
  require(decay_rate_per_s >= 0.0, "decay rate must be >= 0");
  return initial_error_m * std::exp(-decay_rate_per_s * t_s);
}

double misalignment_coefficient(double error_m, double collected_fraction_s0,
                                double equivalent_beamwidth_m) {
  require(equivalent_beamwidth_m > 0.0, "equivalent beamwidth must be > 0");
  const double x = error_m / equivalent_beamwidth_m;
  return collected_fraction_s0 * std::exp(-2.0 * x * x);
}

double beam_collection_efficiency(double area_tx_m2, double area_rx_m2,
                                  double wavelength_m, double distance_m) {
  require(area_tx_m2 > 0.0, "tx area must be > 0");
  require(area_rx_m2 > 0.0, "rx area must be > 0");
  require(wavelength_m > 0.0, "wavelength must be > 0");
  require(distance_m > 0.0, "distance must be > 0");
  const double x = area_tx_m2 * area_rx_m2 / (wavelength_m * wavelength_m * distance_m * distance_m);
  return -std::expm1(-x);
}

void validate(const FadingModel& model) {
  require(model.rician_k >= 0.0, "Rician K must be >= 0");
  if (model.mode == FadingModel::Mode::MonteCarlo)
    require(model.sample_count >= 1, "sample count must be >= 1");
}

std::vector<double> fading_power(const FadingModel& model) {
  validate(model);
  if (model.mode == FadingModel::Mode::DeterministicMean) return {1.0};

  // Rice(nu, sigma) normalized to unit mean power:
  //   nu^2 = K/(K+1), 2*sigma^2 = 1/(K+1)  =>  E[|h|^2] = 1.
  const double k = model.rician_k;
  const double nu = std::sqrt(k / (k + 1.0));
  const double sigma = std::sqrt(0.5 / (k + 1.0));

  Rng64 rng(model.seed);
  std::vector<double> out(static_cast<std::size_t>(model.sample_count));
  for (double& v : out) {
    const double u1 = rng.next_unit();
    const double u2 = rng.next_unit();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double z1 = mag * std::cos(2.0 * kPi * u2);
    const double z2 = mag * std::sin(2.0 * kPi * u2);
    const double x = nu + sigma * z1;
    const double y = sigma * z2;
    v = x * x + y * y;
  }
  return out;
}

}  // namespace thziscap
