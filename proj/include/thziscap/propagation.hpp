#pragma once

#include <cstdint>
#include <vector>

namespace thziscap {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Empirical gain reduction coefficient for Fresnel-zone operation.
inline constexpr double kGainReductionAlpha = 0.06;

/// Linear-gain threshold separating the two gain-reduction branches (10 dB).
inline constexpr double kGainBranchThreshold = 10.0;

/// Circular aperture antenna.
struct AntennaSpec {
  double diameter_m = 0.0;
  double efficiency = 0.0;  // aperture efficiency in (0, 1]
};

void validate(const AntennaSpec& spec);

/// Effective area pi*(D/2)^2.
double aperture_area(const AntennaSpec& spec);

/// Aperture gain eta * (pi*D/lambda)^2.
double antenna_gain(const AntennaSpec& spec, double wavelength_m);

enum class RegionClass { Reactive, FresnelZone, FarField, BelowGainFloor };

const char* to_string(RegionClass region);

/// Distance-region classification together with the three boundary
/// distances that define it:
///   d_reactive  = 0.62*sqrt(D^3/lambda)   reactive near-field edge
///   d_min       gain-floor distance (gain reduction reaches zero)
///   d_rayleigh  = 2*D^2/lambda            near/far-field boundary
struct RegionInfo {
  RegionClass region;
  double d_reactive;
  double d_min;
  double d_rayleigh;
};

RegionInfo classify_region(double distance_m, double wavelength_m, const AntennaSpec& tx);

/// Fresnel-zone gain reduction factor in [0, 1]. Grows towards 1 with
/// distance; zero at d_min. Throws std::domain_error below d_min.
double gain_reduction_factor(double distance_m, double wavelength_m, double tx_gain);

struct PathLoss {
  double value;  // dimensionless power ratio; 0 in degenerate regions
  RegionInfo info;
};

/// Path loss factor: free-space loss in the far field, gain-reduced in
/// the Fresnel zone, zero in the reactive region and below the gain
/// floor (degenerate regions never throw, so sweeps can cross them).
PathLoss path_loss(double distance_m, double wavelength_m, const AntennaSpec& tx);

/// Gaussian-beam radius W(d) = W0*sqrt(1+(d/d0)^2), d0 = pi*W0^2/lambda.
double beam_radius(double distance_m, double waist_m, double wavelength_m);

struct PointingGeometry {
  double epsilon;                  // sqrt(pi)*r / (sqrt(2)*R_d)
  double collected_fraction_s0;    // erf(epsilon)^2
  double equivalent_beamwidth_m;   // R_ebw
};

/// Fraction of beam power collected by a receiver of radius r and the
/// equivalent beamwidth used by the misalignment coefficient.
PointingGeometry pointing_geometry(double receiver_radius_m, double beam_radius_m);

/// Everything the misalignment model needs at one (distance, wavelength).
struct BeamGeometry {
  double waist_m;
  double rayleigh_range_m;
  double beam_radius_m;
  double receiver_radius_m;
  double collected_fraction_s0;
  double equivalent_beamwidth_m;
};

BeamGeometry beam_geometry(double distance_m, double waist_m, double receiver_radius_m,
                           double wavelength_m);

/// Radial pointing error after t seconds of sensing: l0 * exp(-alpha*t).
double misalignment_error(double t_s, double initial_error_m, double decay_rate_per_s);

/// Misalignment fading coefficient S0 * exp(-2*l^2/R_ebw^2).
double misalignment_coefficient(double error_m, double collected_fraction_s0,
                                double equivalent_beamwidth_m);

/// Gaussian-beam collection efficiency 1 - exp(-A_tx*A_rx/(lambda^2 d^2)).
double beam_collection_efficiency(double area_tx_m2, double area_rx_m2,
                                  double wavelength_m, double distance_m);

/// Rician multipath power |h_f|^2, normalized so E[|h_f|^2] = 1.
struct FadingModel {
  enum class Mode { DeterministicMean, MonteCarlo };
  Mode mode = Mode::DeterministicMean;
  double rician_k = 1.0;
  int sample_count = 1000;
  std::uint64_t seed = 1;
};

void validate(const FadingModel& model);

/// DeterministicMean yields {1.0}. MonteCarlo yields sample_count draws,
/// reproducible for a fixed seed (the generator is self-contained).
std::vector<double> fading_power(const FadingModel& model);

}  // namespace thziscap
