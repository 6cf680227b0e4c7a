#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "thziscap/link.hpp"

using namespace thziscap;

namespace {

SystemParams vacuum_params() {
  SystemParams p = table1_params();
  p.absorption = AbsorptionProvider::table({100e9, 450e9}, {0.0, 0.0});
  return p;
}

}  // namespace

TEST_CASE("default parameters carry the reference scenario") {
  const SystemParams p = table1_params();
  CHECK(p.frequency_hz == 300e9);
  CHECK(p.tx_power_w == 10.0);
  CHECK(p.bs_tx.diameter_m == 0.1);
  CHECK(p.bs_tx.efficiency == 0.2);
  CHECK(p.user_rx.diameter_m == 0.2);
  CHECK(p.user_rx.efficiency == 0.2);
  CHECK(p.bs_rx.diameter_m == 0.1);  // mirrors the transmit antenna
  CHECK(p.distance_m == 20.0);
  CHECK(p.total_time_s == 100.0);
  CHECK(p.noise_power_w == doctest::Approx(1e-8).epsilon(1e-12));
  CHECK(p.initial_misalignment_m == 0.8);
  CHECK(p.misalignment_decay_per_s == 0.1);
  CHECK(p.fading.rician_k == 1.0);
  CHECK(p.harvest.kind == EnergyHarvestModel::Kind::Nonlinear);
  CHECK(p.harvest.a0 == 0.3929);
  CHECK(p.harvest.b0 == 0.01675);
  CHECK(p.harvest.c0 == 0.04401);
}

TEST_CASE("snapshot composes the propagation primitives") {
  const SystemParams p = table1_params();
  const double lambda = wavelength_m(p);
  const ChannelSnapshot s = snapshot(p, 12.0);

  CHECK(s.g_bs_t == doctest::Approx(antenna_gain(p.bs_tx, lambda)).epsilon(1e-15));
  CHECK(s.g_r == doctest::Approx(antenna_gain(p.user_rx, lambda)).epsilon(1e-15));
  const PathLoss pl = path_loss(p.distance_m, lambda, p.bs_tx);
  CHECK(s.pl == pl.value);
  CHECK(s.region == pl.info.region);
  // At 300 GHz with the exact speed of light, d = 20 m sits just inside
  // the Fresnel zone (d_R = 20.014 m).
  CHECK(s.region == RegionClass::FresnelZone);
  CHECK(s.region_round_trip == RegionClass::FarField);

  const BeamGeometry beam =
      beam_geometry(p.distance_m, p.bs_tx.diameter_m / 2.0, p.user_rx.diameter_m / 2.0,
                    lambda);
  CHECK(s.s0 == doctest::Approx(beam.collected_fraction_s0).epsilon(1e-15));
  CHECK(s.r_ebw_m == doctest::Approx(beam.equivalent_beamwidth_m).epsilon(1e-15));

  const double l12 = misalignment_error(12.0, p.initial_misalignment_m,
                                        p.misalignment_decay_per_s);
  CHECK(s.h_mis ==
        doctest::Approx(misalignment_coefficient(l12, s.s0, s.r_ebw_m)).epsilon(1e-15));

  CHECK(s.hf_sq == 1.0);  // deterministic-mean default
  CHECK(s.eta_b == doctest::Approx(beam_collection_efficiency(
                       aperture_area(p.bs_tx), aperture_area(p.user_rx), lambda,
                       p.distance_m))
                       .epsilon(1e-15));

  // Composite constants.
  const double c2 = p.tx_power_w * s.g_bs_t * s.g_r * s.pl * s.h_abs * s.hf_sq * s.eta_b *
                    s.s0 * s.s0;
  CHECK(s.c2 == doctest::Approx(c2).epsilon(1e-15));
  CHECK(s.c1 == doctest::Approx(c2 / p.noise_power_w).epsilon(1e-15));
  CHECK(s.xi2 == s.c1);
  CHECK(s.c3 == doctest::Approx(s.eta_effective * c2).epsilon(1e-15));
  CHECK(s.xi1 == doctest::Approx(s.eta_effective * p.total_time_s * c2).epsilon(1e-15));

  // Regression for the reference scenario.
  CHECK(s.s0 == doctest::Approx(0.648357927).epsilon(1e-8));
  CHECK(s.r_ebw_m * s.r_ebw_m == doctest::Approx(0.033712599).epsilon(1e-7));
  CHECK(s.c2 == doctest::Approx(0.04708752).epsilon(1e-6));
}

TEST_CASE("snapshot misalignment limits") {
  const SystemParams p = table1_params();
  const ChannelSnapshot s0 = snapshot(p, 0.0);
  const double l0 = p.initial_misalignment_m;
  CHECK(s0.h_mis ==
        doctest::Approx(s0.s0 * std::exp(-2.0 * l0 * l0 / (s0.r_ebw_m * s0.r_ebw_m)))
            .epsilon(1e-14));
  const ChannelSnapshot s_inf = snapshot(p, 1e6);
  CHECK(s_inf.h_mis == doctest::Approx(s_inf.s0).epsilon(1e-12));
}

TEST_CASE("snapshot in vacuum has unit molecular transmittance") {
  const ChannelSnapshot s = snapshot(vacuum_params(), 0.0);
  CHECK(s.h_abs == 1.0);
  CHECK(!s.absorption_clamped);
}

TEST_CASE("received power composes the full coefficient chain") {
  const SystemParams p = table1_params();
  const ChannelSnapshot s = snapshot(p, 31.4);
  const double expected = p.tx_power_w * s.g_bs_t * s.g_r * s.pl * s.h_abs * s.h_mis *
                          s.h_mis * s.hf_sq * s.eta_b;
  CHECK(received_power(p, 31.4) == doctest::Approx(expected).epsilon(1e-15));

  // Linear in transmit power.
  SystemParams p2 = p;
  p2.tx_power_w = 20.0;
  CHECK(received_power(p2, 31.4) == doctest::Approx(2.0 * received_power(p, 31.4))
                                        .epsilon(1e-14));
}

TEST_CASE("received power stabilizes once alignment converges") {
  const SystemParams p = table1_params();
  double prev = 0.0;
  for (double t = 0.0; t <= 100.0; t += 2.0) {
    const double cur = received_power(p, t);
    CHECK(cur >= prev);
    prev = cur;
  }
  CHECK(received_power(p, 60.0) == doctest::Approx(received_power(p, 100.0)).epsilon(1e-3));
}

TEST_CASE("reflected power reduces to the symbolic product") {
  const SystemParams p = table1_params();
  const double t = 25.0;
  const ChannelSnapshot s = snapshot(p, t);
  const double h_mis_sq = s.h_mis * s.h_mis;
  const double expected = p.tx_power_w * s.g_bs_t * s.g_bs_r * s.pl_round_trip * s.h_abs *
                          s.h_abs * h_mis_sq * h_mis_sq * s.hf_sq * s.hf_sq * s.eta_b *
                          s.eta_b;
  CHECK(reflected_power(p, t) == doctest::Approx(expected).epsilon(1e-14));

  // h_abs^2 equals the round-trip transmittance over 2d.
  const double mu = mixing_ratio(p.atmosphere);
  CHECK(s.h_abs * s.h_abs ==
        doctest::Approx(molecular_loss(p.frequency_hz, 2.0 * p.distance_m, mu, p.absorption))
            .epsilon(1e-12));

  // Perfect alignment, vacuum, unit fading: P_rr/P_t = G_t*G_bsr*PL(2d)*eta_b^2*S0^4.
  SystemParams ideal = vacuum_params();
  ideal.initial_misalignment_m = 0.0;
  const ChannelSnapshot si = snapshot(ideal, 0.0);
  const double ratio = reflected_power(ideal, 0.0) / ideal.tx_power_w;
  CHECK(ratio == doctest::Approx(si.g_bs_t * si.g_bs_r * si.pl_round_trip * si.eta_b *
                                 si.eta_b * std::pow(si.s0, 4))
                     .epsilon(1e-12));

  // Total miss kills the echo.
  SystemParams missed = table1_params();
  missed.initial_misalignment_m = 1e6;
  CHECK(reflected_power(missed, 0.0) == 0.0);

  // Monotone nondecreasing in sensing time.
  double prev = 0.0;
  for (double ts = 0.0; ts <= 100.0; ts += 5.0) {
    const double cur = reflected_power(p, ts);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("capacity") {
  CHECK(capacity(0.0, 1e-8) == 0.0);
  CHECK(capacity(1e-8, 1e-8) == 1.0);
  CHECK(capacity(3e-8, 1e-8) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(capacity(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(capacity(-1.0, 1e-8), std::domain_error);
}

TEST_CASE("objectives vanish on the degenerate edges") {
  LinkObjectives obj(table1_params());
  CHECK(obj.energy(1.0, 0.7) == 0.0);
  CHECK(obj.energy(0.3, 0.0) == 0.0);
  CHECK(obj.rate(1.0, 0.3) == 0.0);
  CHECK(obj.rate(0.3, 1.0) == 0.0);
  CHECK_THROWS_AS(obj.energy(1.2, 0.5), std::domain_error);
  CHECK_THROWS_AS(obj.rate(0.5, -0.1), std::domain_error);
}

TEST_CASE("power split conserves received power") {
  LinkObjectives obj(table1_params());
  const double pr = obj.received_power_at(0.3);
  for (double rho1 = 0.0; rho1 <= 1.0; rho1 += 0.125) {
    CHECK((1.0 - rho1) * pr + rho1 * pr == pr);
  }
}

TEST_CASE("energy matches its definition for both harvest models") {
  SystemParams p = table1_params();
  {
    LinkObjectives obj(p);
    const double pr = obj.received_power_at(0.3);
    CHECK(obj.energy(0.3, 0.8) ==
          doctest::Approx(0.7 * 100.0 * 0.8 * dc_output(pr, p.harvest)).epsilon(1e-14));
  }
  p.harvest = EnergyHarvestModel::linear(0.5);
  {
    LinkObjectives obj(p);
    const double pr = obj.received_power_at(0.3);
    CHECK(obj.energy(0.3, 0.8) ==
          doctest::Approx(0.7 * 100.0 * 0.8 * 0.5 * pr).epsilon(1e-14));
    CHECK(obj.rate(0.3, 0.8) ==
          doctest::Approx(0.7 * 100.0 * std::log2(1.0 + 0.2 * pr / p.noise_power_w))
              .epsilon(1e-14));
  }
}

TEST_CASE("analytic derivatives match finite differences") {
  for (const bool linear : {false, true}) {
    SystemParams p = table1_params();
    if (linear) p.harvest = EnergyHarvestModel::linear(0.5);
    LinkObjectives obj(p);
    const double h = 1e-6;
    for (double rho0 : {0.1, 0.25, 0.4, 0.7}) {
      for (double rho1 : {0.1, 0.5, 0.9}) {
        const double de0 = oracles::central_diff(
            [&](double x) { return obj.energy(x, rho1); }, rho0, h);
        const double de1 = oracles::central_diff(
            [&](double x) { return obj.energy(rho0, x); }, rho1, h);
        const double dr0 = oracles::central_diff(
            [&](double x) { return obj.rate(x, rho1); }, rho0, h);
        const double dr1 = oracles::central_diff(
            [&](double x) { return obj.rate(rho0, x); }, rho1, h);
        CHECK(obj.dE_drho0(rho0, rho1) == doctest::Approx(de0).epsilon(1e-6));
        CHECK(obj.dE_drho1(rho0, rho1) == doctest::Approx(de1).epsilon(1e-6));
        CHECK(obj.dR_drho0(rho0, rho1) == doctest::Approx(dr0).epsilon(1e-6));
        CHECK(obj.dR_drho1(rho0, rho1) == doctest::Approx(dr1).epsilon(1e-6));

        CHECK(obj.dE_drho1(rho0, rho1) >= 0.0);
        CHECK(obj.dR_drho1(rho0, rho1) <= 0.0);
      }
    }
  }
}

TEST_CASE("derivatives also hold for the split-before-harvest variant") {
  SystemParams p = table1_params();
  p.split_before_harvest = true;
  LinkObjectives obj(p);
  const double h = 1e-6;
  for (double rho0 : {0.2, 0.5}) {
    for (double rho1 : {0.3, 0.8}) {
      CHECK(obj.dE_drho0(rho0, rho1) ==
            doctest::Approx(oracles::central_diff(
                                [&](double x) { return obj.energy(x, rho1); }, rho0, h))
                .epsilon(1e-5));
      CHECK(obj.dE_drho1(rho0, rho1) ==
            doctest::Approx(oracles::central_diff(
                                [&](double x) { return obj.energy(rho0, x); }, rho1, h))
                .epsilon(1e-5));
    }
  }
}

TEST_CASE("derivatives reject rho0 = 1") {
  LinkObjectives obj(table1_params());
  CHECK_THROWS_AS(obj.dE_drho0(1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(obj.dR_drho1(1.0, 0.5), std::domain_error);
}

TEST_CASE("Monte Carlo objectives are sample means over the draws") {
  SystemParams p = table1_params();
  p.fading.mode = FadingModel::Mode::MonteCarlo;
  p.fading.sample_count = 64;
  p.fading.seed = 9;
  LinkObjectives obj(p);
  const ChannelSnapshot& s = obj.channel();
  REQUIRE(s.hf_sq_draws.size() == 64);

  const double c2_unit = s.c2 / s.hf_sq;
  const double x =
      std::exp(-s.decay_gain_a * std::exp(-s.decay_rate_b * 0.3));
  double e = 0.0, r = 0.0;
  for (double hf : s.hf_sq_draws) {
    const double pr = c2_unit * hf * x;
    e += 0.7 * 100.0 * 0.6 * dc_output(pr, p.harvest);
    r += 0.7 * 100.0 * std::log2(1.0 + 0.4 * pr / p.noise_power_w);
  }
  e /= 64.0;
  r /= 64.0;
  CHECK(obj.energy(0.3, 0.6) == doctest::Approx(e).epsilon(1e-13));
  CHECK(obj.rate(0.3, 0.6) == doctest::Approx(r).epsilon(1e-13));

  // Same seed, same objectives, bitwise.
  LinkObjectives obj2(p);
  CHECK(obj.energy(0.3, 0.6) == obj2.energy(0.3, 0.6));
  CHECK(obj.rate(0.3, 0.6) == obj2.rate(0.3, 0.6));
}

TEST_CASE("unimodality in rho0 and monotonicity in rho1") {
  LinkObjectives obj(table1_params());

  // E nondecreasing and R nonincreasing in rho1.
  for (double rho0 : {0.1, 0.3, 0.6}) {
    double prev_e = -1.0, prev_r = 1e18;
    for (double rho1 = 0.0; rho1 <= 1.0 + 1e-12; rho1 += 1e-3) {
      const double rr1 = std::min(rho1, 1.0);
      const double e = obj.energy(rho0, rr1);
      const double r = obj.rate(rho0, rr1);
      CHECK(e >= prev_e);
      CHECK(r <= prev_r + 1e-12);
      prev_e = e;
      prev_r = r;
    }
  }

  // E(rho0) and R(rho0) rise then fall exactly once at fixed rho1.
  for (const bool use_rate : {false, true}) {
    int sign_changes = 0;
    double prev = use_rate ? obj.rate(0.0, 0.5) : obj.energy(0.0, 0.5);
    bool decreasing = false;
    for (double rho0 = 1e-3; rho0 < 1.0; rho0 += 1e-3) {
      const double cur = use_rate ? obj.rate(rho0, 0.5) : obj.energy(rho0, 0.5);
      const bool now_decreasing = cur < prev;
      if (now_decreasing != decreasing) {
        ++sign_changes;
        decreasing = now_decreasing;
      }
      prev = cur;
    }
    CHECK(sign_changes == 1);
  }
}

TEST_CASE("snapshot composition holds on randomized scenarios") {
  std::uint64_t state = 0xC0FFEEull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  for (int i = 0; i < 25; ++i) {
    SystemParams p = table1_params();
    p.distance_m = 2.0 + 98.0 * next();
    p.frequency_hz = (100.0 + 350.0 * next()) * 1e9;
    p.initial_misalignment_m = 2.0 * next();
    p.misalignment_decay_per_s = 0.5 * next();
    const double t = 100.0 * next();
    const ChannelSnapshot s = snapshot(p, t);
    const double product = p.tx_power_w * s.g_bs_t * s.g_r * s.pl * s.h_abs * s.h_mis *
                           s.h_mis * s.hf_sq * s.eta_b;
    CHECK(received_power(p, t) == doctest::Approx(product).epsilon(1e-14));
    CHECK(s.c1 == doctest::Approx(s.c2 / p.noise_power_w).epsilon(1e-15));
  }
}

TEST_CASE("allocation wrappers") {
  const SystemParams p = table1_params();
  LinkObjectives obj(p);
  CHECK(harvested_energy(p, {0.3, 0.8}) == obj.energy(0.3, 0.8));
  CHECK(achievable_rate(p, {0.3, 0.8}) == obj.rate(0.3, 0.8));
}
