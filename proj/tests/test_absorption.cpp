#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "thziscap/absorption.hpp"

using namespace thziscap;

namespace {
double table1_mu() {
  return mixing_ratio(Atmosphere{0.5, 25.0, 101325.0});
}
}  // namespace

TEST_CASE("Buck saturation pressure and mixing ratio") {
  CHECK(saturation_pressure_pa(25.0) == doctest::Approx(3168.53).epsilon(1e-4));
  CHECK(mixing_ratio({0.0, 25.0, 101325.0}) == 0.0);
  const double mu_half = mixing_ratio({0.5, 25.0, 101325.0});
  CHECK(mu_half == doctest::Approx(0.0156).epsilon(3e-3));
  CHECK(mu_half == doctest::Approx(0.015635486860475868).epsilon(1e-12));
  // Linear in RH.
  CHECK(mixing_ratio({1.0, 25.0, 101325.0}) == doctest::Approx(2.0 * mu_half).epsilon(1e-15));
  CHECK(mu_half > 0.0);
  CHECK(mu_half < 0.2);
}

TEST_CASE("mixing ratio validation") {
  CHECK_THROWS_AS(mixing_ratio({-0.1, 25.0, 101325.0}), std::domain_error);
  CHECK_THROWS_AS(mixing_ratio({1.1, 25.0, 101325.0}), std::domain_error);
  CHECK_THROWS_AS(mixing_ratio({0.5, 25.0, 0.0}), std::domain_error);
}

TEST_CASE("line model: water line near 183 GHz dominates the window") {
  const AbsorptionProvider p = AbsorptionProvider::line_model();
  const double mu = table1_mu();
  CHECK(p.coefficient(184e9, mu) > 5.0 * p.coefficient(150e9, mu));
}

TEST_CASE("line model: locally elevated loss at the known line frequencies") {
  const AbsorptionProvider p = AbsorptionProvider::line_model();
  const double mu = table1_mu();
  for (double f_ghz : {184.0, 326.0, 381.0}) {
    const double at = p.coefficient(f_ghz * 1e9, mu);
    CHECK(at > 3.0 * p.coefficient((f_ghz - 10.0) * 1e9, mu));
    CHECK(at > 3.0 * p.coefficient((f_ghz + 10.0) * 1e9, mu));
  }
  // 449 GHz sits between the 439/448 lines; compare against the window
  // below them.
  CHECK(p.coefficient(449e9, mu) > 3.0 * p.coefficient(410e9, mu));
}

TEST_CASE("line model: nonnegative over the whole band, regression at 300 GHz") {
  const AbsorptionProvider p = AbsorptionProvider::line_model();
  const double mu = table1_mu();
  for (double f = 100e9; f <= 450e9; f += 0.5e9) CHECK(p.coefficient(f, mu) >= 0.0);
  CHECK(p.coefficient(300e9, mu) == doctest::Approx(6.965815e-4).epsilon(1e-5));
  // Dry air has no water-vapor absorption in this parameterization.
  CHECK(p.coefficient(300e9, 0.0) == 0.0);
}

TEST_CASE("band limits are enforced and clamping works") {
  const AbsorptionProvider p = AbsorptionProvider::line_model();
  const double mu = table1_mu();
  CHECK_THROWS_AS(p.coefficient(99e9, mu), std::out_of_range);
  CHECK_THROWS_AS(p.coefficient(451e9, mu), std::out_of_range);
  bool clamped = false;
  CHECK(p.coefficient_clamped(60e9, mu, &clamped) ==
        doctest::Approx(p.coefficient(100e9, mu)).epsilon(1e-15));
  CHECK(clamped);
  p.coefficient_clamped(300e9, mu, &clamped);
  CHECK(!clamped);
}

TEST_CASE("table provider interpolates linearly") {
  const AbsorptionProvider t = AbsorptionProvider::table({100e9, 450e9}, {1e-4, 1e-2});
  CHECK(t.coefficient(100e9, 0.0) == 1e-4);
  CHECK(t.coefficient(450e9, 0.0) == 1e-2);
  CHECK(t.coefficient(275e9, 0.0) == doctest::Approx(5.05e-3).epsilon(1e-12));

  const AbsorptionProvider zero = AbsorptionProvider::table({100e9, 450e9}, {0.0, 0.0});
  CHECK(zero.coefficient(300e9, 0.123) == 0.0);

  // Monotone knots stay monotone between themselves.
  const AbsorptionProvider m =
      AbsorptionProvider::table({100e9, 200e9, 300e9, 450e9}, {1e-4, 5e-4, 2e-3, 9e-3});
  double prev = 0.0;
  for (double f = 100e9; f <= 450e9; f += 1e9) {
    const double k = m.coefficient(f, 0.0);
    CHECK(k >= prev);
    prev = k;
  }
}

TEST_CASE("table provider validation") {
  CHECK_THROWS_AS(AbsorptionProvider::table({100e9}, {1e-4}), std::invalid_argument);
  CHECK_THROWS_AS(AbsorptionProvider::table({200e9, 100e9}, {1e-4, 1e-4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(AbsorptionProvider::table({100e9, 200e9}, {1e-4, -1.0}),
                  std::invalid_argument);
}

TEST_CASE("table provider loads CSV") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "thziscap_k_table.csv";
  {
    std::ofstream f(path);
    f << "frequency_hz,k_per_m\n1e11,1e-4\n4.5e11,1e-2\n";
  }
  const AbsorptionProvider t = AbsorptionProvider::from_csv(path.string());
  CHECK(t.coefficient(275e9, 0.0) == doctest::Approx(5.05e-3).epsilon(1e-12));

  const fs::path bad = fs::temp_directory_path() / "thziscap_k_bad.csv";
  {
    std::ofstream f(bad);
    f << "freq,k\n1e11,1e-4\n";
  }
  CHECK_THROWS_AS(AbsorptionProvider::from_csv(bad.string()), std::invalid_argument);
  CHECK_THROWS_AS(AbsorptionProvider::from_csv("/nonexistent/file.csv"),
                  std::invalid_argument);
  fs::remove(path);
  fs::remove(bad);
}

TEST_CASE("molecular loss follows Beer-Lambert") {
  const AbsorptionProvider t = AbsorptionProvider::table({100e9, 450e9}, {1e-3, 1e-3});
  CHECK(molecular_loss(300e9, 0.0, 0.0, t) == 1.0);
  CHECK(molecular_loss(300e9, 20.0, 0.0, t) ==
        doctest::Approx(std::exp(-0.02)).epsilon(1e-14));

  // Multiplicativity and the round-trip identity used by sensing.
  const AbsorptionProvider p = AbsorptionProvider::line_model();
  const double mu = table1_mu();
  const double h10 = molecular_loss(300e9, 10.0, mu, p);
  const double h15 = molecular_loss(300e9, 15.0, mu, p);
  const double h25 = molecular_loss(300e9, 25.0, mu, p);
  CHECK(h25 == doctest::Approx(h10 * h15).epsilon(1e-12));
  const double h20 = molecular_loss(300e9, 20.0, mu, p);
  const double h40 = molecular_loss(300e9, 40.0, mu, p);
  CHECK(h40 == doctest::Approx(h20 * h20).epsilon(1e-12));

  // log h is linear in d.
  const double k = p.coefficient(300e9, mu);
  for (double d = 1.0; d < 100.0; d *= 2.7) {
    CHECK(std::log(molecular_loss(300e9, d, mu, p)) ==
          doctest::Approx(-k * d).epsilon(1e-12));
  }
}
