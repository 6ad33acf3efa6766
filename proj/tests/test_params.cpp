#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <limits>
#include <random>

#include "prfauth/params.hpp"

using namespace prfauth;

TEST_CASE("decibel conversions") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(db_to_linear(30.0) == doctest::Approx(1000.0).epsilon(1e-15));
  // mpmath: 10^-0.342
  CHECK(db_to_linear(-3.42) == doctest::Approx(0.45498806015004857).epsilon(1e-14));
  CHECK(std::fabs(db_to_linear(-3.42) - 0.4550) <= 0.0005);

  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(-300.0, 300.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = dist(gen);
    CHECK(linear_to_db(db_to_linear(x)) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("noise variance ratio from C/N0") {
  CHECK(noise_variance_ratio(galileo_e6c_preset()) == doctest::Approx(5115.0).epsilon(1e-14));
  CHECK(noise_variance_ratio(RadioModel{1, 1.0, 2.0, 0.0}) == doctest::Approx(1.0));
  RadioModel clean = galileo_e6c_preset();
  clean.cn0_dbhz = std::numeric_limits<double>::infinity();
  CHECK(noise_variance_ratio(clean) == 0.0);

  SUBCASE("linear in F, inverse in linear C/N0") {
    RadioModel r = galileo_e6c_preset();
    const double base = noise_variance_ratio(r);
    r.sample_rate_hz *= 3.0;
    CHECK(noise_variance_ratio(r) == doctest::Approx(3.0 * base));
    r = galileo_e6c_preset();
    r.cn0_dbhz += 10.0;
    CHECK(noise_variance_ratio(r) == doctest::Approx(base / 10.0));
  }
}

TEST_CASE("chip success probability") {
  CHECK(chip_success_probability(0.0) == 0.5);
  CHECK(chip_success_probability(std::numeric_limits<double>::infinity()) == 1.0);
  CHECK(std::fabs(chip_success_probability(db_to_linear(-3.42)) - 0.750) <= 0.001);
  CHECK_THROWS_AS(chip_success_probability(-1.0), std::invalid_argument);

  double prev = 0.5;
  for (double snr = 0.0; snr < 20.0; snr += 0.01) {
    const double p = chip_success_probability(snr);
    CHECK(p >= prev);
    CHECK(p < 1.0 + 1e-15);
    prev = p;
  }
}

TEST_CASE("adversary link budget") {
  const double snr = adversary_link_budget(-153.0, 300.0, 10.230e6, 0.0);
  CHECK(std::fabs(snr - -19.0) <= 0.5);
  // mpmath reference for the same inputs.
  CHECK(snr == doctest::Approx(-19.270801711100561).epsilon(1e-12));

  const double gain = required_antenna_gain(-153.0, 300.0, 10.230e6, -3.42);
  CHECK(std::fabs(gain - 15.58) <= 0.5);
  CHECK(adversary_link_budget(-153.0, 300.0, 10.230e6, gain) == doctest::Approx(-3.42));

  for (double g : {-5.0, 0.0, 3.5, 12.0}) {
    CHECK(adversary_link_budget(-153.0, 300.0, 10.230e6, g + 10.0) - adversary_link_budget(-153.0, 300.0, 10.230e6, g) ==
          doctest::Approx(10.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(adversary_link_budget(-153.0, 0.0, 1e6, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(adversary_link_budget(-153.0, 300.0, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("Galileo E6-C preset") {
  const RadioModel r = galileo_e6c_preset();
  CHECK(r.chips == 5115);
  CHECK(r.samples_per_code() == 10230);
  CHECK(r.code_period_s == 0.001);
  CHECK(r.cn0_dbhz == 30.0);
  CHECK_NOTHROW(r.validate());
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((RadioModel{0, 1e-3, 1e4, 30}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((RadioModel{10, 1e-3, 5e3, 30}).validate(), std::invalid_argument);  // F*T = 5 < 10
  CHECK_THROWS_AS((RadioModel{10, 0.0, 5e3, 30}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((ChannelModel{-1.0, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((ChannelModel{1.0, -1.0}).validate(), std::invalid_argument);
  CHECK_NOTHROW((ChannelModel{1.0, 0.0}).validate());
  CHECK_THROWS_AS((DetectorConfig{0, 0.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((DetectorConfig{1, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((DetectorConfig{1, 0.0}).validate(), std::invalid_argument);
  CHECK(DetectorConfig{}.threshold == 0.5);

  CHECK_THROWS_AS(validate(AdversaryModel{adversary::HdScer{0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(AdversaryModel{adversary::PScer{-1.0}}), std::invalid_argument);
  CHECK_NOTHROW(validate(AdversaryModel{adversary::NonScer{}}));
  CHECK(std::string(adversary_name(AdversaryModel{adversary::PScer{1.0}})) == "pscer");
}
