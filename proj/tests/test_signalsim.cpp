#include <doctest.h>

#include <array>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <filesystem>
#include <numeric>
#include <vector>

#include "prfauth/analytic.hpp"
#include "prfauth/signalsim.hpp"

using namespace prfauth;

namespace {

const RadioModel kSmall{31, 1e-3, 62e3, 40.0};

std::vector<ChipSequence> window_of(const Seed& seed, std::size_t w, std::size_t n) {
  std::vector<ChipSequence> codes;
  for (std::size_t i = 0; i < w; ++i) codes.push_back(gen_prf_code(seed, i, n));
  return codes;
}

}  // namespace

TEST_CASE("PRF codes") {
  const Seed seed = seed_from_u64(99);
  const ChipSequence a = gen_prf_code(seed, 0, 5115);
  CHECK(a.chips == gen_prf_code(seed, 0, 5115).chips);
  for (auto c : a.chips) CHECK((c == 1 || c == -1));

  // Prefixes agree: the code is a keystream read bit by bit.
  const ChipSequence head = gen_prf_code(seed, 0, 13);
  CHECK(std::equal(head.chips.begin(), head.chips.end(), a.chips.begin()));

  const ChipSequence big = gen_prf_code(seed, 1, 1'000'000);
  const double mean = std::accumulate(big.chips.begin(), big.chips.end(), 0.0) / 1e6;
  CHECK(std::fabs(mean) < 5e-3);

  // Different index or key: correlation behaves like independent noise.
  const ChipSequence b = gen_prf_code(seed, 2, 1'000'000);
  const ChipSequence c = gen_prf_code(seed_from_u64(100), 1, 1'000'000);
  double xb = 0, xc = 0;
  for (std::size_t i = 0; i < big.size(); ++i) {
    xb += big.chips[i] * b.chips[i];
    xc += big.chips[i] * c.chips[i];
  }
  CHECK(std::fabs(xb / 1e6) < 5e-3);
  CHECK(std::fabs(xc / 1e6) < 5e-3);
  CHECK_THROWS_AS(gen_prf_code(seed, 0, 0), std::invalid_argument);
}

TEST_CASE("PRF run lengths look geometric") {
  const ChipSequence code = gen_prf_code(seed_from_u64(5), 0, 1'000'000);
  std::array<double, 11> counts{};
  std::size_t runs = 0;
  std::size_t len = 1;
  for (std::size_t i = 1; i <= code.size(); ++i) {
    if (i < code.size() && code.chips[i] == code.chips[i - 1]) {
      ++len;
      continue;
    }
    ++counts[std::min<std::size_t>(len, 11) - 1];
    ++runs;
    len = 1;
  }
  double chi2 = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double prob = k + 1 < counts.size() ? std::ldexp(1.0, -static_cast<int>(k + 1)) : std::ldexp(1.0, -10);
    const double expect = prob * static_cast<double>(runs);
    chi2 += (counts[k] - expect) * (counts[k] - expect) / expect;
  }
  // 99.9th percentile of chi-square with 10 degrees of freedom.
  CHECK(chi2 < 29.588);
}

TEST_CASE("chip to sample mapping") {
  const std::size_t expected[] = {0, 0, 0, 1, 1, 2, 2, 2, 3, 3};
  for (std::size_t i = 0; i < 10; ++i) CHECK(chip_of_sample(i, 4, 10) == expected[i]);
  CHECK(chip_of_sample(10229, 5115, 10230) == 5114);
  CHECK(chip_of_sample(1, 5115, 10230) == 0);
  CHECK(chip_of_sample(2, 5115, 10230) == 1);

  const ChipSequence code{{1, -1, -1, 1}};
  const Replica r = resample(code, RadioModel{4, 1e-3, 10e3, 30});
  CHECK(r.samples == std::vector<std::int8_t>{1, 1, 1, -1, -1, -1, -1, -1, 1, 1});
  CHECK_THROWS_AS(resample(code, RadioModel{5, 1e-3, 10e3, 30}), std::invalid_argument);
}

TEST_CASE("noise-free authentication") {
  const Seed seed = seed_from_u64(3);
  const auto codes = window_of(seed, 4, kSmall.chips);
  std::vector<Replica> truth;
  std::vector<BasebandSegment> segs, negated;
  Philox4x32 rng(1, 1);
  const ChannelModel ch{2.5, 0.0};
  for (const auto& c : codes) {
    truth.push_back(resample(c, kSmall));
    segs.push_back(synth_baseband(truth.back(), ch, rng));
    BasebandSegment n = segs.back();
    for (double& x : n.samples) x = -x;
    negated.push_back(n);
  }
  const AuthDecision good = authenticate(segs, truth, kSmall, ch, DetectorConfig{4, 0.5});
  CHECK(good.authentic);
  CHECK(good.y_bar == doctest::Approx(1.0).epsilon(1e-14));
  const AuthDecision bad = authenticate(negated, truth, kSmall, ch, DetectorConfig{4, 0.5});
  CHECK_FALSE(bad.authentic);
  CHECK(bad.y_bar == doctest::Approx(-1.0).epsilon(1e-14));

  // Threshold is inclusive.
  CHECK(authenticate(segs, truth, kSmall, ch, DetectorConfig{4, 1.0 - 1e-15}).authentic);
  CHECK_THROWS_AS(authenticate(segs, truth, kSmall, ch, DetectorConfig{3, 0.5}), std::invalid_argument);
}

TEST_CASE("authentic statistic has the predicted spread") {
  const RadioModel radio = kSmall;
  const ChannelModel ch = channel_from_radio(radio);
  const Seed seed = seed_from_u64(8);
  const std::size_t w = 2;
  const int trials = 4000;
  double s = 0, s2 = 0;
  Philox4x32 rng(11, 0);
  for (int t = 0; t < trials; ++t) {
    std::vector<Replica> truth;
    std::vector<BasebandSegment> segs;
    for (std::size_t i = 0; i < w; ++i) {
      truth.push_back(resample(gen_prf_code(seed, t * w + i, radio.chips), radio));
      segs.push_back(synth_baseband(truth.back(), ch, rng));
    }
    const double y = authenticate(segs, truth, radio, ch, DetectorConfig{w, 0.5}).y_bar;
    s += y;
    s2 += y * y;
  }
  const double mean = s / trials;
  const double var = s2 / trials - mean * mean;
  const double predicted = averaged_noise_variance(radio, ch, w);
  CHECK(std::fabs(mean - 1.0) < 5 * std::sqrt(predicted / trials));
  CHECK(var == doctest::Approx(predicted).epsilon(0.1));
}

TEST_CASE("forging limits") {
  const Seed seed = seed_from_u64(4);
  const auto codes = window_of(seed, 3, 1000);
  Philox4x32 rng(2, 2);

  CHECK_THROWS_AS(forge(adversary::Authentic{}, codes, rng), std::invalid_argument);

  const auto perfect = forge(adversary::HdScer{INFINITY}, codes, rng);
  for (std::size_t w = 0; w < codes.size(); ++w) {
    CHECK(perfect[w].chips == codes[w].chips);
    CHECK(perfect[w].amplitudes == std::vector<double>(1000, 1.0));
  }
  const auto soft_perfect = forge(adversary::PScer{INFINITY}, codes, rng);
  for (std::size_t w = 0; w < codes.size(); ++w) {
    CHECK(soft_perfect[w].chips == codes[w].chips);
    for (double a : soft_perfect[w].amplitudes) CHECK(a == doctest::Approx(1.0).epsilon(1e-15));
  }

  const auto blind = forge(adversary::NonScer{}, codes, rng);
  std::size_t agree = 0;
  for (std::size_t w = 0; w < codes.size(); ++w) {
    for (std::size_t i = 0; i < 1000; ++i) agree += blind[w].chips[i] == codes[w].chips[i];
  }
  CHECK(std::fabs(agree / 3000.0 - 0.5) < 5 * std::sqrt(0.25 / 3000));
}

TEST_CASE("hard-decision agreement at the breaking SNR") {
  const std::vector<ChipSequence> code{gen_prf_code(seed_from_u64(6), 0, 1'000'000)};
  const double snr = db_to_linear(-3.42);
  Philox4x32 rng(9, 9);
  const auto plan = forge(adversary::HdScer{snr}, code, rng);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < code[0].size(); ++i) agree += plan[0].chips[i] == code[0].chips[i];
  CHECK(chip_success_probability(snr) == doctest::Approx(0.75).epsilon(2e-4));
  CHECK(std::fabs(agree / 1e6 - 0.75) <= 0.0013);
}

TEST_CASE("soft-decision plans") {
  const auto codes = window_of(seed_from_u64(12), 5, 997);
  Philox4x32 rng(3, 3);
  const double snr = db_to_linear(-4.0);
  const std::vector<double> m = measure_chips(codes, snr, rng);
  REQUIRE(m.size() == 5 * 997);

  const auto hard = plans_from_measurements(adversary::HdScer{snr}, codes, m);
  for (PscerWeighting weighting : {PscerWeighting::Power, PscerWeighting::Amplitude}) {
    const auto soft = plans_from_measurements(adversary::PScer{snr}, codes, m, weighting);
    double sum_sq = 0.0;
    std::size_t k = 0;
    for (std::size_t w = 0; w < codes.size(); ++w) {
      CHECK(soft[w].chips == hard[w].chips);
      for (std::size_t i = 0; i < soft[w].amplitudes.size(); ++i, ++k) {
        const double a = soft[w].amplitudes[i];
        sum_sq += a * a;
        CHECK(a > 0.0);
      }
    }
    CHECK(std::fabs(sum_sq / static_cast<double>(k) - 1.0) <= 1e-12);
  }

  // Larger measurements get larger amplitudes.
  const std::vector<ChipSequence> one{ChipSequence{{1, 1, 1}}};
  const std::vector<double> obs{0.1, -0.5, 2.0};
  const auto p = plans_from_measurements(adversary::PScer{1.0}, one, obs);
  CHECK(p[0].chips == std::vector<std::int8_t>{1, -1, 1});
  CHECK(p[0].amplitudes[0] < p[0].amplitudes[1]);
  CHECK(p[0].amplitudes[1] < p[0].amplitudes[2]);
  CHECK_THROWS_AS(plans_from_measurements(adversary::NonScer{}, one, obs), std::invalid_argument);
  CHECK_THROWS_AS(plans_from_measurements(adversary::PScer{1.0}, one, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("spoofed baseband follows the plan") {
  const RadioModel radio{4, 1e-3, 10e3, 30};
  const SpoofPlan plan{{1, -1, -1, 1}, {0.5, 1.0, 2.0, 1.0}};
  Philox4x32 rng(0, 0);
  const BasebandSegment seg = synth_baseband(plan, radio, ChannelModel{4.0, 0.0}, rng);
  const std::vector<double> expected{1, 1, 1, -2, -2, -4, -4, -4, 2, 2};
  CHECK(seg.samples == expected);
  CHECK_THROWS_AS(synth_baseband(SpoofPlan{{1}, {1.0}}, radio, ChannelModel{}, rng), std::invalid_argument);
}

TEST_CASE("segment dump round trip") {
  const auto path = std::filesystem::temp_directory_path() / "prfauth_test_dump.bin";
  std::vector<BasebandSegment> segs{{{0.25, -1.5, 3.0}}, {{}}, {{1e-3}}};
  write_segments(path, segs);
  const auto back = read_segments(path);
  REQUIRE(back.size() == 3);
  CHECK(back[0].samples == std::vector<double>{0.25, -1.5, 3.0});
  CHECK(back[1].samples.empty());
  CHECK(back[2].samples[0] == static_cast<double>(static_cast<float>(1e-3)));
  CHECK(std::filesystem::file_size(path) == 4 + 4 + 4 + (4 + 12) + 4 + (4 + 4));
  std::filesystem::remove(path);
  CHECK_THROWS(read_segments(path));
}
