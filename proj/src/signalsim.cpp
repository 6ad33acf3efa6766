#include "prfauth/signalsim.hpp"

#include <sodium.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "sodium_init.hpp"

namespace prfauth {

namespace {

static_assert(crypto_stream_chacha20_KEYBYTES == 32);
static_assert(crypto_stream_chacha20_NONCEBYTES == 8);

void put_u32(std::ostream& os, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
                         static_cast<char>(v >> 24)};
  os.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("segment dump: truncated");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::vector<SpoofPlan> split_window(std::span<const ChipSequence> window) {
  std::vector<SpoofPlan> plans(window.size());
  for (std::size_t w = 0; w < window.size(); ++w) {
    plans[w].chips.resize(window[w].size());
    plans[w].amplitudes.assign(window[w].size(), 1.0);
  }
  return plans;
}

}  // namespace

ChipSequence gen_prf_code(const Seed& seed, std::uint64_t code_index, std::size_t n) {
  if (n < 1) throw std::invalid_argument("gen_prf_code: n must be >= 1");
  detail::ensure_sodium();
  std::uint8_t nonce[crypto_stream_chacha20_NONCEBYTES];
  for (int i = 0; i < 8; ++i) nonce[i] = static_cast<std::uint8_t>(code_index >> (8 * i));
  std::vector<std::uint8_t> stream((n + 7) / 8);
  crypto_stream_chacha20(stream.data(), stream.size(), nonce, seed.data());
  ChipSequence code;
  code.chips.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    code.chips[i] = ((stream[i / 8] >> (i % 8)) & 1u) ? std::int8_t{-1} : std::int8_t{1};
  }
  return code;
}

std::size_t chip_of_sample(std::size_t sample, std::size_t chips, std::size_t samples_per_code) {
  return static_cast<std::size_t>((static_cast<std::uint64_t>(sample) * chips) / samples_per_code);
}

Replica resample(const ChipSequence& chips, const RadioModel& radio) {
  radio.validate();
  if (chips.size() != radio.chips) throw std::invalid_argument("resample: chip count does not match radio");
  const std::size_t ft = radio.samples_per_code();
  Replica r;
  r.samples.resize(ft);
  for (std::size_t i = 0; i < ft; ++i) r.samples[i] = chips.chips[chip_of_sample(i, chips.size(), ft)];
  r.source = chips;
  return r;
}

BasebandSegment synth_baseband(const Replica& replica, const ChannelModel& channel, Philox4x32& rng) {
  channel.validate();
  const double amp = std::sqrt(channel.signal_power);
  const double sigma = std::sqrt(channel.noise_variance);
  BasebandSegment seg;
  seg.samples.resize(replica.samples.size());
  for (std::size_t i = 0; i < seg.samples.size(); ++i) {
    seg.samples[i] = amp * replica.samples[i];
    if (sigma > 0.0) seg.samples[i] += sigma * rng.normal();
  }
  return seg;
}

BasebandSegment synth_baseband(const SpoofPlan& plan, const RadioModel& radio, const ChannelModel& channel,
                               Philox4x32& rng) {
  channel.validate();
  if (plan.chips.size() != radio.chips || plan.amplitudes.size() != radio.chips) {
    throw std::invalid_argument("synth_baseband: plan size does not match radio");
  }
  const std::size_t ft = radio.samples_per_code();
  const double amp = std::sqrt(channel.signal_power);
  const double sigma = std::sqrt(channel.noise_variance);
  BasebandSegment seg;
  seg.samples.resize(ft);
  for (std::size_t i = 0; i < ft; ++i) {
    const std::size_t c = chip_of_sample(i, radio.chips, ft);
    seg.samples[i] = amp * plan.amplitudes[c] * plan.chips[c];
    if (sigma > 0.0) seg.samples[i] += sigma * rng.normal();
  }
  return seg;
}

std::vector<double> measure_chips(std::span<const ChipSequence> window, double chip_snr, Philox4x32& rng) {
  const double root_snr = std::sqrt(chip_snr);
  std::vector<double> m;
  for (const ChipSequence& code : window) {
    for (std::int8_t c : code.chips) {
      // An infinite SNR is a noiseless observation.
      m.push_back(std::isinf(root_snr) ? static_cast<double>(c) : c * root_snr + rng.normal());
    }
  }
  return m;
}

std::vector<SpoofPlan> plans_from_measurements(const AdversaryModel& model, std::span<const ChipSequence> window,
                                               std::span<const double> measurements, PscerWeighting weighting) {
  std::size_t total = 0;
  for (const ChipSequence& code : window) total += code.size();
  if (measurements.size() != total) throw std::invalid_argument("plans_from_measurements: size mismatch");

  double root_snr = 0.0;
  bool soft = false;
  if (const auto* hd = std::get_if<adversary::HdScer>(&model)) {
    root_snr = std::sqrt(hd->chip_snr);
  } else if (const auto* ps = std::get_if<adversary::PScer>(&model)) {
    root_snr = std::sqrt(ps->chip_snr);
    soft = true;
  } else {
    throw std::invalid_argument("plans_from_measurements: SCER adversary required");
  }

  std::vector<SpoofPlan> plans = split_window(window);
  double sum_sq = 0.0;
  std::size_t k = 0;
  for (SpoofPlan& plan : plans) {
    for (std::size_t i = 0; i < plan.chips.size(); ++i, ++k) {
      const double m = measurements[k];
      plan.chips[i] = m >= 0.0 ? std::int8_t{1} : std::int8_t{-1};
      if (soft) {
        // Posterior of the decided chip with equal priors and unit noise.
        const double confidence =
            std::isinf(root_snr) ? 1.0 : 1.0 / (1.0 + std::exp(-2.0 * root_snr * std::fabs(m)));
        const double a = weighting == PscerWeighting::Power ? std::sqrt(confidence) : confidence;
        plan.amplitudes[i] = a;
        sum_sq += a * a;
      }
    }
  }
  if (soft && total > 0) {
    const double scale = 1.0 / std::sqrt(sum_sq / static_cast<double>(total));
    for (SpoofPlan& plan : plans) {
      for (double& a : plan.amplitudes) a *= scale;
    }
  }
  return plans;
}

std::vector<SpoofPlan> forge(const AdversaryModel& model, std::span<const ChipSequence> window, Philox4x32& rng,
                             PscerWeighting weighting) {
  validate(model);
  if (std::holds_alternative<adversary::Authentic>(model)) {
    throw std::invalid_argument("forge: the authentic model does not forge");
  }
  if (std::holds_alternative<adversary::NonScer>(model)) {
    std::vector<SpoofPlan> plans = split_window(window);
    for (SpoofPlan& plan : plans) {
      for (std::int8_t& c : plan.chips) c = static_cast<std::int8_t>(rng.sign());
    }
    return plans;
  }
  const double snr = std::visit(
      [](const auto& m) -> double {
        if constexpr (requires { m.chip_snr; }) {
          return m.chip_snr;
        } else {
          return 0.0;
        }
      },
      model);
  const std::vector<double> measurements = measure_chips(window, snr, rng);
  return plans_from_measurements(model, window, measurements, weighting);
}

AuthDecision authenticate(std::span<const BasebandSegment> segments, std::span<const Replica> truth,
                          const RadioModel& radio, const ChannelModel& channel, const DetectorConfig& det) {
  det.validate();
  if (segments.size() != det.w || truth.size() != det.w) {
    throw std::invalid_argument("authenticate: need exactly W segments and W replicas");
  }
  if (!(channel.signal_power > 0.0)) throw std::invalid_argument("authenticate: signal power must be > 0");
  const std::size_t ft = radio.samples_per_code();
  const double k_prf = 1.0 / (static_cast<double>(ft) * std::sqrt(channel.signal_power));
  double sum = 0.0;
  for (std::size_t w = 0; w < det.w; ++w) {
    const auto& s = segments[w].samples;
    const auto& r = truth[w].samples;
    if (s.size() != ft || r.size() != ft) throw std::invalid_argument("authenticate: segment length mismatch");
    double dot = 0.0;
    for (std::size_t i = 0; i < ft; ++i) dot += r[i] * s[i];
    sum += k_prf * dot;
  }
  const double y_bar = sum / static_cast<double>(det.w);
  return {y_bar >= det.threshold, y_bar};
}

void write_segments(const std::filesystem::path& path, std::span<const BasebandSegment> segments) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os.write("PRFB", 4);
  put_u32(os, 1);
  put_u32(os, static_cast<std::uint32_t>(segments.size()));
  for (const BasebandSegment& seg : segments) {
    put_u32(os, static_cast<std::uint32_t>(seg.samples.size()));
    for (double x : seg.samples) put_u32(os, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
  }
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

std::vector<BasebandSegment> read_segments(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "PRFB", 4) != 0) {
    throw std::runtime_error("segment dump: bad magic");
  }
  if (get_u32(is) != 1) throw std::runtime_error("segment dump: unsupported version");
  std::vector<BasebandSegment> segments(get_u32(is));
  for (BasebandSegment& seg : segments) {
    seg.samples.resize(get_u32(is));
    for (double& x : seg.samples) x = std::bit_cast<float>(get_u32(is));
  }
  return segments;
}

}  // namespace prfauth
