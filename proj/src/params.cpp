#include "prfauth/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "prfauth/normal.hpp"

namespace prfauth {

std::size_t RadioModel::samples_per_code() const {
  return static_cast<std::size_t>(std::llround(sample_rate_hz * code_period_s));
}

void RadioModel::validate() const {
  if (chips < 1) throw std::invalid_argument("radio: chips must be >= 1");
  if (!(code_period_s > 0.0) || !std::isfinite(code_period_s)) {
    throw std::invalid_argument("radio: code period must be positive");
  }
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    throw std::invalid_argument("radio: sample rate must be positive");
  }
  if (std::isnan(cn0_dbhz)) throw std::invalid_argument("radio: C/N0 is NaN");
  if (std::floor(sample_rate_hz * code_period_s) < static_cast<double>(chips)) {
    throw std::invalid_argument("radio: need at least one sample per chip (F*T >= n)");
  }
}

void ChannelModel::validate() const {
  if (!(signal_power >= 0.0) || !std::isfinite(signal_power)) {
    throw std::invalid_argument("channel: signal power must be finite and >= 0");
  }
  if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) {
    throw std::invalid_argument("channel: noise variance must be finite and >= 0");
  }
}

void DetectorConfig::validate() const {
  if (w < 1) throw std::invalid_argument("detector: W must be >= 1");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("detector: threshold must lie in (0, 1)");
  }
}

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

void validate(const AdversaryModel& model) {
  std::visit(Overloaded{[](const adversary::HdScer& m) {
                          if (!(m.chip_snr > 0.0)) throw std::invalid_argument("HDSCER: chip SNR must be > 0");
                        },
                        [](const adversary::PScer& m) {
                          if (!(m.chip_snr > 0.0)) throw std::invalid_argument("PSCER: chip SNR must be > 0");
                        },
                        [](const auto&) {}},
             model);
}

const char* adversary_name(const AdversaryModel& model) {
  return std::visit(Overloaded{[](const adversary::Authentic&) { return "authentic"; },
                               [](const adversary::NonScer&) { return "nonscer"; },
                               [](const adversary::HdScer&) { return "hdscer"; },
                               [](const adversary::PScer&) { return "pscer"; }},
                    model);
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) { return 10.0 * std::log10(x); }

double noise_variance_ratio(const RadioModel& radio) {
  return (radio.sample_rate_hz / 2.0) / db_to_linear(radio.cn0_dbhz);
}

ChannelModel channel_from_radio(const RadioModel& radio) {
  return ChannelModel{1.0, noise_variance_ratio(radio)};
}

double chip_success_probability(double chip_snr) {
  if (chip_snr < 0.0 || std::isnan(chip_snr)) {
    throw std::invalid_argument("chip SNR must be >= 0");
  }
  return normal_cdf(std::sqrt(chip_snr));
}

double adversary_link_budget(double received_power_dbw, double temperature_k, double bandwidth_hz,
                             double antenna_gain_db) {
  if (!(temperature_k > 0.0)) throw std::invalid_argument("link budget: temperature must be > 0");
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("link budget: bandwidth must be > 0");
  const double noise_dbw = 10.0 * std::log10(kBoltzmann * temperature_k * bandwidth_hz);
  return received_power_dbw + antenna_gain_db - noise_dbw;
}

double required_antenna_gain(double received_power_dbw, double temperature_k, double bandwidth_hz,
                             double target_snr_db) {
  return target_snr_db - adversary_link_budget(received_power_dbw, temperature_k, bandwidth_hz, 0.0);
}

RadioModel galileo_e6c_preset() {
  return RadioModel{5115, 1e-3, 10.230e6, 30.0};
}

}  // namespace prfauth
