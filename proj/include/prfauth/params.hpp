#ifndef PRFAUTH_PARAMS_HPP
#define PRFAUTH_PARAMS_HPP

#include <cstddef>
#include <variant>

namespace prfauth {

/// Signal structure and receiver sampling assumptions for one ranging code.
struct RadioModel {
  std::size_t chips = 1;         // n, chips per ranging code
  double code_period_s = 1e-3;   // T
  double sample_rate_hz = 2e3;   // F
  double cn0_dbhz = 30.0;        // assumed receiver C/N0

  /// round(F*T): length of every replica and baseband segment.
  std::size_t samples_per_code() const;

  /// Throws std::invalid_argument when an invariant does not hold.
  void validate() const;
};

/// Received power and per-sample noise variance, both in the same
/// normalized units. Only the ratio enters any formula.
struct ChannelModel {
  double signal_power = 1.0;
  double noise_variance = 0.0;

  double noise_to_signal() const { return noise_variance / signal_power; }
  void validate() const;
};

struct DetectorConfig {
  std::size_t w = 1;        // ranging codes averaged per decision
  double threshold = 0.5;   // y0 on the averaged statistic

  void validate() const;
};

namespace adversary {
struct Authentic {};
struct NonScer {};
/// Hard-decision chip estimator with the given linear chip SNR.
struct HdScer {
  double chip_snr = 1.0;
};
/// Soft chip estimator: power per chip follows posterior confidence.
struct PScer {
  double chip_snr = 1.0;
};
}  // namespace adversary

using AdversaryModel =
    std::variant<adversary::Authentic, adversary::NonScer, adversary::HdScer, adversary::PScer>;

void validate(const AdversaryModel& model);
const char* adversary_name(const AdversaryModel& model);

double db_to_linear(double x_db);
double linear_to_db(double x);

/// Per-sample sigma^2/P for real sampling at rate F: (F/2) / (C/N0).
double noise_variance_ratio(const RadioModel& radio);

/// Channel normalized to P = 1 with the noise implied by the radio's C/N0.
ChannelModel channel_from_radio(const RadioModel& radio);

/// Probability that a single hard chip decision is right: Phi(sqrt(snr)).
double chip_success_probability(double chip_snr);

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K

/// Adversary precorrelation chip SNR in dB from a received power, thermal
/// noise k*T*B and an antenna gain.
double adversary_link_budget(double received_power_dbw, double temperature_k, double bandwidth_hz,
                             double antenna_gain_db);

/// Antenna gain (dB) that lifts the link budget to target_snr_db.
double required_antenna_gain(double received_power_dbw, double temperature_k, double bandwidth_hz,
                             double target_snr_db);

/// Galileo E6-C: 5115 chips, 1 ms codes, Nyquist 10.230 MHz, 30 dB-Hz.
RadioModel galileo_e6c_preset();

}  // namespace prfauth

#endif  // PRFAUTH_PARAMS_HPP
