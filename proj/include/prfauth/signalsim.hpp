#ifndef PRFAUTH_SIGNALSIM_HPP
#define PRFAUTH_SIGNALSIM_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "prfauth/params.hpp"
#include "prfauth/random.hpp"

namespace prfauth {

/// One ranging code, each element +1 or -1.
struct ChipSequence {
  std::vector<std::int8_t> chips;

  std::size_t size() const { return chips.size(); }
};

/// Chip sequence resampled to the receiver rate: sample i is chip
/// floor(i * n / (F*T)).
struct Replica {
  std::vector<std::int8_t> samples;
  ChipSequence source;
};

/// Post-carrier-removal in-phase baseband for one ranging code.
struct BasebandSegment {
  std::vector<double> samples;
};

/// What a forger transmits for one code: chip guesses plus per-chip
/// amplitude (all 1 except for PSCER).
struct SpoofPlan {
  std::vector<std::int8_t> chips;
  std::vector<double> amplitudes;
};

/// How the soft-decision forger maps posterior confidence to a chip.
enum class PscerWeighting {
  Power,      // chip power proportional to confidence (amplitude = sqrt)
  Amplitude,  // chip amplitude proportional to confidence
};

/// Keyed PRF ranging code: ChaCha20 keystream under `seed` with nonce
/// `code_index`, bit k of the stream (LSB first) mapped 0 -> +1, 1 -> -1.
ChipSequence gen_prf_code(const Seed& seed, std::uint64_t code_index, std::size_t n);

/// Sample index -> chip index map for a radio.
std::size_t chip_of_sample(std::size_t sample, std::size_t chips, std::size_t samples_per_code);

Replica resample(const ChipSequence& chips, const RadioModel& radio);

/// sqrt(P) * replica + N(0, sigma^2).
BasebandSegment synth_baseband(const Replica& replica, const ChannelModel& channel, Philox4x32& rng);

/// sqrt(P) * amplitude * resampled plan + N(0, sigma^2).
BasebandSegment synth_baseband(const SpoofPlan& plan, const RadioModel& radio, const ChannelModel& channel,
                               Philox4x32& rng);

/// Adversary's per-chip observations chip * sqrt(snr) + N(0, 1) over a whole
/// aggregation window, codes concatenated.
std::vector<double> measure_chips(std::span<const ChipSequence> window, double chip_snr, Philox4x32& rng);

/// Builds one SpoofPlan per code of the window. `rng` feeds blind guesses
/// (Non-SCER) or chip measurements (HDSCER, PSCER). PSCER amplitudes are
/// normalized so mean(amplitude^2) = 1 over the whole window.
std::vector<SpoofPlan> forge(const AdversaryModel& model, std::span<const ChipSequence> window, Philox4x32& rng,
                             PscerWeighting weighting = PscerWeighting::Power);

/// Builds SCER plans from measurements already taken by measure_chips, so
/// HDSCER and PSCER can share the same observations.
std::vector<SpoofPlan> plans_from_measurements(const AdversaryModel& model, std::span<const ChipSequence> window,
                                               std::span<const double> measurements,
                                               PscerWeighting weighting = PscerWeighting::Power);

struct AuthDecision {
  bool authentic = false;
  double y_bar = 0.0;
};

/// Zero-lag matched filter Y = <replica, segment> / (F*T * sqrt(P)) per code,
/// averaged over the W codes and compared against the threshold (>= passes).
AuthDecision authenticate(std::span<const BasebandSegment> segments, std::span<const Replica> truth,
                          const RadioModel& radio, const ChannelModel& channel, const DetectorConfig& det);

/// Binary dump: "PRFB", u32 version (1), u32 segment count, then per segment
/// a u32 sample count followed by that many float32 samples. All little-endian.
void write_segments(const std::filesystem::path& path, std::span<const BasebandSegment> segments);
std::vector<BasebandSegment> read_segments(const std::filesystem::path& path);

}  // namespace prfauth

#endif  // PRFAUTH_SIGNALSIM_HPP
