#ifndef PRFAUTH_MONTECARLO_HPP
#define PRFAUTH_MONTECARLO_HPP

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "prfauth/analytic.hpp"
#include "prfauth/params.hpp"
#include "prfauth/random.hpp"
#include "prfauth/signalsim.hpp"

namespace prfauth {

struct ExperimentConfig {
  RadioModel radio;
  ChannelModel channel;
  DetectorConfig det;
  AdversaryModel adversary = adversary::NonScer{};
  std::uint64_t trials = 1;
  Seed master_seed{};
  // Names the substream family; experiments sharing an index (and seed) see
  // the same authentic codes and noise draws.
  std::uint64_t experiment_index = 0;
  PscerWeighting pscer_weighting = PscerWeighting::Power;

  void validate() const;
};

/// Counts of one experiment. `missed_detections` counts forgeries accepted,
/// or, for the authentic model, authentic signals rejected (false alarms).
struct TrialSummary {
  std::uint64_t missed_detections = 0;
  std::uint64_t trials = 0;
  double pmd_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

/// pmd_hat +- 3 sqrt(pmd_hat (1 - pmd_hat) / trials), clamped to [0, 1].
TrialSummary summarize(std::uint64_t events, std::uint64_t trials);

/// Worker count from PRFAUTH_THREADS, else hardware concurrency, at least 1.
unsigned default_workers();

/// The replicas a receiver correlates against and what it actually received
/// in one trial.
struct TrialSignals {
  std::vector<Replica> truth;
  std::vector<BasebandSegment> received;
};

TrialSignals synthesize_trial(const ExperimentConfig& config, std::uint64_t trial_index);

/// One trial end to end: keyed authentic codes, forgery, receiver noise,
/// matched filter and threshold.
AuthDecision simulate_trial(const ExperimentConfig& config, std::uint64_t trial_index);

/// Runs every trial; the result does not depend on `workers`.
TrialSummary run_experiment(const ExperimentConfig& config, unsigned workers = 0);

struct WGrid {
  std::vector<std::size_t> ws;
};
struct SnrGrid {
  std::vector<double> snr_db;
};
using SweepAxis = std::variant<WGrid, SnrGrid>;

struct SweepRow {
  double point = 0.0;  // W or adversary SNR in dB
  TrialSummary empirical;
  PmdResult analytic;
  bool contained = false;  // analytic value inside the empirical 99.7% CI
};

/// Per grid point: empirical summary next to the exact prediction (PFA for
/// the authentic model). Grid point k runs as experiment_index base + k.
/// A W grid keeps the base adversary; an SNR grid replaces the base
/// adversary's SNR (HDSCER only). PSCER has no closed form and is rejected.
std::vector<SweepRow> validation_sweep(const ExperimentConfig& base, const SweepAxis& axis, unsigned workers = 0);

struct PscerRow {
  double snr_db = 0.0;
  TrialSummary hdscer;
  TrialSummary pscer;
};

struct PscerAdvantage {
  std::vector<PscerRow> rows;
  double hdscer_crossing_db = 0.0;
  double pscer_crossing_db = 0.0;
  double shift_db = 0.0;  // hdscer_crossing - pscer_crossing
};

/// Runs HDSCER and PSCER over an SNR grid and measures how far left the
/// PSCER curve sits, by linear interpolation of each curve at PMD = 0.5.
/// Paired mode shares authentic codes, adversary measurements and receiver
/// noise between the two forgers at each trial. Throws InfeasibleError when
/// either curve never crosses 0.5 on the grid.
PscerAdvantage pscer_advantage(const ExperimentConfig& base, std::span<const double> snr_grid_db,
                               bool paired = true, unsigned workers = 0);

/// First upward crossing of `level` by linear interpolation; NaN if none.
double crossing_point(std::span<const double> xs, std::span<const double> ys, double level);

}  // namespace prfauth

#endif  // PRFAUTH_MONTECARLO_HPP
