#include "prfauth/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "prfauth/errors.hpp"

namespace prfauth {

void ExperimentConfig::validate() const {
  radio.validate();
  channel.validate();
  det.validate();
  prfauth::validate(adversary);
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (!(channel.signal_power > 0.0)) throw std::invalid_argument("experiment: signal power must be > 0");
}

TrialSummary summarize(std::uint64_t events, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("summarize: zero trials");
  if (events > trials) throw std::invalid_argument("summarize: more events than trials");
  TrialSummary s;
  s.missed_detections = events;
  s.trials = trials;
  s.pmd_hat = static_cast<double>(events) / static_cast<double>(trials);
  const double half = 3.0 * std::sqrt(s.pmd_hat * (1.0 - s.pmd_hat) / static_cast<double>(trials));
  s.ci_low = std::max(0.0, s.pmd_hat - half);
  s.ci_high = std::min(1.0, s.pmd_hat + half);
  return s;
}

unsigned default_workers() {
  if (const char* env = std::getenv("PRFAUTH_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

TrialSignals synthesize_trial(const ExperimentConfig& config, std::uint64_t trial_index) {
  const std::size_t w = config.det.w;
  const Seed prf_key = derive_seed(config.master_seed, "prf-codes", config.experiment_index, trial_index);
  Philox4x32 adversary_rng(derive_key(config.master_seed, "adversary", config.experiment_index), trial_index);
  Philox4x32 receiver_rng(derive_key(config.master_seed, "receiver", config.experiment_index), trial_index);

  TrialSignals signals;
  std::vector<ChipSequence> codes;
  codes.reserve(w);
  signals.truth.reserve(w);
  for (std::size_t k = 0; k < w; ++k) {
    codes.push_back(gen_prf_code(prf_key, k, config.radio.chips));
    signals.truth.push_back(resample(codes.back(), config.radio));
  }

  signals.received.reserve(w);
  if (std::holds_alternative<adversary::Authentic>(config.adversary)) {
    for (const Replica& r : signals.truth) {
      signals.received.push_back(synth_baseband(r, config.channel, receiver_rng));
    }
  } else {
    const std::vector<SpoofPlan> plans = forge(config.adversary, codes, adversary_rng, config.pscer_weighting);
    for (const SpoofPlan& plan : plans) {
      signals.received.push_back(synth_baseband(plan, config.radio, config.channel, receiver_rng));
    }
  }
  return signals;
}

AuthDecision simulate_trial(const ExperimentConfig& config, std::uint64_t trial_index) {
  const TrialSignals signals = synthesize_trial(config, trial_index);
  return authenticate(signals.received, signals.truth, config.radio, config.channel, config.det);
}

TrialSummary run_experiment(const ExperimentConfig& config, unsigned workers) {
  config.validate();
  if (workers == 0) workers = default_workers();
  const bool count_rejections = std::holds_alternative<adversary::Authentic>(config.adversary);
  const std::uint64_t n_workers = std::min<std::uint64_t>(workers, config.trials);

  std::vector<std::uint64_t> counts(n_workers, 0);
  auto work = [&](std::uint64_t worker) {
    const std::uint64_t begin = config.trials * worker / n_workers;
    const std::uint64_t end = config.trials * (worker + 1) / n_workers;
    std::uint64_t events = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      const AuthDecision d = simulate_trial(config, t);
      if (d.authentic != count_rejections) ++events;
    }
    counts[worker] = events;
  };

  if (n_workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (std::uint64_t k = 0; k < n_workers; ++k) pool.emplace_back(work, k);
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  return summarize(total, config.trials);
}

namespace {

PmdResult analytic_prediction(const ExperimentConfig& config) {
  if (std::holds_alternative<adversary::Authentic>(config.adversary)) {
    PmdResult r;
    r.pmd = pfa(config.radio, config.channel, config.det);
    return r;
  }
  if (std::holds_alternative<adversary::NonScer>(config.adversary)) {
    return pmd_exact(config.radio, config.channel, config.det, 0.5);
  }
  if (const auto* hd = std::get_if<adversary::HdScer>(&config.adversary)) {
    const double p = chip_success_probability(hd->chip_snr);
    if (p >= 1.0) return PmdResult{LogProb::one(), PmdMethod::Exact, {}, {}};
    return pmd_exact(config.radio, config.channel, config.det, p);
  }
  throw std::invalid_argument("validation_sweep: PSCER has no analytic prediction");
}

}  // namespace

std::vector<SweepRow> validation_sweep(const ExperimentConfig& base, const SweepAxis& axis, unsigned workers) {
  std::vector<ExperimentConfig> configs;
  std::vector<double> points;
  if (const auto* g = std::get_if<WGrid>(&axis)) {
    for (std::size_t w : g->ws) {
      ExperimentConfig c = base;
      c.det.w = w;
      configs.push_back(c);
      points.push_back(static_cast<double>(w));
    }
  } else {
    const auto& grid = std::get<SnrGrid>(axis);
    if (!std::holds_alternative<adversary::HdScer>(base.adversary)) {
      throw std::invalid_argument("validation_sweep: an SNR grid needs an HDSCER base adversary");
    }
    for (double snr_db : grid.snr_db) {
      ExperimentConfig c = base;
      c.adversary = adversary::HdScer{db_to_linear(snr_db)};
      configs.push_back(c);
      points.push_back(snr_db);
    }
  }
  if (configs.empty()) throw std::invalid_argument("validation_sweep: empty grid");

  std::vector<SweepRow> rows;
  rows.reserve(configs.size());
  for (std::size_t k = 0; k < configs.size(); ++k) {
    configs[k].experiment_index = base.experiment_index + k;
    SweepRow row;
    row.point = points[k];
    row.analytic = analytic_prediction(configs[k]);
    row.empirical = run_experiment(configs[k], workers);
    const double predicted = row.analytic.pmd.linear();
    row.contained = predicted >= row.empirical.ci_low && predicted <= row.empirical.ci_high;
    rows.push_back(row);
  }
  return rows;
}

double crossing_point(std::span<const double> xs, std::span<const double> ys, double level) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (ys[i] < level && ys[i + 1] >= level) {
      const double t = (level - ys[i]) / (ys[i + 1] - ys[i]);
      return xs[i] + t * (xs[i + 1] - xs[i]);
    }
  }
  if (!ys.empty() && ys.front() == level) return xs.front();
  return std::numeric_limits<double>::quiet_NaN();
}

PscerAdvantage pscer_advantage(const ExperimentConfig& base, std::span<const double> snr_grid_db, bool paired,
                               unsigned workers) {
  if (snr_grid_db.empty()) throw std::invalid_argument("pscer_advantage: empty grid");
  PscerAdvantage out;
  std::vector<double> hd_curve;
  std::vector<double> ps_curve;
  for (std::size_t k = 0; k < snr_grid_db.size(); ++k) {
    const double snr = db_to_linear(snr_grid_db[k]);
    ExperimentConfig hd = base;
    hd.adversary = adversary::HdScer{snr};
    hd.experiment_index = base.experiment_index + k;
    ExperimentConfig ps = base;
    ps.adversary = adversary::PScer{snr};
    ps.experiment_index = paired ? hd.experiment_index : base.experiment_index + snr_grid_db.size() + k;

    PscerRow row{snr_grid_db[k], run_experiment(hd, workers), run_experiment(ps, workers)};
    hd_curve.push_back(row.hdscer.pmd_hat);
    ps_curve.push_back(row.pscer.pmd_hat);
    out.rows.push_back(row);
  }
  out.hdscer_crossing_db = crossing_point(snr_grid_db, hd_curve, 0.5);
  out.pscer_crossing_db = crossing_point(snr_grid_db, ps_curve, 0.5);
  if (std::isnan(out.hdscer_crossing_db) || std::isnan(out.pscer_crossing_db)) {
    throw InfeasibleError("pscer_advantage: a PMD curve never crosses 0.5 on this grid");
  }
  out.shift_db = out.hdscer_crossing_db - out.pscer_crossing_db;
  return out;
}

}  // namespace prfauth
