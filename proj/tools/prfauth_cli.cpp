// prfauth: security probabilities for PRF-based GNSS ranging authentication.
//
// Exit codes: 0 success, 2 usage error, 3 infeasible or degenerate request.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "prfauth/analytic.hpp"
#include "prfauth/errors.hpp"
#include "prfauth/figures.hpp"
#include "prfauth/montecarlo.hpp"
#include "prfauth/output.hpp"
#include "prfauth/params.hpp"
#include "prfauth/random.hpp"
#include "prfauth/signalsim.hpp"

namespace {

using namespace prfauth;

constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RadioFlags {
  std::string preset;
  std::optional<std::size_t> chips;
  std::optional<double> period_s;
  std::optional<double> sample_rate_hz;
  std::optional<double> cn0_dbhz;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--preset", preset, "Radio preset: galileo-e6c or validation");
    cmd.add_option("--chips", chips, "Chips per ranging code (n)");
    cmd.add_option("--period-s", period_s, "Ranging code period T in seconds");
    cmd.add_option("--sample-rate-hz", sample_rate_hz, "Receiver sample rate F in Hz");
    cmd.add_option("--cn0-dbhz", cn0_dbhz, "Receiver C/N0 in dB-Hz");
  }

  // Explicit flags override the preset, which overrides `fallback`.
  RadioModel resolve(const RadioModel& fallback) const {
    RadioModel r = fallback;
    if (preset == "galileo-e6c") {
      r = galileo_e6c_preset();
    } else if (preset == "validation") {
      r = validation_radio(fallback.cn0_dbhz);
    } else if (!preset.empty()) {
      throw UsageError("unknown preset '" + preset + "'");
    }
    if (chips) r.chips = *chips;
    if (period_s) r.code_period_s = *period_s;
    if (sample_rate_hz) r.sample_rate_hz = *sample_rate_hz;
    if (cn0_dbhz) r.cn0_dbhz = *cn0_dbhz;
    r.validate();
    return r;
  }
};

struct OutputFlags {
  std::string format = "json";
  std::string out;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd.add_option("--out", out, "Write to this file instead of stdout");
  }

  void emit(const OutputRecord& record) const {
    std::ostringstream ss;
    if (format == "csv") {
      write_csv(ss, record);
    } else {
      write_json(ss, record);
    }
    if (out.empty()) {
      std::cout << ss.str();
    } else {
      std::ofstream os(out, std::ios::binary);
      if (!os) throw std::runtime_error("cannot open " + out);
      os << ss.str();
    }
  }
};

unsigned resolve_workers(int threads) { return threads > 0 ? static_cast<unsigned>(threads) : default_workers(); }

// --- pfa / pmd ---------------------------------------------------------------

struct ProbabilityCmd {
  RadioFlags radio;
  OutputFlags output;
  std::size_t w = 1;
  double threshold = 0.5;
  std::optional<double> p_chip;
  std::optional<double> adv_snr_db;
  std::string method = "exact";
  bool truncate = false;
};

OutputRecord run_pfa(const ProbabilityCmd& c) {
  const RadioModel radio = c.radio.resolve(galileo_e6c_preset());
  const DetectorConfig det{c.w, c.threshold};
  const LogProb value = pfa(radio, channel_from_radio(radio), det);
  OutputRecord rec;
  rec.command = "pfa";
  record_radio(rec, radio);
  rec.param("w", static_cast<double>(c.w));
  rec.param("threshold", c.threshold);
  rec.columns = {"w", "threshold"};
  add_probability_columns(rec.columns, "pfa");
  std::vector<Cell> row{static_cast<double>(c.w), c.threshold};
  append_probability(row, value);
  rec.rows.push_back(row);
  return rec;
}

OutputRecord run_pmd(const ProbabilityCmd& c) {
  const RadioModel radio = c.radio.resolve(galileo_e6c_preset());
  const DetectorConfig det{c.w, c.threshold};
  double p = 0.5;
  if (c.p_chip) p = *c.p_chip;
  if (c.adv_snr_db) p = chip_success_probability(db_to_linear(*c.adv_snr_db));

  const ChannelModel channel = channel_from_radio(radio);
  PmdResult result;
  if (c.method == "clt") {
    result = pmd_clt(radio, channel, det, p);
  } else {
    ExactSumOptions opts;
    opts.truncate = c.truncate;
    result = pmd_exact(radio, channel, det, p, opts);
  }
  OutputRecord rec;
  rec.command = "pmd";
  record_radio(rec, radio);
  rec.param("w", static_cast<double>(c.w));
  rec.param("threshold", c.threshold);
  rec.param("p_chip", p);
  if (c.adv_snr_db) rec.param("adv_snr_db", *c.adv_snr_db);
  rec.param("method", method_name(result.method));
  rec.columns = {"w", "threshold", "p_chip"};
  add_probability_columns(rec.columns, "pmd");
  std::vector<Cell> row{static_cast<double>(c.w), c.threshold, p};
  append_probability(row, result.pmd);
  if (result.discarded_bound) {
    add_probability_columns(rec.columns, "discarded_bound");
    append_probability(row, *result.discarded_bound);
  }
  rec.rows.push_back(row);
  return rec;
}

// --- search ------------------------------------------------------------------

struct SearchCmd {
  RadioFlags radio;
  OutputFlags output;
  unsigned bits = 128;
  std::string free = "w";
  std::optional<std::size_t> w;
  double threshold = 0.5;
  std::size_t w_cap = 100'000;
};

OutputRecord search_record(const SearchCmd& c, const RadioModel& radio) {
  OutputRecord rec;
  rec.command = "search";
  record_radio(rec, radio);
  rec.param("bits", static_cast<double>(c.bits));
  rec.param("free", c.free);
  rec.param("threshold", c.threshold);
  if (c.free == "w") rec.param("w_cap", static_cast<double>(c.w_cap));
  if (c.w) rec.param("w", static_cast<double>(*c.w));
  return rec;
}

int run_search(const SearchCmd& c) {
  const RadioModel radio = c.radio.resolve(galileo_e6c_preset());
  OutputRecord rec = search_record(c, radio);
  try {
    if (c.free == "w") {
      if (c.w) throw UsageError("--w cannot be given when W is the free variable");
      const WSearchResult r = min_w_for_security(radio, channel_from_radio(radio), c.bits, c.threshold, c.w_cap);
      rec.columns = {"w"};
      add_probability_columns(rec.columns, "pmd");
      std::vector<Cell> row{static_cast<double>(r.w)};
      append_probability(row, r.pmd);
      rec.rows.push_back(row);
    } else {
      if (!c.w) throw UsageError("--free cn0 needs --w");
      const double cn0 = min_cn0(radio, *c.w, c.bits, c.threshold);
      RadioModel at = radio;
      at.cn0_dbhz = cn0;
      rec.columns = {"w", "min_cn0_dbhz"};
      add_probability_columns(rec.columns, "pmd_clt");
      std::vector<Cell> row{static_cast<double>(*c.w), cn0};
      append_probability(row, pmd_clt(at, channel_from_radio(at), DetectorConfig{*c.w, c.threshold}, 0.5).pmd);
      rec.rows.push_back(row);
    }
  } catch (const InfeasibleError& e) {
    rec.param("error", e.what());
    c.output.emit(rec);
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  }
  c.output.emit(rec);
  return 0;
}

// --- figures -----------------------------------------------------------------

struct FiguresCmd {
  RadioFlags radio;
  std::string figure;
  std::string out;
  double threshold = 0.5;
  std::vector<std::size_t> ws;
  std::optional<std::size_t> w_max;
  std::vector<double> snr_db;
  std::optional<double> snr_min, snr_max, snr_step;
  std::vector<double> thresholds;
  std::vector<unsigned> bits;
  std::string method = "clt";
  std::optional<std::uint64_t> trials;
  std::string seed;
  bool unpaired = false;
  std::string weighting = "power";
  int threads = 0;
};

int run_figures(const FiguresCmd& c) {
  const auto figure = parse_figure(c.figure);
  if (!figure) throw UsageError("unknown figure '" + c.figure + "'");
  FigureRequest req = default_figure_request(*figure);
  req.radio = c.radio.resolve(req.radio);
  req.threshold = c.threshold;
  if (!c.ws.empty()) req.ws = c.ws;
  if (c.w_max) {
    req.ws.clear();
    for (std::size_t w = 1; w <= *c.w_max; ++w) req.ws.push_back(w);
  }
  if (!c.snr_db.empty()) req.snr_db = c.snr_db;
  if (c.snr_min || c.snr_max || c.snr_step) {
    if (!(c.snr_min && c.snr_max && c.snr_step) || *c.snr_step <= 0.0 || *c.snr_max < *c.snr_min) {
      throw UsageError("--snr-min, --snr-max and --snr-step go together (step > 0, max >= min)");
    }
    req.snr_db.clear();
    for (double s = *c.snr_min; s <= *c.snr_max + 1e-9; s += *c.snr_step) req.snr_db.push_back(s);
  }
  if (!c.thresholds.empty()) req.thresholds = c.thresholds;
  if (!c.bits.empty()) req.bits = c.bits;
  req.method = c.method == "exact" ? PmdMethod::Exact : PmdMethod::Clt;
  if (figure_is_simulated(*figure)) {
    if (!c.trials || c.seed.empty()) throw UsageError("simulated figures need --trials and --seed");
    req.trials = *c.trials;
    try {
      req.seed = parse_seed(c.seed);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  req.paired = !c.unpaired;
  req.weighting = c.weighting == "amplitude" ? PscerWeighting::Amplitude : PscerWeighting::Power;
  req.workers = resolve_workers(c.threads);

  const OutputRecord rec = make_figure(req);
  std::ostringstream ss;
  write_csv(ss, rec);
  if (c.out.empty() || c.out == "-") {
    std::cout << ss.str();
  } else {
    std::ofstream os(c.out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + c.out);
    os << ss.str();
  }
  return 0;
}

// --- linkbudget --------------------------------------------------------------

struct LinkBudgetCmd {
  OutputFlags output;
  double rx_power_dbw = -153.0;
  double temp_k = 300.0;
  double bandwidth_hz = 10.230e6;
  std::optional<double> gain_db;
  std::optional<double> target_snr_db;
};

OutputRecord run_linkbudget(const LinkBudgetCmd& c) {
  if (c.gain_db.has_value() == c.target_snr_db.has_value()) {
    throw UsageError("give exactly one of --gain-db or --target-snr-db");
  }
  OutputRecord rec;
  rec.command = "linkbudget";
  rec.param("rx_power_dbw", c.rx_power_dbw);
  rec.param("temp_k", c.temp_k);
  rec.param("bandwidth_hz", c.bandwidth_hz);
  double gain = 0.0;
  double snr = 0.0;
  if (c.gain_db) {
    gain = *c.gain_db;
    snr = adversary_link_budget(c.rx_power_dbw, c.temp_k, c.bandwidth_hz, gain);
    rec.param("gain_db", gain);
  } else {
    snr = *c.target_snr_db;
    gain = required_antenna_gain(c.rx_power_dbw, c.temp_k, c.bandwidth_hz, snr);
    rec.param("target_snr_db", snr);
  }
  const double p = chip_success_probability(db_to_linear(snr));
  rec.columns = {"antenna_gain_db", "chip_snr_db", "p_chip", "noise_dbw"};
  rec.rows.push_back({gain, snr, p, 10.0 * std::log10(kBoltzmann * c.temp_k * c.bandwidth_hz)});
  return rec;
}

// --- simulate ----------------------------------------------------------------

struct SimulateCmd {
  RadioFlags radio;
  OutputFlags output;
  std::string adversary = "nonscer";
  std::optional<double> adv_snr_db;
  std::size_t w = 1;
  double threshold = 0.5;
  std::uint64_t trials = 1000;
  std::string seed;
  std::string weighting = "power";
  std::string dump;
  int threads = 0;
};

OutputRecord run_simulate(const SimulateCmd& c) {
  if (c.seed.empty()) throw UsageError("simulate needs --seed");
  ExperimentConfig cfg;
  cfg.radio = c.radio.resolve(validation_radio(32.0));
  cfg.channel = channel_from_radio(cfg.radio);
  cfg.det = DetectorConfig{c.w, c.threshold};
  cfg.trials = c.trials;
  try {
    cfg.master_seed = parse_seed(c.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.pscer_weighting = c.weighting == "amplitude" ? PscerWeighting::Amplitude : PscerWeighting::Power;
  const bool needs_snr = c.adversary == "hdscer" || c.adversary == "pscer";
  if (needs_snr != c.adv_snr_db.has_value()) {
    throw UsageError("--adv-snr-db is required for hdscer/pscer and not allowed otherwise");
  }
  if (c.adversary == "authentic") {
    cfg.adversary = adversary::Authentic{};
  } else if (c.adversary == "nonscer") {
    cfg.adversary = adversary::NonScer{};
  } else if (c.adversary == "hdscer") {
    cfg.adversary = adversary::HdScer{db_to_linear(*c.adv_snr_db)};
  } else {
    cfg.adversary = adversary::PScer{db_to_linear(*c.adv_snr_db)};
  }

  const TrialSummary s = run_experiment(cfg, resolve_workers(c.threads));
  if (!c.dump.empty()) write_segments(c.dump, synthesize_trial(cfg, 0).received);

  OutputRecord rec;
  rec.command = "simulate";
  record_radio(rec, cfg.radio);
  rec.param("adversary", c.adversary);
  if (c.adv_snr_db) rec.param("adv_snr_db", *c.adv_snr_db);
  rec.param("w", static_cast<double>(c.w));
  rec.param("threshold", c.threshold);
  rec.param("trials", static_cast<double>(c.trials));
  rec.param("seed", seed_to_hex(cfg.master_seed));
  if (c.adversary == "pscer") rec.param("pscer_weighting", c.weighting);
  rec.columns = {c.adversary == "authentic" ? "false_alarms" : "missed", "trials", "rate_hat", "ci_low", "ci_high"};
  rec.rows.push_back({static_cast<double>(s.missed_detections), static_cast<double>(s.trials), s.pmd_hat, s.ci_low,
                      s.ci_high});
  if (c.adversary != "pscer") {
    const PmdResult predicted = [&] {
      if (c.adversary == "authentic") return PmdResult{pfa(cfg.radio, cfg.channel, cfg.det), PmdMethod::Exact, {}, {}};
      const double p = c.adversary == "nonscer" ? 0.5 : chip_success_probability(db_to_linear(*c.adv_snr_db));
      if (p >= 1.0) return PmdResult{LogProb::one(), PmdMethod::Exact, {}, {}};
      return pmd_exact(cfg.radio, cfg.channel, cfg.det, p);
    }();
    add_probability_columns(rec.columns, "predicted");
    append_probability(rec.rows.back(), predicted.pmd);
  }
  return rec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Authentication-security probabilities for PRF-based GNSS ranging"};
  app.require_subcommand(1);

  ProbabilityCmd pfa_cmd;
  auto* pfa_app = app.add_subcommand("pfa", "Probability that an authentic signal is rejected");
  pfa_cmd.radio.add_to(*pfa_app);
  pfa_cmd.output.add_to(*pfa_app);
  pfa_app->add_option("--w", pfa_cmd.w, "Ranging codes averaged per decision")->check(CLI::PositiveNumber);
  pfa_app->add_option("--threshold", pfa_cmd.threshold, "Decision threshold on the averaged statistic");

  ProbabilityCmd pmd_cmd;
  auto* pmd_app = app.add_subcommand("pmd", "Probability that a forgery is accepted");
  pmd_cmd.radio.add_to(*pmd_app);
  pmd_cmd.output.add_to(*pmd_app);
  pmd_app->add_option("--w", pmd_cmd.w, "Ranging codes averaged per decision")->check(CLI::PositiveNumber);
  pmd_app->add_option("--threshold", pmd_cmd.threshold, "Decision threshold on the averaged statistic");
  auto* p_opt = pmd_app->add_option("--p-chip", pmd_cmd.p_chip, "Forger chip success probability (0.5 = blind)");
  auto* snr_opt = pmd_app->add_option("--adv-snr-db", pmd_cmd.adv_snr_db, "Hard-decision forger chip SNR in dB");
  p_opt->excludes(snr_opt);
  pmd_app->add_option("--method", pmd_cmd.method, "exact or clt")->check(CLI::IsMember({"exact", "clt"}));
  pmd_app->add_flag("--truncate", pmd_cmd.truncate, "Skip negligible terms and report the skipped-mass bound");

  SearchCmd search_cmd;
  auto* search_app = app.add_subcommand("search", "Minimal W or C/N0 for a security level");
  search_cmd.radio.add_to(*search_app);
  search_cmd.output.add_to(*search_app);
  search_app->add_option("--bits", search_cmd.bits, "Security level in bits")->required();
  search_app->add_option("--free", search_cmd.free, "Free variable: w or cn0")->check(CLI::IsMember({"w", "cn0"}));
  search_app->add_option("--w", search_cmd.w, "Fixed W when --free cn0")->check(CLI::PositiveNumber);
  search_app->add_option("--threshold", search_cmd.threshold, "Decision threshold");
  search_app->add_option("--w-cap", search_cmd.w_cap, "Largest W to consider")->check(CLI::PositiveNumber);

  FiguresCmd fig_cmd;
  auto* fig_app = app.add_subcommand("figures", "Write the data behind a figure as CSV");
  fig_cmd.radio.add_to(*fig_app);
  fig_app->add_option("--figure", fig_cmd.figure,
                      "pmd-nscer, cn0-v-w, hdscer-pmd-snr, adv-snr-pfa-y, validate-nscer, validate-hdscer, pscer")
      ->required();
  fig_app->add_option("--out", fig_cmd.out, "CSV path (stdout when omitted)");
  fig_app->add_option("--threshold", fig_cmd.threshold, "Decision threshold");
  fig_app->add_option("--ws", fig_cmd.ws, "W grid")->delimiter(',');
  fig_app->add_option("--w-max", fig_cmd.w_max, "W grid 1..w-max")->check(CLI::PositiveNumber);
  fig_app->add_option("--snr-db", fig_cmd.snr_db, "Adversary SNR grid in dB")->delimiter(',');
  fig_app->add_option("--snr-min", fig_cmd.snr_min, "SNR grid start (dB)");
  fig_app->add_option("--snr-max", fig_cmd.snr_max, "SNR grid end (dB)");
  fig_app->add_option("--snr-step", fig_cmd.snr_step, "SNR grid step (dB)");
  fig_app->add_option("--thresholds", fig_cmd.thresholds, "Threshold grid")->delimiter(',');
  fig_app->add_option("--bits", fig_cmd.bits, "Security levels for cn0-v-w")->delimiter(',');
  fig_app->add_option("--method", fig_cmd.method, "hdscer-pmd-snr method: clt or exact")
      ->check(CLI::IsMember({"exact", "clt"}));
  fig_app->add_option("--trials", fig_cmd.trials, "Monte Carlo trials per grid point")->check(CLI::PositiveNumber);
  fig_app->add_option("--seed", fig_cmd.seed, "Master seed: integer or 64 hex digits");
  fig_app->add_flag("--unpaired", fig_cmd.unpaired, "pscer: independent draws for the two forgers");
  fig_app->add_option("--pscer-weighting", fig_cmd.weighting, "power or amplitude")
      ->check(CLI::IsMember({"power", "amplitude"}));
  fig_app->add_option("--threads", fig_cmd.threads, "Worker threads (default: PRFAUTH_THREADS or all cores)");

  LinkBudgetCmd lb_cmd;
  auto* lb_app = app.add_subcommand("linkbudget", "Adversary chip SNR from a link budget, or the gain for a target");
  lb_cmd.output.add_to(*lb_app);
  lb_app->add_option("--rx-power-dbw", lb_cmd.rx_power_dbw, "Received signal power (dBW)");
  lb_app->add_option("--temp-k", lb_cmd.temp_k, "Noise temperature (K)");
  lb_app->add_option("--bandwidth-hz", lb_cmd.bandwidth_hz, "Noise bandwidth (Hz)");
  lb_app->add_option("--gain-db", lb_cmd.gain_db, "Adversary antenna gain (dB)");
  lb_app->add_option("--target-snr-db", lb_cmd.target_snr_db, "Target chip SNR (dB); solves for the gain");

  SimulateCmd sim_cmd;
  auto* sim_app = app.add_subcommand("simulate", "Monte Carlo run of the receiver chain against one adversary");
  sim_cmd.radio.add_to(*sim_app);
  sim_cmd.output.add_to(*sim_app);
  sim_app->add_option("--adversary", sim_cmd.adversary, "authentic, nonscer, hdscer or pscer")
      ->check(CLI::IsMember({"authentic", "nonscer", "hdscer", "pscer"}));
  sim_app->add_option("--adv-snr-db", sim_cmd.adv_snr_db, "Adversary chip SNR (dB)");
  sim_app->add_option("--w", sim_cmd.w, "Ranging codes averaged per decision")->check(CLI::PositiveNumber);
  sim_app->add_option("--threshold", sim_cmd.threshold, "Decision threshold");
  sim_app->add_option("--trials", sim_cmd.trials, "Trials")->check(CLI::PositiveNumber);
  sim_app->add_option("--seed", sim_cmd.seed, "Master seed: integer or 64 hex digits");
  sim_app->add_option("--pscer-weighting", sim_cmd.weighting, "power or amplitude")
      ->check(CLI::IsMember({"power", "amplitude"}));
  sim_app->add_option("--dump", sim_cmd.dump, "Write trial 0's received segments (binary float32)");
  sim_app->add_option("--threads", sim_cmd.threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*pfa_app) {
      pfa_cmd.output.emit(run_pfa(pfa_cmd));
    } else if (*pmd_app) {
      pmd_cmd.output.emit(run_pmd(pmd_cmd));
    } else if (*search_app) {
      return run_search(search_cmd);
    } else if (*fig_app) {
      return run_figures(fig_cmd);
    } else if (*lb_app) {
      lb_cmd.output.emit(run_linkbudget(lb_cmd));
    } else if (*sim_app) {
      sim_cmd.output.emit(run_simulate(sim_cmd));
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
