#include "prfauth/figures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "prfauth/errors.hpp"
#include "prfauth/montecarlo.hpp"

namespace prfauth {

namespace {

struct FigureInfo {
  Figure figure;
  const char* name;
};

constexpr FigureInfo kFigures[] = {
    {Figure::PmdNscer, "pmd-nscer"},           {Figure::Cn0VsW, "cn0-v-w"},
    {Figure::HdscerPmdSnr, "hdscer-pmd-snr"},  {Figure::AdvSnrPfaY, "adv-snr-pfa-y"},
    {Figure::ValidateNscer, "validate-nscer"}, {Figure::ValidateHdscer, "validate-hdscer"},
    {Figure::Pscer, "pscer"},
};

std::vector<double> range(double first, double last, double step) {
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((last - first) / step + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) out.push_back(first + step * static_cast<double>(i));
  return out;
}

std::vector<std::size_t> range_w(std::size_t first, std::size_t last, std::size_t step = 1) {
  std::vector<std::size_t> out;
  for (std::size_t w = first; w <= last; w += step) out.push_back(w);
  return out;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ';';
    if constexpr (std::is_floating_point_v<T>) {
      s += format_number(xs[i]);
    } else {
      s += std::to_string(xs[i]);
    }
  }
  return s;
}

void append_summary(std::vector<Cell>& row, const TrialSummary& s) {
  row.emplace_back(static_cast<double>(s.missed_detections));
  row.emplace_back(static_cast<double>(s.trials));
  row.emplace_back(s.pmd_hat);
  row.emplace_back(s.ci_low);
  row.emplace_back(s.ci_high);
}

void add_summary_columns(std::vector<std::string>& cols, const std::string& prefix) {
  for (const char* c : {"missed", "trials", "pmd_hat", "ci_low", "ci_high"}) cols.push_back(prefix + c);
}

void require_simulation_inputs(const FigureRequest& req) {
  if (req.trials == 0) throw std::invalid_argument("simulated figures need --trials");
}

OutputRecord pmd_nscer(const FigureRequest& req) {
  OutputRecord rec;
  const ChannelModel channel = channel_from_radio(req.radio);
  rec.columns = {"w"};
  add_probability_columns(rec.columns, "pmd");
  add_probability_columns(rec.columns, "pfa");
  for (std::size_t w : req.ws) {
    const DetectorConfig det{w, req.threshold};
    std::vector<Cell> row{static_cast<double>(w)};
    append_probability(row, pmd_exact(req.radio, channel, det, 0.5).pmd);
    append_probability(row, pfa(req.radio, channel, det));
    rec.rows.push_back(std::move(row));
  }
  return rec;
}

OutputRecord cn0_v_w(const FigureRequest& req) {
  OutputRecord rec;
  rec.columns = {"w", "bits", "min_cn0_dbhz"};
  for (unsigned bits : req.bits) {
    for (std::size_t w : req.ws) {
      std::vector<Cell> row{static_cast<double>(w), static_cast<double>(bits)};
      try {
        row.emplace_back(min_cn0(req.radio, w, bits, req.threshold));
      } catch (const InfeasibleError&) {
        row.emplace_back(std::nullopt);
      }
      rec.rows.push_back(std::move(row));
    }
  }
  return rec;
}

OutputRecord hdscer_pmd_snr(const FigureRequest& req) {
  OutputRecord rec;
  std::vector<double> grid = req.snr_db;
  const double inflection = breaking_adversary_snr(req.threshold);
  if (std::find(grid.begin(), grid.end(), inflection) == grid.end()) grid.push_back(inflection);
  std::sort(grid.begin(), grid.end());
  rec.result("inflection_snr_db", inflection);

  const auto points =
      hdscer_pmd_curve(req.radio, channel_from_radio(req.radio), req.ws, grid, req.threshold, req.method);
  rec.columns = {"w", "adversary_snr_db", "p_chip"};
  add_probability_columns(rec.columns, "pmd");
  for (const CurvePoint& pt : points) {
    std::vector<Cell> row{static_cast<double>(pt.w), pt.adversary_snr_db, pt.p_chip};
    append_probability(row, pt.pmd.pmd);
    rec.rows.push_back(std::move(row));
  }
  return rec;
}

OutputRecord adv_snr_pfa_y(const FigureRequest& req) {
  OutputRecord rec;
  const std::size_t w = req.ws.front();
  rec.columns = {"threshold", "breaking_snr_db"};
  add_probability_columns(rec.columns, "pfa");
  for (const TradeoffRow& r : threshold_tradeoff(req.radio, channel_from_radio(req.radio), w, req.thresholds)) {
    std::vector<Cell> row{r.threshold, r.breaking_snr_db};
    append_probability(row, r.pfa);
    rec.rows.push_back(std::move(row));
  }
  return rec;
}

ExperimentConfig base_experiment(const FigureRequest& req, const AdversaryModel& adversary, std::size_t w) {
  ExperimentConfig cfg;
  cfg.radio = req.radio;
  cfg.channel = channel_from_radio(req.radio);
  cfg.det = DetectorConfig{w, req.threshold};
  cfg.adversary = adversary;
  cfg.trials = req.trials;
  cfg.master_seed = req.seed;
  cfg.pscer_weighting = req.weighting;
  return cfg;
}

OutputRecord validation(const FigureRequest& req, bool hdscer) {
  require_simulation_inputs(req);
  OutputRecord rec;
  std::vector<SweepRow> rows;
  if (hdscer) {
    const ExperimentConfig base = base_experiment(req, adversary::HdScer{1.0}, req.ws.front());
    rows = validation_sweep(base, SnrGrid{req.snr_db}, req.workers);
    rec.columns = {"adversary_snr_db"};
  } else {
    const ExperimentConfig base = base_experiment(req, adversary::NonScer{}, 1);
    rows = validation_sweep(base, WGrid{req.ws}, req.workers);
    rec.columns = {"w"};
  }
  add_summary_columns(rec.columns, "");
  add_probability_columns(rec.columns, "pmd_exact");
  rec.columns.push_back("contained");
  std::size_t contained = 0;
  for (const SweepRow& r : rows) {
    std::vector<Cell> row{r.point};
    append_summary(row, r.empirical);
    append_probability(row, r.analytic.pmd);
    row.emplace_back(r.contained ? 1.0 : 0.0);
    contained += r.contained ? 1 : 0;
    rec.rows.push_back(std::move(row));
  }
  rec.result("points_contained", static_cast<double>(contained));
  rec.result("points", static_cast<double>(rows.size()));
  return rec;
}

OutputRecord pscer(const FigureRequest& req) {
  require_simulation_inputs(req);
  OutputRecord rec;
  const ExperimentConfig base = base_experiment(req, adversary::HdScer{1.0}, req.ws.front());
  const PscerAdvantage adv = pscer_advantage(base, req.snr_db, req.paired, req.workers);
  rec.columns = {"adversary_snr_db"};
  add_summary_columns(rec.columns, "hdscer_");
  add_summary_columns(rec.columns, "pscer_");
  for (const PscerRow& r : adv.rows) {
    std::vector<Cell> row{r.snr_db};
    append_summary(row, r.hdscer);
    append_summary(row, r.pscer);
    rec.rows.push_back(std::move(row));
  }
  rec.result("hdscer_crossing_db", adv.hdscer_crossing_db);
  rec.result("pscer_crossing_db", adv.pscer_crossing_db);
  rec.result("shift_db", adv.shift_db);
  return rec;
}

}  // namespace

std::optional<Figure> parse_figure(std::string_view name) {
  for (const FigureInfo& f : kFigures) {
    if (name == f.name) return f.figure;
  }
  return std::nullopt;
}

const char* figure_name(Figure figure) {
  for (const FigureInfo& f : kFigures) {
    if (f.figure == figure) return f.name;
  }
  return "unknown";
}

bool figure_is_simulated(Figure figure) {
  return figure == Figure::ValidateNscer || figure == Figure::ValidateHdscer || figure == Figure::Pscer;
}

RadioModel validation_radio(double cn0_dbhz) { return RadioModel{31, 1e-3, 62e3, cn0_dbhz}; }

FigureRequest default_figure_request(Figure figure) {
  FigureRequest req;
  req.figure = figure;
  req.radio = galileo_e6c_preset();
  switch (figure) {
    case Figure::PmdNscer:
      req.ws = range_w(1, 800);
      break;
    case Figure::Cn0VsW:
      req.ws = range_w(30, 800, 10);
      req.bits = {32, 64, 128};
      break;
    case Figure::HdscerPmdSnr:
      req.ws = {50, 100, 200, 400};
      req.snr_db = range(-25.0, 5.0, 0.25);
      break;
    case Figure::AdvSnrPfaY:
      req.ws = {100};
      req.thresholds = range(0.05, 0.95, 0.05);
      break;
    case Figure::ValidateNscer:
      req.radio = validation_radio(32.0);
      req.ws = range_w(3, 12);
      break;
    case Figure::ValidateHdscer:
      req.radio = validation_radio(40.0);
      req.ws = {8};
      req.snr_db = range(-13.0, 0.0, 1.0);
      break;
    case Figure::Pscer:
      req.radio = validation_radio(40.0);
      req.ws = {8};
      req.snr_db = range(-7.0, 0.0, 0.5);
      break;
  }
  return req;
}

void record_radio(OutputRecord& record, const RadioModel& radio) {
  record.param("chips", static_cast<double>(radio.chips));
  record.param("code_period_s", radio.code_period_s);
  record.param("sample_rate_hz", radio.sample_rate_hz);
  record.param("cn0_dbhz", radio.cn0_dbhz);
  record.param("samples_per_code", static_cast<double>(radio.samples_per_code()));
  record.param("noise_to_signal", noise_variance_ratio(radio));
}

OutputRecord make_figure(const FigureRequest& req) {
  req.radio.validate();
  if (req.ws.empty()) throw std::invalid_argument("figure: W grid is empty");

  OutputRecord rec;
  switch (req.figure) {
    case Figure::PmdNscer:
      rec = pmd_nscer(req);
      break;
    case Figure::Cn0VsW:
      rec = cn0_v_w(req);
      break;
    case Figure::HdscerPmdSnr:
      rec = hdscer_pmd_snr(req);
      break;
    case Figure::AdvSnrPfaY:
      rec = adv_snr_pfa_y(req);
      break;
    case Figure::ValidateNscer:
      rec = validation(req, false);
      break;
    case Figure::ValidateHdscer:
      rec = validation(req, true);
      break;
    case Figure::Pscer:
      rec = pscer(req);
      break;
  }

  // Parameters first, then any results the figure attached.
  OutputRecord out;
  out.command = std::string("figures ") + figure_name(req.figure);
  out.param("figure", figure_name(req.figure));
  record_radio(out, req.radio);
  out.param("threshold", req.threshold);
  out.param("ws", join(req.ws));
  if (!req.snr_db.empty()) out.param("snr_db", join(req.snr_db));
  if (!req.thresholds.empty()) out.param("thresholds", join(req.thresholds));
  if (!req.bits.empty()) out.param("bits", join(req.bits));
  if (req.figure == Figure::HdscerPmdSnr) out.param("method", method_name(req.method));
  if (figure_is_simulated(req.figure)) {
    out.param("trials", static_cast<double>(req.trials));
    out.param("seed", seed_to_hex(req.seed));
    out.param("paired", req.paired ? "true" : "false");
    out.param("pscer_weighting", req.weighting == PscerWeighting::Power ? "power" : "amplitude");
  }
  out.columns = std::move(rec.columns);
  out.rows = std::move(rec.rows);
  out.summary = std::move(rec.summary);
  return out;
}

}  // namespace prfauth
