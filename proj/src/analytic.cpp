#include "prfauth/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "prfauth/errors.hpp"
#include "prfauth/normal.hpp"

namespace prfauth {

namespace {

void check_p(double p_chip) {
  if (!(p_chip > 0.0 && p_chip < 1.0)) throw std::domain_error("p_chip must lie in (0, 1)");
}

void check_inputs(const RadioModel& radio, const ChannelModel& channel, const DetectorConfig& det) {
  radio.validate();
  channel.validate();
  det.validate();
  if (!(channel.signal_power > 0.0)) throw std::invalid_argument("channel: signal power must be > 0");
}

double bits_to_ln(double bits) { return -bits * std::numbers::ln2; }

}  // namespace

const char* method_name(PmdMethod method) {
  switch (method) {
    case PmdMethod::Exact:
      return "exact";
    case PmdMethod::Clt:
      return "clt";
    case PmdMethod::MonteCarlo:
      return "montecarlo";
  }
  return "unknown";
}

double averaged_noise_variance(const RadioModel& radio, const ChannelModel& channel, std::size_t w) {
  return channel.noise_to_signal() /
         (static_cast<double>(radio.samples_per_code()) * static_cast<double>(w));
}

LogProb pfa(const RadioModel& radio, const ChannelModel& channel, const DetectorConfig& det) {
  check_inputs(radio, channel, det);
  const double sigma_w = std::sqrt(averaged_noise_variance(radio, channel, det.w));
  if (sigma_w == 0.0) return LogProb::zero();
  return LogProb::from_ln(ln_normal_cdf((det.threshold - 1.0) / sigma_w));
}

PmdResult pmd_exact(const RadioModel& radio, const ChannelModel& channel, const DetectorConfig& det,
                    double p_chip, const ExactSumOptions& options) {
  check_inputs(radio, channel, det);
  check_p(p_chip);

  const std::uint64_t total_chips = static_cast<std::uint64_t>(radio.chips) * det.w;
  const double total = static_cast<double>(total_chips);
  const double sigma_w = std::sqrt(averaged_noise_variance(radio, channel, det.w));
  const double drop_ln = options.truncate_below_bits * std::numbers::ln2;

  LogSumExp kept;
  LogSumExp skipped;
  for (const BinomialTerm& term : LogBinomialStream(total_chips, p_chip, options.term_budget)) {
    const double two_b_minus_total = 2.0 * static_cast<double>(term.b) - total;
    if (sigma_w == 0.0) {
      if (two_b_minus_total >= det.threshold * total) kept.add(term.ln_pmf);
      continue;
    }
    if (options.truncate && term.ln_pmf < kept.max_term() - drop_ln) {
      skipped.add(term.ln_pmf);
      continue;
    }
    const double g = two_b_minus_total / total;
    kept.add(ln_normal_sf((det.threshold - g) / sigma_w) + term.ln_pmf);
  }

  PmdResult result;
  result.pmd = LogProb::from_ln(std::min(0.0, kept.value()));
  result.method = PmdMethod::Exact;
  if (options.truncate) result.discarded_bound = LogProb::from_ln(std::min(0.0, skipped.value()));
  return result;
}

CltMoments clt_moments(const RadioModel& radio, const ChannelModel& channel, double p_chip) {
  radio.validate();
  channel.validate();
  if (!(p_chip >= 0.0 && p_chip <= 1.0)) throw std::domain_error("p_chip must lie in [0, 1]");
  CltMoments m;
  m.mean = 2.0 * p_chip - 1.0;
  m.variance = 4.0 * p_chip * (1.0 - p_chip) / static_cast<double>(radio.chips) +
               averaged_noise_variance(radio, channel, 1);
  return m;
}

PmdResult pmd_clt(const RadioModel& radio, const ChannelModel& channel, const DetectorConfig& det,
                  double p_chip) {
  check_inputs(radio, channel, det);
  const CltMoments m = clt_moments(radio, channel, p_chip);
  const double var_w = m.averaged_variance(det.w);
  PmdResult result;
  result.method = PmdMethod::Clt;
  if (var_w == 0.0) {
    result.pmd = m.mean >= det.threshold ? LogProb::one() : LogProb::zero();
  } else {
    result.pmd = LogProb::from_ln(ln_normal_sf((det.threshold - m.mean) / std::sqrt(var_w)));
  }
  return result;
}

WSearchResult min_w_for_security(const RadioModel& radio, const ChannelModel& channel, unsigned security_bits,
                                 double threshold, std::size_t w_cap) {
  const double target_log2 = -static_cast<double>(security_bits);
  auto exact_at = [&](std::size_t w) {
    return pmd_exact(radio, channel, DetectorConfig{w, threshold}, 0.5).pmd;
  };
  auto passes = [&](const LogProb& pmd) { return pmd.log2() <= target_log2; };

  if (security_bits == 0) return {1, exact_at(1)};

  // Deviate z with ln Q(z) = target, then W from z = threshold / sqrt(var / W).
  const double target_ln = bits_to_ln(security_bits);
  double z_lo = 0.0;
  double z_hi = 1.0;
  while (ln_normal_sf(z_hi) > target_ln) z_hi *= 2.0;
  for (int i = 0; i < 200 && z_hi - z_lo > 1e-12; ++i) {
    const double mid = 0.5 * (z_lo + z_hi);
    (ln_normal_sf(mid) > target_ln ? z_lo : z_hi) = mid;
  }
  const double var1 = clt_moments(radio, channel, 0.5).variance;
  const double w_guess = std::ceil(z_hi * z_hi * var1 / (threshold * threshold));
  std::size_t hi = static_cast<std::size_t>(std::clamp(w_guess, 1.0, static_cast<double>(w_cap)));

  // Bracket: lo fails, hi passes.
  LogProb hi_pmd = exact_at(hi);
  std::size_t lo = hi;
  while (!passes(hi_pmd)) {
    if (hi >= w_cap) {
      throw InfeasibleError("no W <= " + std::to_string(w_cap) + " reaches " + std::to_string(security_bits) +
                            "-bit security");
    }
    lo = hi;
    hi = std::min(w_cap, hi + hi / 8 + 1);
    hi_pmd = exact_at(hi);
  }
  if (lo == hi) {
    while (true) {
      if (lo == 1) return {1, hi_pmd};
      const std::size_t step = lo / 8 + 1;
      const std::size_t candidate = lo > step ? lo - step : 1;
      const LogProb pmd = exact_at(candidate);
      if (!passes(pmd)) {
        lo = candidate;
        break;
      }
      hi = candidate;
      hi_pmd = pmd;
      lo = candidate;
    }
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const LogProb pmd = exact_at(mid);
    if (passes(pmd)) {
      hi = mid;
      hi_pmd = pmd;
    } else {
      lo = mid;
    }
  }
  return {hi, hi_pmd};
}

double min_cn0(const RadioModel& radio, std::size_t w, unsigned security_bits, double threshold) {
  if (w < 30) throw std::invalid_argument("min_cn0: the CLT search needs W >= 30");
  const double target_ln = bits_to_ln(security_bits);
  const DetectorConfig det{w, threshold};

  const double noise_free_z = threshold / std::sqrt(1.0 / (static_cast<double>(radio.chips) * w));
  if (ln_normal_sf(noise_free_z) > target_ln) {
    throw InfeasibleError("min_cn0: even a noise-free receiver cannot reach " + std::to_string(security_bits) +
                          "-bit security at W = " + std::to_string(w));
  }

  auto passes = [&](double cn0) {
    RadioModel r = radio;
    r.cn0_dbhz = cn0;
    return pmd_clt(r, channel_from_radio(r), det, 0.5).pmd.ln() <= target_ln;
  };

  double hi = 0.0;
  while (!passes(hi)) hi += 10.0;
  double lo = hi - 10.0;
  while (passes(lo)) {
    hi = lo;
    lo -= 10.0;
  }
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? hi : lo) = mid;
  }
  return hi;
}

double breaking_adversary_snr(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("breaking_adversary_snr: threshold must lie in (0, 1)");
  }
  if (threshold == 1.0) return std::numeric_limits<double>::infinity();
  const double root_snr = normal_quantile(0.5 * (1.0 + threshold));
  return linear_to_db(root_snr * root_snr);
}

std::vector<TradeoffRow> threshold_tradeoff(const RadioModel& radio, const ChannelModel& channel, std::size_t w,
                                            std::span<const double> thresholds) {
  std::vector<TradeoffRow> rows;
  rows.reserve(thresholds.size());
  for (double t : thresholds) {
    rows.push_back({t, breaking_adversary_snr(t), pfa(radio, channel, DetectorConfig{w, t})});
  }
  return rows;
}

std::vector<CurvePoint> hdscer_pmd_curve(const RadioModel& radio, const ChannelModel& channel,
                                         std::span<const std::size_t> ws, std::span<const double> snr_grid_db,
                                         double threshold, PmdMethod method) {
  if (ws.empty() || snr_grid_db.empty()) throw std::invalid_argument("hdscer_pmd_curve: empty grid");
  if (method == PmdMethod::MonteCarlo) throw std::invalid_argument("hdscer_pmd_curve: analytic methods only");
  std::vector<CurvePoint> rows;
  rows.reserve(ws.size() * snr_grid_db.size());
  for (std::size_t w : ws) {
    const DetectorConfig det{w, threshold};
    for (double snr_db : snr_grid_db) {
      const double p = chip_success_probability(db_to_linear(snr_db));
      CurvePoint pt{w, snr_db, p, {}};
      if (method == PmdMethod::Clt || p >= 1.0) {
        pt.pmd = pmd_clt(radio, channel, det, p);
      } else {
        pt.pmd = pmd_exact(radio, channel, det, p);
      }
      rows.push_back(pt);
    }
  }
  return rows;
}

}  // namespace prfauth
