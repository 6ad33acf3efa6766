#ifndef PRFAUTH_ANALYTIC_HPP
#define PRFAUTH_ANALYTIC_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prfauth/binomial.hpp"
#include "prfauth/log_prob.hpp"
#include "prfauth/params.hpp"

namespace prfauth {

enum class PmdMethod { Exact, Clt, MonteCarlo };

const char* method_name(PmdMethod method);

struct MonteCarloDetail {
  std::uint64_t trials = 0;
  LogProb ci_low;
  LogProb ci_high;
};

struct PmdResult {
  LogProb pmd;
  PmdMethod method = PmdMethod::Exact;
  std::optional<MonteCarloDetail> monte_carlo;
  // Upper bound on probability mass skipped by an opted-in truncation.
  std::optional<LogProb> discarded_bound;
};

/// Mean and variance of a single (W = 1) correlator output under a forger
/// whose chips are right with probability p. Averaging W codes keeps the mean
/// and divides the variance by W.
struct CltMoments {
  double mean = 0.0;
  double variance = 0.0;

  double averaged_variance(std::size_t w) const { return variance / static_cast<double>(w); }
};

struct ExactSumOptions {
  // Skip Gaussian-tail evaluation for terms whose binomial weight is already
  // this many bits below the largest term seen; the skipped weight is summed
  // into PmdResult::discarded_bound.
  bool truncate = false;
  double truncate_below_bits = 60.0;
  std::uint64_t term_budget = LogBinomialStream::kDefaultTermBudget;
};

/// Variance of the W-averaged receiver noise term, sigma^2 / (P * F*T * W).
double averaged_noise_variance(const RadioModel& radio, const ChannelModel& channel, std::size_t w);

/// P(authentic signal is rejected) = Phi((threshold - 1) / sigma_W).
LogProb pfa(const RadioModel& radio, const ChannelModel& channel, const DetectorConfig& det);

/// Exact missed-detection probability: the full sum over b = 0..nW of
/// Q((threshold - g(b/W)) / sigma_W) * P(B = b), B ~ Binomial(nW, p_chip),
/// g(b/W) = (2b - nW) / (nW), evaluated by streaming log-sum-exp.
/// p_chip = 0.5 is the blind (Non-SCER) forger, p_chip > 0.5 a hard-decision
/// chip estimator. With sigma^2 = 0 the tail becomes the indicator
/// g(b/W) >= threshold.
PmdResult pmd_exact(const RadioModel& radio, const ChannelModel& channel, const DetectorConfig& det,
                    double p_chip, const ExactSumOptions& options = {});

CltMoments clt_moments(const RadioModel& radio, const ChannelModel& channel, double p_chip);

/// Gaussian approximation of pmd_exact. Meant for W >= 30.
PmdResult pmd_clt(const RadioModel& radio, const ChannelModel& channel, const DetectorConfig& det,
                  double p_chip);

struct WSearchResult {
  std::size_t w = 1;
  LogProb pmd;  // exact PMD at w
};

/// Smallest W whose exact blind-forger PMD is <= 2^-bits. A CLT estimate
/// seeds the bracket; the answer comes from exact sums. Throws
/// InfeasibleError past w_cap.
WSearchResult min_w_for_security(const RadioModel& radio, const ChannelModel& channel, unsigned security_bits,
                                 double threshold = 0.5, std::size_t w_cap = 100'000);

/// Smallest receiver C/N0 (dB-Hz, 0.01 dB resolution) whose CLT blind-forger
/// PMD at this W is <= 2^-bits. The radio's own C/N0 is ignored. Throws
/// std::invalid_argument for W < 30 and InfeasibleError when even a noise-free
/// receiver misses the requirement at this W.
double min_cn0(const RadioModel& radio, std::size_t w, unsigned security_bits, double threshold = 0.5);

/// Adversary chip SNR (dB) at which 2p - 1 = threshold, i.e. where the
/// hard-decision forger's expected statistic sits on the decision boundary.
double breaking_adversary_snr(double threshold);

struct TradeoffRow {
  double threshold = 0.0;
  double breaking_snr_db = 0.0;
  LogProb pfa;
};

std::vector<TradeoffRow> threshold_tradeoff(const RadioModel& radio, const ChannelModel& channel, std::size_t w,
                                            std::span<const double> thresholds);

struct CurvePoint {
  std::size_t w = 1;
  double adversary_snr_db = 0.0;
  double p_chip = 0.5;
  PmdResult pmd;
};

/// PMD of the hard-decision forger over a (W, adversary SNR) grid; CLT by
/// default, exact on request. Rows are W-major.
std::vector<CurvePoint> hdscer_pmd_curve(const RadioModel& radio, const ChannelModel& channel,
                                         std::span<const std::size_t> ws, std::span<const double> snr_grid_db,
                                         double threshold = 0.5, PmdMethod method = PmdMethod::Clt);

}  // namespace prfauth

#endif  // PRFAUTH_ANALYTIC_HPP
