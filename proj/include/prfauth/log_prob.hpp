#ifndef PRFAUTH_LOG_PROB_HPP
#define PRFAUTH_LOG_PROB_HPP

#include <cmath>
#include <limits>
#include <numbers>

namespace prfauth {

/// A probability held as its base-2 logarithm, so that values like 2^-128
/// (or 2^-1800) stay representable. Converting back to linear is explicit.
class LogProb {
 public:
  constexpr LogProb() = default;

  static constexpr LogProb from_log2(double log2_value) { return LogProb(log2_value); }
  static LogProb from_ln(double ln_value) { return LogProb(ln_value / std::numbers::ln2); }
  static LogProb from_linear(double p) { return LogProb(std::log2(p)); }
  static constexpr LogProb zero() { return LogProb(-std::numeric_limits<double>::infinity()); }
  static constexpr LogProb one() { return LogProb(0.0); }

  constexpr double log2() const { return log2_; }
  double ln() const { return log2_ * std::numbers::ln2; }

  /// Linear value; underflows to 0 below about 2^-1074.
  double linear() const { return std::exp2(log2_); }

  /// True when linear() keeps useful precision.
  constexpr bool representable() const { return log2_ > -1000.0; }

  constexpr bool is_zero() const { return log2_ == -std::numeric_limits<double>::infinity(); }

  friend constexpr auto operator<=>(const LogProb&, const LogProb&) = default;

 private:
  constexpr explicit LogProb(double log2_value) : log2_(log2_value) {}

  double log2_ = 0.0;
};

/// Streaming log-sum-exp accumulator in natural-log units.
class LogSumExp {
 public:
  void add(double ln_term) {
    if (ln_term == -std::numeric_limits<double>::infinity()) return;
    if (ln_term <= max_) {
      sum_ += std::exp(ln_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - ln_term) + 1.0;
      max_ = ln_term;
    }
  }

  /// ln of the accumulated sum; -inf when nothing was added.
  double value() const {
    if (sum_ == 0.0) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(sum_);
  }

  double max_term() const { return max_; }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

}  // namespace prfauth

#endif  // PRFAUTH_LOG_PROB_HPP
