#include "prfauth/binomial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "prfauth/errors.hpp"

namespace prfauth {

namespace {

constexpr double kLnSqrt2Pi = 0.91893853320467274178;
constexpr double kLn2Pi = 1.83787706640934548356;

// ln(x!) - [(x + 1/2) ln x - x + ln sqrt(2 pi)]
double stirlerr(double x) {
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  if (x <= 15.0) return std::lgamma(x + 1.0) - (x + 0.5) * std::log(x) + x - kLnSqrt2Pi;
  const double xx = x * x;
  if (x > 500.0) return (s0 - s1 / xx) / x;
  if (x > 80.0) return (s0 - (s1 - s2 / xx) / xx) / x;
  if (x > 35.0) return (s0 - (s1 - (s2 - s3 / xx) / xx) / xx) / x;
  return (s0 - (s1 - (s2 - (s3 - s4 / xx) / xx) / xx) / xx) / x;
}

// Deviance term x ln(x/np) + np - x without cancellation.
double bd0(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    v = v * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

}  // namespace

double ln_binomial_pmf(std::uint64_t b, std::uint64_t trials, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("binomial: p must lie in (0, 1)");
  if (b > trials) return -INFINITY;
  const double q = 1.0 - p;
  const double n = static_cast<double>(trials);
  const double x = static_cast<double>(b);
  if (b == 0) return n * std::log1p(-p);
  if (b == trials) return n * std::log(p);
  const double lc = stirlerr(n) - stirlerr(x) - stirlerr(n - x) - bd0(x, n * p) - bd0(n - x, n * q);
  const double lf = kLn2Pi + std::log(x) + std::log1p(-x / n);
  return lc - 0.5 * lf;
}

LogBinomialStream::LogBinomialStream(std::uint64_t trials, double p, std::uint64_t term_budget)
    : trials_(trials), p_(p) {
  if (trials < 1) throw std::domain_error("binomial stream: trials must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("binomial stream: p must lie in (0, 1)");
  if (trials >= term_budget) {
    throw InfeasibleError("binomial stream: " + std::to_string(trials + 1) +
                          " terms exceed the budget of " + std::to_string(term_budget));
  }
  ln_odds_ = std::log(p) - std::log1p(-p);
}

LogBinomialStream::iterator::iterator(const LogBinomialStream* owner, std::uint64_t b) : owner_(owner) {
  term_.b = b;
  if (b <= owner->trials_) term_.ln_pmf = ln_binomial_pmf(b, owner->trials_, owner->p_);
}

LogBinomialStream::iterator& LogBinomialStream::iterator::operator++() {
  const std::uint64_t next = term_.b + 1;
  const std::uint64_t trials = owner_->trials_;
  if (next > trials) {
    term_.b = next;
    return *this;
  }
  if (next % kAnchorInterval == 0 || next == trials) {
    term_.ln_pmf = ln_binomial_pmf(next, trials, owner_->p_);
  } else {
    term_.ln_pmf += std::log(static_cast<double>(trials - term_.b) / static_cast<double>(next)) + owner_->ln_odds_;
  }
  term_.b = next;
  return *this;
}

}  // namespace prfauth
