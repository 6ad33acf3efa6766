#ifndef PRFAUTH_BINOMIAL_HPP
#define PRFAUTH_BINOMIAL_HPP

#include <cstdint>
#include <iterator>

namespace prfauth {

/// ln P(B = b) for B ~ Binomial(trials, p), via Loader's saddle-point form
/// (stirlerr + deviance), which keeps ~1e-15 relative accuracy even for
/// millions of trials where lgamma differences lose digits.
double ln_binomial_pmf(std::uint64_t b, std::uint64_t trials, double p);

struct BinomialTerm {
  std::uint64_t b;
  double ln_pmf;
};

/// Ascending stream of (b, ln pmf(b)) for b = 0..trials.
///
/// Consecutive terms come from the multiplicative recurrence
///   ln pmf(b+1) = ln pmf(b) + ln((trials-b)/(b+1)) + ln(p/(1-p)),
/// re-anchored to the exact saddle-point value every kAnchorInterval terms
/// so rounding drift stays bounded regardless of length.
class LogBinomialStream {
 public:
  static constexpr std::uint64_t kDefaultTermBudget = 100'000'000;
  static constexpr std::uint64_t kAnchorInterval = 1024;

  /// Throws std::domain_error unless 0 < p < 1 and trials >= 1, and
  /// InfeasibleError when trials + 1 exceeds the term budget.
  LogBinomialStream(std::uint64_t trials, double p,
                    std::uint64_t term_budget = kDefaultTermBudget);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = BinomialTerm;
    using difference_type = std::ptrdiff_t;
    using pointer = const BinomialTerm*;
    using reference = const BinomialTerm&;

    iterator() = default;
    reference operator*() const { return term_; }
    pointer operator->() const { return &term_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.term_.b == b.term_.b; }

   private:
    friend class LogBinomialStream;
    iterator(const LogBinomialStream* owner, std::uint64_t b);

    const LogBinomialStream* owner_ = nullptr;
    BinomialTerm term_{0, 0.0};
  };

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, trials_ + 1); }

  std::uint64_t trials() const { return trials_; }
  double p() const { return p_; }

 private:
  std::uint64_t trials_;
  double p_;
  double ln_odds_;
};

}  // namespace prfauth

#endif  // PRFAUTH_BINOMIAL_HPP
