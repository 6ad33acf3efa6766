#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "prfauth/binomial.hpp"
#include "prfauth/errors.hpp"
#include "prfauth/log_prob.hpp"

using namespace prfauth;

TEST_CASE("small exact stream") {
  const double expected[] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  std::size_t i = 0;
  for (const BinomialTerm& t : LogBinomialStream(4, 0.5)) {
    CHECK(t.b == i);
    CHECK(std::exp(t.ln_pmf) == doctest::Approx(expected[i]).epsilon(1e-15));
    ++i;
  }
  CHECK(i == 5);
}

TEST_CASE("stream normalization") {
  for (std::uint64_t trials : {1ull, 7ull, 1000ull, 5115ull, 100000ull, 1000000ull}) {
    for (double p : {0.5, 0.75, 0.01, 0.999}) {
      CAPTURE(trials);
      CAPTURE(p);
      LogSumExp acc;
      for (const BinomialTerm& t : LogBinomialStream(trials, p)) acc.add(t.ln_pmf);
      CHECK(std::fabs(std::exp(acc.value()) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("modal term of Binomial(5115, 1/2)") {
  // mpmath loggamma at 50 digits.
  CHECK(ln_binomial_pmf(2557, 5115, 0.5) == doctest::Approx(-4.495904300295581197).epsilon(1e-12));
  for (std::uint64_t b : {2557ull, 2558ull}) {
    CHECK(ln_binomial_pmf(b, 5115, 0.5) == doctest::Approx(oracle::lgamma_binomial(b, 5115, 0.5)).epsilon(1e-9));
  }
}

TEST_CASE("saddle-point evaluation at millions of trials") {
  // Binomial(5115 * 800, 1/2), mpmath references.
  CHECK(ln_binomial_pmf(2046000, 4092000, 0.5) == doctest::Approx(-7.838063616766373668).epsilon(1e-12));
  CHECK(ln_binomial_pmf(2040000, 4092000, 0.5) == doctest::Approx(-25.43339245431798560).epsilon(1e-12));
  CHECK(ln_binomial_pmf(700, 1000, 0.75) == doctest::Approx(-9.994262787839069950).epsilon(1e-12));
}

TEST_CASE("recurrence stream tracks an lgamma oracle") {
  for (double p : {0.5, 0.75, 0.93}) {
    const std::uint64_t trials = 20000;
    for (const BinomialTerm& t : LogBinomialStream(trials, p)) {
      const double ref = oracle::lgamma_binomial(t.b, trials, p);
      if (std::fabs(ref) < 1e-6) continue;
      if (std::fabs(t.ln_pmf - ref) > 1e-9 * std::fabs(ref)) {
        CAPTURE(t.b);
        CHECK(t.ln_pmf == doctest::Approx(ref).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("stream preconditions") {
  CHECK_THROWS_AS(LogBinomialStream(0, 0.5), std::domain_error);
  CHECK_THROWS_AS(LogBinomialStream(10, 0.0), std::domain_error);
  CHECK_THROWS_AS(LogBinomialStream(10, 1.0), std::domain_error);
  CHECK_THROWS_AS(LogBinomialStream(100, 0.5, 50), InfeasibleError);
  CHECK_NOTHROW(LogBinomialStream(49, 0.5, 50));
}
