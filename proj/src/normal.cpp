#include "prfauth/normal.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace prfauth {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
// ln(sqrt(2*pi))
constexpr double kLnSqrt2Pi = 0.91893853320467274178;
// erfc(z/sqrt2) stays a normal double with full relative precision up to
// about z = 37.5; past this the continued fraction takes over.
constexpr double kCfCrossover = 37.0;

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double mills_ratio_cf(double z) {
  // R(z) = 1/(z + 1/(z + 2/(z + 3/(z + ...)))), modified Lentz.
  constexpr double kTiny = 1e-300;
  constexpr int kMaxIter = 5000;
  double f = z;
  double c = z;
  double d = 0.0;
  for (int k = 1; k < kMaxIter; ++k) {
    const double a = static_cast<double>(k);
    d = z + a * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = z + a / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

double ln_normal_sf(double z) {
  if (std::isnan(z)) return z;
  if (z == std::numeric_limits<double>::infinity()) return -std::numeric_limits<double>::infinity();
  if (z < 0.0) return std::log1p(-0.5 * std::erfc(-z * kInvSqrt2));
  if (z < kCfCrossover) return std::log(0.5 * std::erfc(z * kInvSqrt2));
  return -0.5 * z * z - kLnSqrt2Pi + std::log(mills_ratio_cf(z));
}

LogProb log_normal_sf(double z) { return LogProb::from_ln(ln_normal_sf(z)); }

double normal_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("normal_quantile: p outside [0, 1]");
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();

  // Acklam's rational approximation, then one Halley step against erfc.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  for (int i = 0; i < 2; ++i) {
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace prfauth
