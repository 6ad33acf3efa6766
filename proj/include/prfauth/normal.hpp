#ifndef PRFAUTH_NORMAL_HPP
#define PRFAUTH_NORMAL_HPP

#include "prfauth/log_prob.hpp"

namespace prfauth {

/// Standard normal CDF Phi(x).
double normal_cdf(double x);

/// ln Q(z) = ln(1 - Phi(z)), accurate in the far tail (z up to ~1e150).
///
/// Never forms 1 - Phi(z) in linear space. For moderate z this is
/// ln(erfc(z/sqrt2)/2); past the point where erfc loses range it switches to
/// ln phi(z) plus the log of a continued-fraction Mills ratio. Negative z go
/// through log1p of the upper tail at |z|.
double ln_normal_sf(double z);

/// ln Phi(x).
inline double ln_normal_cdf(double x) { return ln_normal_sf(-x); }

/// Same as ln_normal_sf, wrapped as a probability.
LogProb log_normal_sf(double z);

/// Mills ratio Q(z)/phi(z) by Lentz's continued fraction. Converges for
/// z >= 2; slow below about 10.
double mills_ratio_cf(double z);

/// Phi^-1(p) for p in (0, 1); +-inf at the end points.
double normal_quantile(double p);

}  // namespace prfauth

#endif  // PRFAUTH_NORMAL_HPP
