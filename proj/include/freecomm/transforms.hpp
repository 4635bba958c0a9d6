#pragma once

// The non-crossing convolutions and the transforms built on them.
//
//   coef_n(f * g) = sum over pi in NC(n) of [f; pi] [g; K(pi)]
//
// with K the Kreweras complement; the two-variable version restricts the
// word to each block. Moments and free cumulants are related by M = R * Zeta
// and R = M * Moeb; the conversions themselves use the equivalent functional
// equation M(z) = R(z (1 + M(z))).

#include "freecomm/series.hpp"

#include <string>

namespace freecomm {

/// Up to this order star sums over NC(n) directly; above it, star_by_fourier.
inline constexpr int kMaxStarOrder = ncpart::kMaxEnumerate;

enum class TransformKind { Moments, RCumulants, REven, STransform };
std::string to_string(TransformKind kind);

/// Zeta: all coefficients 1. Moeb: (-1)^(n+1) Catalan(n-1).
PowerSeries zeta(int order);
PowerSeries moeb(int order);
Rat moeb_coefficient(int n);

/// Two-variable versions: the coefficient of every word of length n is the
/// one-variable coefficient at n. sum2 is z1 + z2, the unit of star2.
NCSeries2 zeta2(int order);
NCSeries2 moeb2(int order);
NCSeries2 sum2(int order);

enum class Special { Zeta, Moeb };
PowerSeries special_series(Special which, int order);
NCSeries2 special_series2(Special which, int order);

/// Requires equal orders.
PowerSeries star(const PowerSeries& f, const PowerSeries& g);
/// The same convolution through F(f * g) = F(f) F(g); a vanishing linear
/// coefficient is handled by interpolating in it. Slow for large orders.
PowerSeries star_by_fourier(const PowerSeries& f, const PowerSeries& g);
NCSeries2 star2(const NCSeries2& f, const NCSeries2& g);

PowerSeries moments_to_R(const PowerSeries& moments);
PowerSeries R_to_moments(const PowerSeries& cumulants);
NCSeries2 moments2_to_R2(const NCSeries2& moments);
NCSeries2 R2_to_moments2(const NCSeries2& cumulants);

/// Even cumulants reindexed: coef(r_even(R), n) = coef(R, 2n); order halves.
PowerSeries r_even(const PowerSeries& R);

/// F(f)(w) = f^{<-1>}(w) / w. Order drops by one.
UnitSeries fourier(const PowerSeries& f);
/// S(w) = ((1+w)/w) M^{<-1>}(w) for a moment series M with nonzero mean.
/// Order drops by one.
UnitSeries s_transform(const PowerSeries& moments);

} // namespace freecomm
