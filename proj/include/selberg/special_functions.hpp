#pragma once

#include "selberg/numerics.hpp"

namespace selberg {

// Principal branch of log Gamma: real on the positive axis, continuous on
// C minus (-inf, 0]. On the cut the value is the limit from the side given
// by the sign of the imaginary zero, so conj(log_gamma(z)) ==
// log_gamma(conj(z)) holds bit for bit.
// 
// Throws PoleError within 1e-14 of a non-positive integer.
Complex log_gamma(Complex z);

Complex gamma(Complex z);

// Half-opening of the excluded sector around the negative axis accepted by
// stirling_log_gamma: |Arg z| must stay below pi - kStirlingSectorMargin.
inline constexpr double kStirlingSectorMargin = kPi / 6.0;

// |stirling_log_gamma(z) - log_gamma(z)| <= kStirlingErrorConstant / |z|
// throughout the admissible region (measured, see the unit tests).
inline constexpr double kStirlingErrorConstant = 0.1;

// Leading Stirling term (z - 1/2) log z - z + log(2 pi)/2 with no Bernoulli
// corrections. Requires |z| >= 1 inside the sector above.
Complex stirling_log_gamma(Complex z);

// Throws ValidationError if either component is NaN or infinite.
void require_finite(Complex z, const char* what);

}  // namespace selberg
