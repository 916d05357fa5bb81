#pragma once

#include <optional>

#include "selberg/series_core.hpp"

namespace selberg {

// log of G~(1-s)/G(s), i.e.
//   sum_num [logG(l(1-s)+conj mu) - logG(l s+mu)]
// - sum_den [logG(l'(1-s)+conj mu') - logG(l' s+mu')].
// Throws PoleError naming the offending factor.
Complex log_quotient_exact(const GammaData& g, Complex s);

Complex quotient_exact(const GammaData& g, Complex s);

// As quotient_exact, but returns 0 when the only poles hit are in the
// quotient's own denominator (where 1/Gamma vanishes).
Complex quotient_exact_or_zero(const GammaData& g, Complex s);

// log_quotient_exact, or nullopt where quotient_exact_or_zero vanishes.
std::optional<Complex> log_quotient_or_vanish(const GammaData& g, Complex s);

// Large-t main term of the quotient at s = x + it:
//   (C t^d)^{1/2-x} e^{-itd log(t/e)} t^{iA} e^{iB} C^{-it}.
// Relative error O(1/t). Throws ValidationError for t <= 0.
Complex quotient_stirling(const GammaData& g, double x, double t);

// Main term for one factor pair Gamma(l(1-s)+conj mu)/Gamma(l s+mu):
//   (lt)^{l(1-2x)} e^{(conj mu - mu) log(lt)} e^{-i pi/2 (l+2 Re mu-1)}
//   e^{-2ilt log(lt/e)}.
Complex single_factor_stirling(const GammaFactor& f, double x, double t);

// (1+|tv|)^{-d(x-1/2+u)}: decay envelope of the quotient at
// s = x + u + i tv, up to a constant.
double quotient_bound(const GammaData& g, double x, double u, double tv);

// omega Q^{1-2s} G~(1-s)/G(s), so that F(s) = multiplier * F~(1-s).
Complex fe_multiplier(const SeriesSpec& spec, Complex s);
Complex log_fe_multiplier(const SeriesSpec& spec, Complex s);

}  // namespace selberg
