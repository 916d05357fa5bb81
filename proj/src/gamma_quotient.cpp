#include "selberg/gamma_quotient.hpp"

#include <cmath>
#include <sstream>

#include "selberg/errors.hpp"
#include "selberg/special_functions.hpp"

namespace selberg {

namespace {

[[noreturn]] void rethrow_factor(const char* side, std::size_t j,
                                 const GammaFactor& f, Complex s) {
  std::ostringstream msg;
  msg << "gamma quotient: " << side << " factor " << j << " (lambda=" << f.lambda
      << ", mu=" << f.mu << ") hits a pole of Gamma at s=" << s;
  throw PoleError(msg.str());
}

// Sums the log-quotient; *vanishes is set when only quotient-denominator
// arguments hit poles (null pointer means any pole throws).
Complex log_quotient(const GammaData& g, Complex s, bool* vanishes) {
  require_finite(s, "gamma quotient");
  CompensatedSum<Complex> acc;
  auto term = [&](const GammaFactor& f, double sign, const char* side,
                  std::size_t j) {
    const Complex top = f.lambda * (1.0 - s) + std::conj(f.mu);
    const Complex bottom = f.lambda * s + f.mu;
    // For sign > 0 `top` sits in the quotient numerator, else `bottom` does.
    const Complex up = sign > 0 ? top : bottom;
    const Complex down = sign > 0 ? bottom : top;
    try {
      acc.add(log_gamma(up));
    } catch (const PoleError&) {
      rethrow_factor(side, j, f, s);
    }
    try {
      acc.add(-log_gamma(down));
    } catch (const PoleError&) {
      if (!vanishes) rethrow_factor(side, j, f, s);
      *vanishes = true;
    }
  };
  for (std::size_t j = 0; j < g.numerator.size(); ++j)
    term(g.numerator[j], 1.0, "numerator", j);
  for (std::size_t j = 0; j < g.denominator.size(); ++j)
    term(g.denominator[j], -1.0, "denominator", j);
  return acc.value();
}

}  // namespace

Complex log_quotient_exact(const GammaData& g, Complex s) {
  return log_quotient(g, s, nullptr);
}

Complex quotient_exact(const GammaData& g, Complex s) {
  return std::exp(log_quotient_exact(g, s));
}

std::optional<Complex> log_quotient_or_vanish(const GammaData& g, Complex s) {
  bool vanishes = false;
  const Complex l = log_quotient(g, s, &vanishes);
  if (vanishes) return std::nullopt;
  return l;
}

Complex quotient_exact_or_zero(const GammaData& g, Complex s) {
  const auto l = log_quotient_or_vanish(g, s);
  return l ? std::exp(*l) : Complex{};
}

Complex quotient_stirling(const GammaData& g, double x, double t) {
  if (!(t > 0.0) || !std::isfinite(t) || !std::isfinite(x))
    throw ValidationError("quotient_stirling: needs finite x and t > 0");
  const InvariantSet inv = invariants(g);
  const double lt = std::log(t), lc = std::log(inv.C);
  const double log_mod = (0.5 - x) * (lc + inv.d * lt);
  const double phase = -t * inv.d * (lt - 1.0) + inv.A * lt + inv.B - t * lc;
  return std::polar(std::exp(log_mod), phase);
}

Complex single_factor_stirling(const GammaFactor& f, double x, double t) {
  if (!(t > 0.0)) throw ValidationError("single_factor_stirling: needs t > 0");
  const double l = f.lambda;
  const double llt = std::log(l * t);
  const Complex I(0.0, 1.0);
  const Complex log_val = l * (1.0 - 2.0 * x) * llt +
                          (std::conj(f.mu) - f.mu) * llt -
                          I * (kPi / 2.0) * (l + 2.0 * f.mu.real() - 1.0) -
                          2.0 * I * l * t * (llt - 1.0);
  return std::exp(log_val);
}

double quotient_bound(const GammaData& g, double x, double u, double tv) {
  return std::pow(1.0 + std::abs(tv), -degree(g) * (x - 0.5 + u));
}

Complex log_fe_multiplier(const SeriesSpec& spec, Complex s) {
  return std::log(spec.omega) + (1.0 - 2.0 * s) * std::log(spec.Q) +
         log_quotient_exact(spec.gamma, s);
}

Complex fe_multiplier(const SeriesSpec& spec, Complex s) {
  return std::exp(log_fe_multiplier(spec, s));
}

}  // namespace selberg
