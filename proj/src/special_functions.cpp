#include "selberg/special_functions.hpp"

#include <cmath>
#include <string>

#include "selberg/errors.hpp"

namespace selberg {

namespace {

constexpr double kPoleTolerance = 1e-14;
// Shift until Re z + |Im z| reaches this before applying the asymptotic series.
constexpr double kShiftThreshold = 10.0;

void require_not_pole(Complex z) {
  const double n = std::round(z.real());
  if (n <= 0.0 && std::abs(z - Complex(n, 0.0)) <= kPoleTolerance)
    throw PoleError("log_gamma: argument " + std::to_string(z.real()) + "+" +
                    std::to_string(z.imag()) + "i is a pole of Gamma");
}

}  // namespace

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw ValidationError(std::string(what) + ": non-finite complex argument");
}

Complex log_gamma(Complex z) {
  require_finite(z, "log_gamma");
  require_not_pole(z);

  // log Gamma(z) = log Gamma(z + m) - sum_{k<m} log(z + k), principal logs.
  // Each log(z + k) is continuous off the cut, so the sum carries the branch.
  CompensatedSum<Complex> shift;
  while (z.real() + std::abs(z.imag()) < kShiftThreshold) {
    shift.add(std::log(z));
    z += 1.0;
  }

  using LD = long double;
  using CLD = std::complex<LD>;
  const CLD w(z.real(), z.imag());
  const CLD inv = LD(1) / w;
  const CLD inv2 = inv * inv;
  // B_{2k} / (2k (2k-1)) for k = 1..7.
  constexpr LD c[] = {1.0L / 12,         -1.0L / 360,   1.0L / 1260,
                      -1.0L / 1680,      1.0L / 1188,   -691.0L / 360360,
                      1.0L / 156};
  CLD series = c[6];
  for (int k = 5; k >= 0; --k) series = c[k] + inv2 * series;
  series *= inv;

  constexpr LD half_log_2pi = 0.918938533204672741780329736405617639861L;
  const CLD main = (w - LD(0.5)) * std::log(w) - w + half_log_2pi + series;
  const Complex result(static_cast<double>(main.real()),
                       static_cast<double>(main.imag()));
  return result - shift.value();
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex stirling_log_gamma(Complex z) {
  require_finite(z, "stirling_log_gamma");
  if (std::abs(z) < 1.0 - 1e-12)
    throw ValidationError("stirling_log_gamma: requires |z| >= 1");
  if (std::abs(std::arg(z)) >= kPi - kStirlingSectorMargin)
    throw ValidationError("stirling_log_gamma: argument outside the sector");
  constexpr double half_log_2pi = 0.918938533204672741780329736405617639861;
  return (z - 0.5) * std::log(z) - z + half_log_2pi;
}

}  // namespace selberg
