#include <cmath>

#include "oracles.hpp"
#include "selberg/errors.hpp"
#include "selberg/gamma_quotient.hpp"
#include "selberg/special_functions.hpp"

using namespace selberg;

namespace {

const GammaData kZeta{{{0.5, 0.0}}, {}};
const GammaData kDelta{{{1.0, 5.5}}, {}};

double stirling_rel_error(const GammaData& g, double x, double t) {
  const Complex exact = quotient_exact(g, Complex(x, t));
  return std::abs(quotient_stirling(g, x, t) / exact - 1.0);
}

}  // namespace

TEST_CASE("quotient at closed-form points") {
  CHECK_CLOSE(quotient_exact(kZeta, 0.5), Complex(1.0), 1e-15);
  CHECK_CLOSE(quotient_exact(kZeta, 2.0), Complex(-2.0 * std::sqrt(kPi)), 1e-14);
  CHECK(std::abs(std::abs(quotient_exact(kZeta, Complex(0.5, 30.0))) - 1.0) < 1e-12);
}

TEST_CASE("unit modulus on the critical line for real shifts") {
  const GammaData several{{{0.5, 0.0}, {1.0, 5.5}, {0.25, 0.75}}, {{0.5, 0.5}}};
  for (const auto* g : {&kZeta, &kDelta, &several})
    for (double t = -200.0; t <= 200.0; t += 7.3)
      CHECK(std::abs(std::abs(quotient_exact(*g, Complex(0.5, t))) - 1.0) < 1e-9);
}

TEST_CASE("quotient_exact is the ratio of gamma values") {
  const GammaData g{{{0.5, Complex(0.25, 0.5)}, {1.0, 1.0}}, {{0.5, 0.0}}};
  const Complex s(0.3, 4.0);
  const Complex want =
      gamma(0.5 * (1.0 - s) + Complex(0.25, -0.5)) / gamma(0.5 * s + Complex(0.25, 0.5)) *
      gamma(1.0 - s + 1.0) / gamma(s + 1.0) * gamma(0.5 * s) / gamma(0.5 * (1.0 - s));
  CHECK_CLOSE(quotient_exact(g, s), want, 1e-13);
}

TEST_CASE("pole errors name the factor") {
  CHECK_THROWS_WITH_AS(quotient_exact(kZeta, 3.0), doctest::Contains("numerator"), PoleError);
  CHECK_THROWS_AS(quotient_exact(kZeta, 0.0), PoleError);
  CHECK(quotient_exact_or_zero(kZeta, 0.0) == Complex(0.0));
  CHECK_FALSE(log_quotient_or_vanish(kZeta, -2.0).has_value());
}

TEST_CASE("Stirling main term at the symmetry line has unit modulus") {
  CHECK(std::abs(std::abs(quotient_stirling(kZeta, 0.5, 50.0)) - 1.0) < 1e-14);
  CHECK_THROWS_AS(quotient_stirling(kZeta, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(quotient_stirling(kZeta, 1.0, -3.0), ValidationError);
}

TEST_CASE("Stirling relative error decays like 1/t") {
  for (const auto* g : {&kZeta, &kDelta}) {
    CHECK(stirling_rel_error(*g, 1.0, 100.0) <= 0.7 * stirling_rel_error(*g, 1.0, 50.0));
    double worst = 0.0;
    for (double t = 25.0; t <= 1600.0; t *= 2.0) {
      const double e = stirling_rel_error(*g, 1.0, t), e2 = stirling_rel_error(*g, 1.0, 2.0 * t);
      const double ratio = e2 / e;
      CHECK(ratio >= 0.3);
      CHECK(ratio <= 0.8);
      worst = std::max(worst, t * e);
    }
    // t * error stays bounded (empirically about 29 for these data).
    CHECK(worst < 40.0);
  }
}

TEST_CASE("Stirling phase constant B matches the exact phase") {
  const GammaData mixed{{{0.5, Complex(0.2, 0.3)}, {1.0, 0.7}}, {{0.25, 0.1}}};
  for (double x : {0.0, 0.5, 1.0, 2.0})
    for (const auto* g : {&kZeta, &kDelta, &mixed}) {
      // A wrong B leaves an O(1) phase error; the correct one decays as 1/t.
      const double e1 = stirling_rel_error(*g, x, 4000.0), e2 = stirling_rel_error(*g, x, 8000.0);
      CHECK(e1 < 50.0 / 4000.0);
      CHECK(e2 < 0.6 * e1);
    }
}

TEST_CASE("single-factor asymptotic") {
  const GammaFactor f{0.5, 0.0};
  for (double t : {10.0, 40.0, 160.0}) {
    const Complex exact = gamma(Complex(0.5 * (1.0 - 1.0), -0.5 * t)) / gamma(Complex(0.5, 0.5 * t));
    const Complex approx = single_factor_stirling(f, 1.0, t);
    CHECK(std::abs(approx / exact - 1.0) <= 5.0 / t);
  }
  // The product over factors reproduces quotient_stirling.
  const GammaData two{{{0.5, 0.0}, {1.0, 5.5}}, {}};
  for (double t : {30.0, 300.0}) {
    const Complex product = single_factor_stirling(two.numerator[0], 0.8, t) *
                            single_factor_stirling(two.numerator[1], 0.8, t);
    CHECK_CLOSE(product, quotient_stirling(two, 0.8, t), 1e-10);
  }
}

TEST_CASE("quotient_bound envelope") {
  for (double tv : {0.0, 10.0, 1e4}) CHECK(quotient_bound(kZeta, 0.5, 0.0, tv) == 1.0);
  CHECK(quotient_bound(GammaData{{{0.5, 0.0}, {0.5, 0.0}}, {}}, 0.5, 1.0, 9.0) ==
        doctest::Approx(0.01));
  double lo = 1e300, hi = 0.0;
  for (double t = 10.0; t <= 1000.0; t *= 1.2) {
    const double r = std::abs(quotient_exact(kZeta, Complex(1.0, t))) / quotient_bound(kZeta, 1.0, 0.0, t);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi < 2.0);
  CHECK(hi / lo < 1.1);
}

TEST_CASE("functional-equation multiplier") {
  const SeriesSpec zeta = builtin_spec("zeta");
  const Complex s(0.3, 12.0);
  const Complex want = std::pow(zeta.Q, 1.0 - 2.0 * s) * quotient_exact(zeta.gamma, s);
  CHECK_CLOSE(fe_multiplier(zeta, s), want, 1e-13);
  // The multiplier is an involution: m(s) * conj(m(1 - conj s)) = 1.
  for (const auto& name : builtin_names()) {
    const SeriesSpec spec = builtin_spec(name);
    const Complex m = fe_multiplier(spec, s) * fe_multiplier(tilde_spec(spec), 1.0 - s);
    CHECK_CLOSE(m, Complex(1.0), 1e-12);
  }
}
