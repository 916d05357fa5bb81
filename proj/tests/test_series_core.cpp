#include <cmath>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "selberg/errors.hpp"
#include "selberg/gamma_quotient.hpp"
#include "selberg/series_core.hpp"

using namespace selberg;

namespace {

// Coefficients of q prod_{k>=1} (1 - q^k)^24 by direct multiplication.
std::vector<long long> eta_product_tau(int N) {
  std::vector<long long> c(N, 0);
  c[0] = 1;
  for (int k = 1; k < N; ++k)
    for (int rep = 0; rep < 24; ++rep)
      for (int i = N - 1; i >= k; --i) c[i] -= c[i - k];
  return c;  // c[i] = tau(i + 1)
}

long long divisor_sum(int n, int power) {
  long long s = 0;
  for (int k = 1; k <= n; ++k)
    if (n % k == 0) s += power == 0 ? 1 : k;
  return s;
}

}  // namespace

TEST_CASE("degree is twice the lambda balance") {
  CHECK(degree(GammaData{{{0.5, 0.0}}, {}}) == 1.0);
  CHECK(degree(GammaData{{{0.5, -0.25}, {0.5, 0.25}}, {}}) == 2.0);
  CHECK(degree(GammaData{{{1.0, 0.0}}, {{0.5, 0.0}}}) == 1.0);
  CHECK(degree(GammaData{}) == 0.0);
}

TEST_CASE("invariants of zeta and the shifted pair") {
  const InvariantSet z = invariants(builtin_spec("zeta"));
  CHECK(z.d == 1.0);
  CHECK(z.A == 0.0);
  CHECK(z.C == doctest::Approx(0.5));
  CHECK(z.q == doctest::Approx(1.0));
  const InvariantSet pair = invariants(builtin_spec("shifted_zeta_pair"));
  CHECK(pair.d == 2.0);
  CHECK(std::abs(pair.A) < 1e-15);
  CHECK(pair.C == doctest::Approx(0.25));
}

TEST_CASE("structural invariants hold for every builtin") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const SeriesSpec spec = builtin_spec(name);
    const InvariantSet inv = invariants(spec);
    double lam = 0.0;
    bool real_mu = true;
    for (const auto& f : spec.gamma.numerator) {
      lam += f.lambda;
      real_mu = real_mu && f.mu.imag() == 0.0;
    }
    for (const auto& f : spec.gamma.denominator) lam -= f.lambda;
    CHECK(inv.d == doctest::Approx(2.0 * lam));
    CHECK(inv.D == doctest::Approx(inv.C * std::exp(-inv.d)));
    CHECK(inv.q == doctest::Approx(2.0 * kPi * inv.C * spec.Q * spec.Q));
    if (real_mu && spec.gamma.denominator.empty()) CHECK(inv.A == 0.0);
    CHECK(std::abs(std::abs(spec.omega) - 1.0) < 1e-14);
  }
}

TEST_CASE("duplication rewrite keeps the degree and the functional equation") {
  SeriesSpec one = builtin_spec("zeta");
  SeriesSpec two = one;
  two.gamma = GammaData{{{0.25, 0.0}, {0.25, 0.5}}, {}};
  two.Q = one.Q * std::sqrt(2.0);
  validate(two);
  CHECK(degree(two.gamma) == degree(one.gamma));
  CHECK(invariants(two).d == 1.0);
  for (int k = 0; k < 20; ++k) {
    const Complex s(0.5, 1.0 + 3.0 * k);
    CHECK_CLOSE(fe_multiplier(two, s), fe_multiplier(one, s), 1e-12);
  }
}

TEST_CASE("degree zero for an empty gamma factor") {
  CHECK(degree(GammaData{}) == 0.0);
  CHECK(invariants(GammaData{}).d == 0.0);
}

TEST_CASE("catalogue coefficients") {
  const auto z = coefficients(builtin_spec("zeta"), 5);
  for (const auto& a : z) CHECK(a == Complex(1.0));

  const auto d = coefficients(builtin_spec("zeta_squared"), 60);
  for (int n = 1; n <= 60; ++n) CHECK(d[n - 1].real() == static_cast<double>(divisor_sum(n, 0)));

  const auto pair = coefficients(builtin_spec("shifted_zeta_pair"), 40);
  CHECK(pair[3].real() == doctest::Approx(3.5));
  for (int n = 1; n <= 40; ++n)
    CHECK(pair[n - 1].real() == doctest::Approx(divisor_sum(n, 1) / std::sqrt(n)).epsilon(1e-14));

  const auto chi = coefficients(builtin_spec("dirichlet_L"), 12);
  const double want[] = {1, 0, -1, 0, 1, 0, -1, 0, 1, 0, -1, 0};
  for (int n = 0; n < 12; ++n) CHECK(chi[n].real() == want[n]);
}

TEST_CASE("Ramanujan tau matches the eta-product expansion") {
  const auto oracle_tau = eta_product_tau(200);
  const auto tau = ramanujan_tau(200);
  CHECK(tau[1] == -24);
  CHECK(tau[2] == 252);
  for (int n = 0; n < 200; ++n) CHECK(static_cast<long long>(tau[n]) == oracle_tau[n]);

  const auto a = coefficients(builtin_spec("ramanujan_delta"), 200);
  for (int n = 1; n <= 200; ++n) {
    CHECK(a[n - 1].real() == doctest::Approx(oracle_tau[n - 1] / std::pow(n, 5.5)).epsilon(1e-13));
    CHECK(std::abs(a[n - 1]) <= divisor_sum(n, 0));  // Deligne
  }
}

TEST_CASE("tau is multiplicative and satisfies the Hecke recursion") {
  const auto tau = ramanujan_tau(6000);
  auto t = [&](std::size_t n) { return tau[n - 1]; };
  CHECK(t(6) == t(2) * t(3));
  CHECK(t(35 * 143) == t(35) * t(143));
  // tau(p^2) = tau(p)^2 - p^11
  const __int128 p = 53, p11 = p * p * p * p * p * p * p * p * p * p * p;
  CHECK(t(53 * 53) == t(53) * t(53) - p11);
}

TEST_CASE("coefficient growth check") {
  const auto z = coefficient_growth_check(builtin_spec("zeta"), 1e4, 0.05);
  CHECK(z.observed_exponent == doctest::Approx(1.0).epsilon(0.01));
  CHECK(z.pass);
  const auto pair = coefficient_growth_check(builtin_spec("shifted_zeta_pair"), 1e4, 0.1);
  CHECK(pair.observed_exponent == doctest::Approx(1.5).epsilon(0.05));
  CHECK(pair.pass);
  CHECK(coefficient_growth_check(builtin_spec("ramanujan_delta"), 1e4, 0.15).pass);
}

TEST_CASE("characters are validated") {
  const auto info = character_info({0, 1, 0, -1});
  CHECK(info.modulus == 4);
  CHECK(info.parity == 1);
  CHECK_CLOSE(info.gauss_sum, Complex(0, 2), 1e-14);
  CHECK_THROWS_AS(character_info({0, 1, 0, 1}), ValidationError);   // principal, imprimitive
  CHECK_THROWS_AS(character_info({0, 1, 0, 0.5}), ValidationError);  // not unimodular
  CHECK_THROWS_AS(character_info({1, 1, 0, -1}), ValidationError);   // chi(0) != 0
  const auto five = character_info({0, 1, Complex(0, 1), Complex(0, -1), -1});
  CHECK(five.parity == 1);
  CHECK(std::abs(std::abs(five.gauss_sum) - std::sqrt(5.0)) < 1e-13);
  // Real character mod 5 is even: omega = 1.
  const SeriesSpec legendre5 = dirichlet_spec({0, 1, -1, -1, 1});
  CHECK(std::abs(legendre5.omega - 1.0) < 1e-13);
  CHECK(legendre5.gamma.numerator[0].mu == Complex(0.0));
}

TEST_CASE("validate rejects malformed specs") {
  SeriesSpec bad = builtin_spec("zeta");
  bad.Q = -1.0;
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = builtin_spec("zeta");
  bad.omega = 2.0;
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = builtin_spec("zeta");
  bad.poles[0].location = 1.5;
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = builtin_spec("zeta");
  bad.poles[0].principal = {1.0, 1.0};
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = builtin_spec("zeta");
  bad.gamma.numerator[0].lambda = 0.0;
  CHECK_THROWS_AS(validate(bad), ValidationError);
  CHECK_THROWS_AS(builtin_spec("nope"), ValidationError);
}

TEST_CASE("tilde spec conjugates the data") {
  const SeriesSpec five = dirichlet_spec({0, 1, Complex(0, 1), Complex(0, -1), -1});
  const SeriesSpec t = tilde_spec(five);
  CHECK(t.omega == std::conj(five.omega));
  const auto a = coefficients(five, 10), b = coefficients(t, 10);
  for (int n = 0; n < 10; ++n) CHECK(b[n] == std::conj(a[n]));
}

TEST_CASE("coefficient cache is shared and safe under concurrent growth") {
  const SeriesSpec spec = builtin_spec("ramanujan_delta");
  std::vector<std::thread> pool;
  std::vector<Complex> seen(8);
  for (int i = 0; i < 8; ++i)
    pool.emplace_back([&, i] { seen[i] = (*coefficient_table(spec, 1000 * (i + 1)))[999]; });
  for (auto& th : pool) th.join();
  for (const auto& v : seen) CHECK(v == seen[0]);
  CHECK(coefficient_table(spec, 10)->size() >= 8000);
}
