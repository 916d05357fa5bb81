#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include <doctest.h>

#include "selberg/numerics.hpp"

using namespace selberg;

TEST_CASE("compensated sum recovers cancelled small terms") {
  CompensatedSum<double> s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-12));
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {2, 5, 16}) {
    GaussLegendre gl(n);
    CHECK(gl.size() == n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) sum += gl.weights[j] * std::pow(gl.nodes[j], k);
      const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-14));
    }
  }
  CHECK_THROWS(GaussLegendre(1));
}

TEST_CASE("resolve_threads prefers the explicit request, then the environment") {
  CHECK(resolve_threads(3) == 3);
  ::setenv("SELBERG_LAB_THREADS", "5", 1);
  CHECK(resolve_threads(0) == 5);
  ::unsetenv("SELBERG_LAB_THREADS");
  CHECK(resolve_threads(0) == 1);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  for (unsigned threads : {1u, 4u}) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 1000);
    CHECK(*std::min_element(hits.begin(), hits.end()) == 1);
  }
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("seven");
                  }),
                  std::runtime_error);
}
