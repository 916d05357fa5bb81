#include <cmath>

#include "oracles.hpp"
#include "selberg/line_sampler.hpp"
#include "selberg/smoothed_eval.hpp"

using namespace selberg;

TEST_CASE("line samples agree with the contour evaluator") {
  for (const char* name : {"zeta", "dirichlet_L", "zeta_squared", "shifted_zeta_pair",
                           "ramanujan_delta"}) {
    CAPTURE(name);
    const SeriesSpec spec = builtin_spec(name);
    const std::vector<LineStream> streams{{20.0, 3.7, 6}, {-45.0, 11.0, 4}};
    const auto v = sample_line(spec, 0.5, streams);
    for (std::size_t j = 0; j < streams.size(); ++j)
      for (std::size_t k = 0; k < streams[j].count; ++k) {
        const double t = streams[j].t0 + k * streams[j].h;
        CHECK(oracle::close(v[j][k], evaluate(spec, Complex(0.5, t)), 1e-9, 1e-11));
      }
  }
}

TEST_CASE("poles contribute through r1 off the line") {
  const SeriesSpec zeta = builtin_spec("zeta");
  const auto v = sample_points(zeta, 2.0, {0.0, 1.0, 25.0});
  CHECK(std::abs(v[0] - kPi * kPi / 6.0) < 1e-12);
  CHECK(oracle::close(v[2], evaluate(zeta, Complex(2.0, 25.0)), 1e-12));
}

TEST_CASE("points and streams give the same values") {
  const SeriesSpec spec = builtin_spec("dirichlet_L");
  const auto line = sample_line(spec, 0.5, {{100.0, 0.25, 40}});
  std::vector<double> ts;
  for (int k = 0; k < 40; ++k) ts.push_back(100.0 + 0.25 * k);
  const auto pts = sample_points(spec, 0.5, ts);
  for (int k = 0; k < 40; ++k) CHECK(oracle::close(line[0][k], pts[k], 1e-12, 1e-14));
}

TEST_CASE("thread count changes nothing beyond rounding") {
  const SeriesSpec spec = builtin_spec("zeta_squared");
  const std::vector<LineStream> streams{{300.0, 0.1, 2000}};
  LineOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const auto a = sample_line(spec, 0.5, streams, one);
  const auto b = sample_line(spec, 0.5, streams, one);
  const auto c = sample_line(spec, 0.5, streams, four);
  for (std::size_t k = 0; k < a[0].size(); ++k) {
    CHECK(a[0][k] == b[0][k]);
    CHECK(oracle::close(c[0][k], a[0][k], 1e-12, 1e-14));
  }
}

TEST_CASE("smoothing scale grows with height") {
  const SeriesSpec spec = builtin_spec("ramanujan_delta");
  const LineOptions opts;
  double prev = 0.0;
  for (double t : {10.0, 100.0, 1000.0}) {
    const double X = line_smoothing_scale(spec, 0.5, t, opts);
    CHECK(X > prev);
    prev = X;
  }
}
