#pragma once

#include <cstddef>
#include <vector>

#include "selberg/series_core.hpp"

namespace selberg {

// Arithmetic progression of ordinates t0 + k h, k < count.
struct LineStream {
  double t0 = 0.0;
  double h = 1.0;
  std::size_t count = 0;
};

struct LineOptions {
  double p = 32.0;            // smoothing sharpness
  double r2_tol = 1e-12;      // omitted contour term must stay below this
  unsigned threads = 0;       // 0: resolve_threads()
};

// F(x + i t) at every node of every stream, by the smoothed sum plus r1.
// X is chosen per block of nodes from r2_envelope so the contour term is
// below opts.r2_tol and can be dropped. Finite coefficient sources are
// summed exactly. Output is independent of the thread count.
std::vector<std::vector<Complex>> sample_line(const SeriesSpec& spec, double x,
                                              const std::vector<LineStream>& streams,
                                              const LineOptions& opts = {});

// Smoothing scale used by sample_line for ordinates up to |t|.
double line_smoothing_scale(const SeriesSpec& spec, double x, double t,
                            const LineOptions& opts);

// F(x + i t) at arbitrary ordinates with the same smoothing rule.
std::vector<Complex> sample_points(const SeriesSpec& spec, double x,
                                   const std::vector<double>& ts,
                                   const LineOptions& opts = {});

}  // namespace selberg
