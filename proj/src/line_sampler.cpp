#include "selberg/line_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "selberg/errors.hpp"
#include "selberg/smoothed_eval.hpp"

namespace selberg {

namespace {

constexpr std::size_t kBlock = 512;  // nodes per rotation run before reseeding
constexpr double kBucketRatio = 1.05;
constexpr double kLogInvEps = 36.7368005696771;

int bucket_of(double t) {
  const int b = static_cast<int>(std::ceil(std::log(std::abs(t) + 10.0) / std::log(kBucketRatio)));
  return t < 0 ? -b : b;
}

double bucket_ordinate(int b) {
  const double t = std::pow(kBucketRatio, std::abs(b)) - 10.0;
  return b < 0 ? -t : t;
}

// Coefficients c_n = a_n e^{-(n/X)^p} n^{-x}, truncated where the weight
// underflows; X = 0 means no smoothing (finite source).
struct Weighted {
  std::vector<double> re, im, logn;
};

Weighted weighted(const std::vector<Complex>& a, std::size_t N, double x, double X, double p) {
  Weighted w;
  w.re.reserve(N);
  w.im.reserve(N);
  w.logn.reserve(N);
  const double logX = X > 0.0 ? std::log(X) : 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const double weight = X > 0.0 ? std::exp(-std::exp(p * (ln - logX))) : 1.0;
    if (weight == 0.0) break;
    const Complex c = a[n - 1] * weight * std::exp(-x * ln);
    w.re.push_back(c.real());
    w.im.push_back(c.imag());
    w.logn.push_back(ln);
  }
  return w;
}

class Smoothing {
 public:
  Smoothing(const SeriesSpec& spec, double x, const LineOptions& opts)
      : spec_(spec), x_(x), opts_(opts), finite_(coefficient_support(spec) > 0) {}

  bool finite() const { return finite_; }

  void prepare(const std::vector<int>& buckets, unsigned threads) {
    std::vector<int> todo;
    for (int b : buckets)
      if (!scale_.count(b)) todo.push_back(b);
    std::sort(todo.begin(), todo.end());
    todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
    std::vector<double> out(todo.size());
    parallel_for(todo.size(), threads, [&](std::size_t i) {
      out[i] = finite_ ? 0.0 : line_smoothing_scale(spec_, x_, bucket_ordinate(todo[i]), opts_);
    });
    for (std::size_t i = 0; i < todo.size(); ++i) scale_[todo[i]] = out[i];
  }

  double X(double t) const { return scale_.at(bucket_of(t)); }

  std::size_t terms(double X) const {
    if (finite_) return coefficient_support(spec_);
    const std::size_t N = default_ncut(spec_, {X, opts_.p, 1.0});
    return N;
  }

  Complex r1(double t, double X) const {
    if (spec_.poles.empty() || finite_) return {};
    SmoothingParams sp{X, opts_.p, 0.5 * max_eta(spec_, x_, opts_.p)};
    return residue_term_r1(spec_, Complex(x_, 0.0), t, sp);
  }

 private:
  const SeriesSpec& spec_;
  double x_;
  LineOptions opts_;
  bool finite_;
  std::map<int, double> scale_;
};

}  // namespace

double line_smoothing_scale(const SeriesSpec& spec, double x, double t, const LineOptions& opts) {
  SmoothingParams sp;
  sp.p = opts.p;
  sp.eta = 0.5 * max_eta(spec, x, opts.p);
  sp.X = std::max(2.0 * analytic_conductor(spec, t), 8.0);
  for (int it = 0; it < 200; ++it) {
    const double env = r2_envelope(spec, x, t, sp);
    if (env <= opts.r2_tol) return sp.X;
    const double step = std::isfinite(env) ? std::pow(env / opts.r2_tol, 2.0 / opts.p) : 4.0;
    sp.X *= std::clamp(step, 1.1, 4.0);
  }
  throw NumericError("line sampler: could not make the contour term negligible");
}

std::vector<std::vector<Complex>> sample_line(const SeriesSpec& spec, double x,
                                              const std::vector<LineStream>& streams,
                                              const LineOptions& opts) {
  const unsigned threads = resolve_threads(opts.threads);
  Smoothing sm(spec, x, opts);

  struct Item {
    std::size_t stream, first, count;
    double X;
  };
  std::vector<Item> items;
  std::vector<int> buckets;
  for (std::size_t s = 0; s < streams.size(); ++s) {
    const auto& st = streams[s];
    for (std::size_t k = 0; k < st.count; k += kBlock) {
      const std::size_t cnt = std::min(kBlock, st.count - k);
      const double ta = st.t0 + st.h * k, tb = st.t0 + st.h * (k + cnt - 1);
      const double tmax = std::abs(ta) > std::abs(tb) ? ta : tb;
      buckets.push_back(bucket_of(tmax));
      items.push_back({s, k, cnt, tmax});
    }
  }
  sm.prepare(buckets, threads);
  std::size_t n_max = 1;
  for (auto& it : items) {
    it.X = sm.X(it.X);
    n_max = std::max(n_max, sm.terms(it.X));
  }
  const auto table = coefficient_table(spec, n_max);

  std::vector<std::vector<Complex>> out(streams.size());
  for (std::size_t s = 0; s < streams.size(); ++s) out[s].resize(streams[s].count);

  parallel_for(items.size(), threads, [&](std::size_t i) {
    const Item& it = items[i];
    const LineStream& st = streams[it.stream];
    const Weighted w = weighted(*table, sm.terms(it.X), x, sm.finite() ? 0.0 : it.X, opts.p);
    const std::size_t N = w.re.size();
    std::vector<double> zr(N), zi(N), rr(N), ri(N);
    const double t_first = st.t0 + st.h * it.first;
    for (std::size_t n = 0; n < N; ++n) {
      const double ph = -t_first * w.logn[n], dh = -st.h * w.logn[n];
      zr[n] = std::cos(ph);
      zi[n] = std::sin(ph);
      rr[n] = std::cos(dh);
      ri[n] = std::sin(dh);
    }
    const double* cr = w.re.data();
    const double* ci = w.im.data();
    double* pzr = zr.data();
    double* pzi = zi.data();
    const double* prr = rr.data();
    const double* pri = ri.data();
    for (std::size_t k = 0; k < it.count; ++k) {
      double sr = 0.0, si = 0.0;
#pragma omp simd reduction(+ : sr, si)
      for (std::size_t n = 0; n < N; ++n) {
        const double a = pzr[n], b = pzi[n];
        sr += cr[n] * a - ci[n] * b;
        si += cr[n] * b + ci[n] * a;
        pzr[n] = a * prr[n] - b * pri[n];
        pzi[n] = a * pri[n] + b * prr[n];
      }
      const double t = st.t0 + st.h * (it.first + k);
      out[it.stream][it.first + k] = Complex(sr, si) + sm.r1(t, it.X);
    }
  });
  return out;
}

std::vector<Complex> sample_points(const SeriesSpec& spec, double x, const std::vector<double>& ts,
                                   const LineOptions& opts) {
  const unsigned threads = resolve_threads(opts.threads);
  Smoothing sm(spec, x, opts);
  std::vector<int> buckets;
  for (double t : ts) buckets.push_back(bucket_of(t));
  sm.prepare(buckets, threads);
  std::size_t n_max = 1;
  for (double t : ts) n_max = std::max(n_max, sm.terms(sm.X(t)));
  const auto table = coefficient_table(spec, n_max);
  std::vector<Complex> out(ts.size());
  parallel_for(ts.size(), threads, [&](std::size_t i) {
    const double X = sm.X(ts[i]);
    const Weighted w = weighted(*table, sm.terms(X), x, sm.finite() ? 0.0 : X, opts.p);
    double sr = 0.0, si = 0.0;
    for (std::size_t n = 0; n < w.re.size(); ++n) {
      const double ph = -ts[i] * w.logn[n];
      const double c = std::cos(ph), s = std::sin(ph);
      sr += w.re[n] * c - w.im[n] * s;
      si += w.re[n] * s + w.im[n] * c;
    }
    out[i] = Complex(sr, si) + sm.r1(ts[i], X);
  });
  return out;
}

}  // namespace selberg
