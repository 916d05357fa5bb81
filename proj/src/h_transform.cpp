#include "selberg/h_transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "selberg/errors.hpp"
#include "selberg/gamma_quotient.hpp"
#include "selberg/numerics.hpp"
#include "selberg/special_functions.hpp"

namespace selberg {

namespace {

constexpr double kEdgeSlack = 1e-9;  // panel index rounding, in units of h
constexpr int kMaxRefinements = 3;

struct Window {
  double a = 0.0, b = 0.0;
};

Window window_for(double alpha, const HParams& hp) {
  return {hp.window.k_lo * kPi * alpha * hp.T, hp.window.k_hi * kPi * alpha * hp.T};
}

void check_params(const HParams& hp) {
  if (!(hp.T > 0.0) || !(hp.p > 0.0) || !(hp.alpha > 0.0))
    throw ValidationError("HParams requires T, p and alpha positive");
  if (!(hp.window.k_lo > 0.0) || !(hp.window.k_hi > hp.window.k_lo))
    throw ValidationError("window requires 0 < k_lo < k_hi");
}

void check_poles(const SeriesSpec& spec, double a, double b) {
  for (const auto& pole : spec.poles) {
    const Complex beta = pole.location;
    if (std::abs(beta.real() - 0.5) < 1e-12 && beta.imag() >= a && beta.imag() <= b)
      throw PoleError("pole of " + spec.name + " at ordinate " +
                      std::to_string(beta.imag()) + " lies in the integration window");
  }
}

// phi_alpha(t) = t log(t / (2 pi e alpha)) - pi/4.
double phase(double t, double alpha) {
  return t * (std::log(t / (2.0 * kPi * alpha)) - 1.0) - 0.25 * kPi;
}

// F(1/2 + it) by one of the two exact representations.
class LineValues {
 public:
  LineValues(const SeriesSpec& spec, HMode mode, const LineOptions& line)
      : spec_(spec), mode_(mode), line_(line) {
    if (mode_ == HMode::Second) tilde_ = tilde_spec(spec_);
  }

  std::vector<std::vector<Complex>> on_streams(const std::vector<LineStream>& streams) const {
    if (mode_ != HMode::Second) return sample_line(spec_, 0.5, streams, line_);
    std::vector<LineStream> neg(streams);
    for (auto& s : neg) {
      s.t0 = -s.t0;
      s.h = -s.h;
    }
    auto out = sample_line(tilde_, 0.5, neg, line_);
    for (std::size_t j = 0; j < out.size(); ++j)
      for (std::size_t k = 0; k < out[j].size(); ++k)
        out[j][k] *= multiplier(streams[j].t0 + static_cast<double>(k) * streams[j].h);
    return out;
  }

  std::vector<Complex> at(const std::vector<double>& ts) const {
    if (mode_ != HMode::Second) return sample_points(spec_, 0.5, ts, line_);
    std::vector<double> neg(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) neg[i] = -ts[i];
    auto out = sample_points(tilde_, 0.5, neg, line_);
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] *= multiplier(ts[i]);
    return out;
  }

  // Bound on |frequency| of t -> F(1/2+it) e^{i phi_alpha(t)} on [a, b] for
  // alpha in [alpha_lo, alpha_hi]. F contributes -log n, n <= 4X.
  double max_frequency(double a, double b, double alpha_lo, double alpha_hi) const {
    const double X = line_smoothing_scale(spec_, 0.5, b, line_);
    const double dphi_lo = std::log(a / (2.0 * kPi * alpha_hi));
    const double dphi_hi = std::log(b / (2.0 * kPi * alpha_lo));
    return std::max(std::abs(dphi_lo - std::log(4.0 * X)), std::abs(dphi_hi)) + 1.0;
  }

 private:
  Complex multiplier(double t) const {
    return std::exp(log_fe_multiplier(spec_, Complex(0.5, t)));
  }

  const SeriesSpec& spec_;
  SeriesSpec tilde_;
  HMode mode_;
  LineOptions line_;
};

// Composite GL16 over [a, a + panels h], stored as one stream per node.
struct Grid {
  double a = 0.0, h = 0.0;
  std::size_t panels = 0;
  std::vector<double> t;  // node ordinates, panel-major
  std::vector<double> w;  // matching weights
};

Grid make_grid(double a, double b, double omega, double wavelengths) {
  Grid g;
  g.a = a;
  const double width = wavelengths * 2.0 * kPi / omega;
  g.panels = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / width)));
  g.h = (b - a) / static_cast<double>(g.panels);
  const auto& gl = gauss_legendre16();
  g.t.resize(g.panels * gl.size());
  g.w.resize(g.t.size());
  for (std::size_t k = 0; k < g.panels; ++k)
    for (int j = 0; j < gl.size(); ++j) {
      const std::size_t i = k * gl.size() + j;
      g.t[i] = a + g.h * (static_cast<double>(k) + 0.5 * (1.0 + gl.nodes[j]));
      g.w[i] = 0.5 * g.h * gl.weights[j];
    }
  return g;
}

std::vector<Complex> grid_values(const LineValues& lv, const Grid& g) {
  const auto& gl = gauss_legendre16();
  std::vector<LineStream> streams(gl.size());
  for (int j = 0; j < gl.size(); ++j)
    streams[j] = {g.a + 0.5 * g.h * (1.0 + gl.nodes[j]), g.h, g.panels};
  const auto per_node = lv.on_streams(streams);
  std::vector<Complex> v(g.t.size());
  for (std::size_t k = 0; k < g.panels; ++k)
    for (int j = 0; j < gl.size(); ++j) v[k * gl.size() + j] = per_node[j][k];
  return v;
}

// GL16 nodes on [lo, hi] appended to ts and ws.
void append_panel(double lo, double hi, std::vector<double>& ts, std::vector<double>& ws) {
  if (!(hi > lo)) return;
  const auto& gl = gauss_legendre16();
  for (int j = 0; j < gl.size(); ++j) {
    ts.push_back(lo + 0.5 * (hi - lo) * (1.0 + gl.nodes[j]));
    ws.push_back(0.5 * (hi - lo) * gl.weights[j]);
  }
}

std::vector<Complex> transform(const SeriesSpec& spec, const HParams& base,
                               const std::vector<double>& alphas, HMode mode,
                               const HOptions& opts, double wavelengths) {
  std::vector<Complex> out(alphas.size());
  if (alphas.empty()) return out;
  const auto [amin, amax] = std::minmax_element(alphas.begin(), alphas.end());
  if (!(*amin > 0.0)) throw ValidationError("alpha must be positive");
  const Window lo = window_for(*amin, base), hi = window_for(*amax, base);
  check_poles(spec, lo.a, hi.b);

  const LineValues lv(spec, mode, opts.line);
  const double omega = lv.max_frequency(lo.a, hi.b, *amin, *amax);
  const Grid g = make_grid(lo.a, hi.b, omega, wavelengths);
  const std::vector<Complex> v = grid_values(lv, g);

  // Partial panels at the edges of each window.
  std::vector<std::size_t> first(alphas.size()), last(alphas.size()), edge_begin(alphas.size() + 1);
  std::vector<double> edge_t, edge_w;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const Window w = window_for(alphas[i], base);
    const double ka = (w.a - g.a) / g.h, kb = (w.b - g.a) / g.h;
    first[i] = static_cast<std::size_t>(std::max(0.0, std::ceil(ka - kEdgeSlack)));
    last[i] = static_cast<std::size_t>(std::max(0.0, std::floor(kb + kEdgeSlack)));
    last[i] = std::min(last[i], g.panels);
    edge_begin[i] = edge_t.size();
    if (first[i] >= last[i]) {
      first[i] = last[i] = 0;
      append_panel(w.a, w.b, edge_t, edge_w);
    } else {
      append_panel(w.a, g.a + static_cast<double>(first[i]) * g.h, edge_t, edge_w);
      append_panel(g.a + static_cast<double>(last[i]) * g.h, w.b, edge_t, edge_w);
    }
  }
  edge_begin[alphas.size()] = edge_t.size();
  const std::vector<Complex> ev = edge_t.empty() ? std::vector<Complex>{} : lv.at(edge_t);

  const std::size_t per_panel = gauss_legendre16().size();
  parallel_for(alphas.size(), resolve_threads(opts.line.threads), [&](std::size_t i) {
    const double alpha = alphas[i];
    CompensatedSum<Complex> acc;
    for (std::size_t k = first[i] * per_panel; k < last[i] * per_panel; ++k)
      acc.add(g.w[k] * v[k] * std::polar(1.0, phase(g.t[k], alpha)));
    for (std::size_t k = edge_begin[i]; k < edge_begin[i + 1]; ++k)
      acc.add(edge_w[k] * ev[k] * std::polar(1.0, phase(edge_t[k], alpha)));
    out[i] = kHNormalization / std::sqrt(alpha) * acc.value();
  });
  for (const auto& h : out) require_finite(h, "H(alpha, T)");
  return out;
}

Complex refined(const SeriesSpec& spec, const HParams& hp, double quad_tol, HMode mode,
                const HOptions& opts) {
  check_params(hp);
  if (!(quad_tol > 0.0)) throw ValidationError("quad_tol must be positive");
  double wl = opts.panel_wavelengths;
  Complex prev = transform(spec, hp, {hp.alpha}, mode, opts, wl)[0];
  for (int r = 0; r < kMaxRefinements; ++r) {
    wl *= 0.5;
    const Complex next = transform(spec, hp, {hp.alpha}, mode, opts, wl)[0];
    if (std::abs(next - prev) <= quad_tol * (1.0 + std::abs(next))) return next;
    prev = next;
  }
  std::ostringstream msg;
  msg << "H(alpha, T) quadrature did not settle to " << quad_tol;
  throw BudgetExceeded(msg.str());
}

}  // namespace

HParams choose_parameters(double d, double sigma_a, double T, double p,
                          std::optional<double> delta) {
  if (!(d > 0.0)) throw ValidationError("choose_parameters requires d > 0");
  if (!(sigma_a > 0.0) || !(T > 1.0) || !(p > 0.0))
    throw ValidationError("choose_parameters requires sigma_a > 0, T > 1, p > 0");
  HParams hp;
  hp.T = T;
  hp.p = p;
  hp.delta = (d > 1.0 && d < 2.0) ? (2.0 - d) / (d - 1.0 / (4.0 * sigma_a)) : 0.3;
  if (delta) {
    if (!(*delta > 0.0)) throw ValidationError("delta must be positive");
    hp.delta = *delta;
  }
  hp.rho1 = hp.delta / (8.0 * sigma_a);
  hp.rho1_formula = hp.rho1;
  hp.eps = hp.delta / 20.0;
  if (std::pow(T, 1.0 + hp.rho1) <= 4.0 * T) hp.rho1 = std::log(8.0) / std::log(T);
  hp.X1 = std::pow(T, 1.0 + hp.rho1);
  hp.alpha = std::pow(T, hp.delta);
  return hp;
}

Complex h_direct(const SeriesSpec& spec, const HParams& hp, double quad_tol,
                 const HOptions& opts) {
  return refined(spec, hp, quad_tol, HMode::Direct, opts);
}

Complex h_second_method(const SeriesSpec& spec, const HParams& hp, double quad_tol,
                        const HOptions& opts) {
  return refined(spec, hp, quad_tol, HMode::Second, opts);
}

Complex h_main_term(const SeriesSpec& spec, const HParams& hp) {
  check_params(hp);
  const auto n_lo = static_cast<std::size_t>(std::floor(hp.T)) + 1;
  const auto n_hi = static_cast<std::size_t>(std::ceil(4.0 * hp.T)) - 1;
  if (n_hi < n_lo) return {};
  const auto a = coefficient_table(spec, n_hi);
  CompensatedSum<Complex> acc;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const double nd = static_cast<double>(n);
    const double frac = std::fmod(hp.alpha * nd, 1.0);
    const double weight = std::exp(-std::pow(nd / hp.X1, hp.p));
    acc.add((*a)[n - 1] * weight * std::polar(1.0, -2.0 * kPi * frac));
  }
  return std::sqrt(2.0 * kPi) * acc.value();
}

HMode parse_hmode(const std::string& name) {
  if (name == "direct") return HMode::Direct;
  if (name == "second") return HMode::Second;
  if (name == "main_term") return HMode::MainTerm;
  throw ValidationError("unknown mode '" + name + "' (direct, second, main_term)");
}

std::string hmode_name(HMode mode) {
  switch (mode) {
    case HMode::Direct: return "direct";
    case HMode::Second: return "second";
    case HMode::MainTerm: return "main_term";
  }
  return "direct";
}

std::vector<Complex> h_batch(const SeriesSpec& spec, const HParams& base,
                             const std::vector<double>& alphas, HMode mode,
                             const HOptions& opts) {
  check_params(base);
  if (mode != HMode::MainTerm)
    return transform(spec, base, alphas, mode, opts, opts.panel_wavelengths);
  std::vector<Complex> out(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    HParams hp = base;
    hp.alpha = alphas[i];
    out[i] = h_main_term(spec, hp);
  }
  return out;
}

std::vector<double> alpha_grid(const HParams& hp, int n_alpha) {
  if (n_alpha < 1) throw ValidationError("n_alpha must be positive");
  const double a0 = std::pow(hp.T, hp.delta);
  std::vector<double> out(n_alpha);
  for (int k = 0; k < n_alpha; ++k) out[k] = a0 + (k + 0.5) / n_alpha;
  return out;
}

double l2_recover(const SeriesSpec& spec, double T, const HParams& hp_base, int n_alpha,
                  HMode mode, const HOptions& opts) {
  if (n_alpha < 64) throw ValidationError("l2_recover requires n_alpha >= 64");
  HParams hp = hp_base;
  hp.T = T;
  const auto H = h_batch(spec, hp, alpha_grid(hp, n_alpha), mode, opts);
  CompensatedSum<double> acc;
  for (const auto& h : H) acc.add(std::norm(h));
  return std::sqrt(acc.value() / (2.0 * kPi * n_alpha));
}

double l2_reference(const SeriesSpec& spec, const HParams& hp) {
  const auto n_lo = static_cast<std::size_t>(std::floor(hp.T)) + 1;
  const auto n_hi = static_cast<std::size_t>(std::ceil(4.0 * hp.T)) - 1;
  if (n_hi < n_lo) return 0.0;
  const auto a = coefficient_table(spec, n_hi);
  CompensatedSum<double> acc;
  for (std::size_t n = n_lo; n <= n_hi; ++n)
    acc.add(std::norm((*a)[n - 1]) *
            std::exp(-2.0 * std::pow(static_cast<double>(n) / hp.X1, hp.p)));
  return std::sqrt(acc.value());
}

double l2_norm(const SeriesSpec& spec, double T) {
  const auto n_lo = static_cast<std::size_t>(std::floor(T)) + 1;
  const auto n_hi = static_cast<std::size_t>(std::ceil(4.0 * T)) - 1;
  if (n_hi < n_lo) return 0.0;
  const auto a = coefficient_table(spec, n_hi);
  CompensatedSum<double> acc;
  for (std::size_t n = n_lo; n <= n_hi; ++n) acc.add(std::norm((*a)[n - 1]));
  return std::sqrt(acc.value());
}

LRanges l_ranges(const SeriesSpec& spec, const HParams& hp, std::size_t n_max) {
  const InvariantSet inv = invariants(spec);
  LRanges r;
  const double scale = inv.q * std::pow(hp.alpha, inv.d);
  r.lower = scale * std::pow(hp.window.k_lo * kPi * hp.T, inv.d - 1.0);
  r.upper = scale * std::pow(hp.window.k_hi * kPi * hp.T, inv.d - 1.0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    if (nd < r.lower) ++r.below;
    else if (nd > r.upper) ++r.above;
    else ++r.inside;
  }
  return r;
}

}  // namespace selberg
