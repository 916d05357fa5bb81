#include "selberg/smoothed_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "selberg/errors.hpp"
#include "selberg/gamma_quotient.hpp"
#include "selberg/special_functions.hpp"

namespace selberg {

namespace {

constexpr Complex I{0.0, 1.0};
// log(1/2^-53): the weight e^{-(n/X)^p} is below double epsilon past
// X * kLogInvEps^{1/p}.
constexpr double kLogInvEps = 36.7368005696771;
constexpr std::size_t kMaxDualTerms = 10'000'000;
constexpr int kMaxDoublings = 6;
constexpr int kCauchyPoints = 64;

Complex h_mellin(Complex w, double logX, double p) {
  return std::exp(w * logX + log_gamma(w / p)) / p;
}

void require_not_at_pole(const SeriesSpec& spec, Complex s) {
  for (const auto& pole : spec.poles)
    if (std::abs(s - pole.location) < 1e-12)
      throw PoleError("evaluation point coincides with a declared pole");
}

bool finite_source(const SeriesSpec& spec) {
  return coefficient_support(spec) > 0;
}

Complex direct_finite_sum(const SeriesSpec& spec, Complex s) {
  const std::size_t M = coefficient_support(spec);
  const auto a = coefficient_table(spec, M);
  CompensatedSum<Complex> acc;
  for (std::size_t n = 1; n <= M; ++n)
    if ((*a)[n - 1] != Complex{})
      acc.add((*a)[n - 1] * std::exp(-s * std::log(static_cast<double>(n))));
  return acc.value();
}

// The integrand of r2 on Re w = -p + eta, rewritten through the functional
// equation: F(s+w) = omega Q^{1-2(s+w)} quot(s+w) F~(1-s-w).
class ContourIntegrand {
 public:
  ContourIntegrand(const SeriesSpec& spec, Complex s, const SmoothingParams& sp,
                   double series_tol)
      : spec_(spec), s_(s), p_(sp.p), logX_(std::log(sp.X)), u_(-sp.p + sp.eta) {
    const double sigma_dual = 1.0 - s.real() - u_;
    const double gap = sigma_dual - spec.sigma_a;
    if (!(gap > 0.0))
      throw ValidationError("contour term: dual series does not converge");
    const std::size_t N = dual_terms(gap, series_tol);
    const auto a = coefficient_table(spec, N);
    b_.resize(N);
    logn_.resize(N);
    for (std::size_t n = 1; n <= N; ++n) {
      logn_[n - 1] = std::log(static_cast<double>(n));
      b_[n - 1] = std::conj((*a)[n - 1]) * std::exp(-sigma_dual * logn_[n - 1]);
      abs_sum_ += std::abs(b_[n - 1]);
    }
    log_omega_ = std::log(spec.omega);
    logQ_ = std::log(spec.Q);
    for (const auto* side : {&spec.gamma.numerator, &spec.gamma.denominator})
      for (const auto& f : *side) {
        lambda_sum_ += 2.0 * f.lambda;
        lambda_log_ += 2.0 * f.lambda * std::abs(std::log(f.lambda));
      }
  }

  // log of omega Q^{1-2(s+w)} quot(s+w) X^w Gamma(w/p); -inf real part when
  // the quotient vanishes.
  Complex log_kernel(double v) const {
    const Complex w(u_, v);
    const Complex sw = s_ + w;
    const auto lq = log_quotient_or_vanish(spec_.gamma, sw);
    if (!lq) return {-std::numeric_limits<double>::infinity(), 0.0};
    return log_omega_ + (1.0 - 2.0 * sw) * logQ_ + *lq + w * logX_ + log_gamma(w / p_);
  }

  Complex operator()(double v) const {
    const Complex lk = log_kernel(v);
    if (!std::isfinite(lk.real())) return {};
    const double tau = s_.imag() + v;
    CompensatedSum<Complex> acc;
    for (std::size_t k = 0; k < b_.size(); ++k)
      acc.add(b_[k] * std::polar(1.0, tau * logn_[k]));
    return std::exp(lk) * acc.value();
  }

  // Upper estimate of |integrand(v)|.
  double envelope(double v) const {
    const Complex lk = log_kernel(v);
    return std::isfinite(lk.real()) ? std::exp(lk.real()) * abs_sum_ : 0.0;
  }

  // Bound on |d/dv arg integrand|.
  double frequency(double v) const {
    const double tau = std::abs(s_.imag() + v) + 1.0;
    return 2.0 * std::abs(logQ_) + lambda_sum_ * std::abs(std::log(tau)) + lambda_log_ +
           std::abs(logX_) + std::log(static_cast<double>(b_.size())) +
           std::abs(std::log(std::abs(v) / p_ + 1.0)) / p_ + 2.0;
  }

  double p() const { return p_; }
  double abs_sum() const { return abs_sum_; }

 private:
  std::size_t dual_terms(double gap, double tol) const {
    if (const std::size_t M = coefficient_support(spec_)) return M;
    // Tail of sum |a_n| n^{-sigma} with |a_n| <= K n^{sigma_a - 1}:
    // about K N^{-gap} / gap.
    constexpr std::size_t kProbe = 4096;
    const auto a = coefficient_table(spec_, kProbe);
    double K = 0.0;
    for (std::size_t n = 1; n <= kProbe; ++n)
      K = std::max(K, std::abs((*a)[n - 1]) *
                          std::pow(static_cast<double>(n), 1.0 - spec_.sigma_a));
    K *= 4.0;
    const double N = std::pow(K / (tol * gap), 1.0 / gap);
    if (!(N < static_cast<double>(kMaxDualTerms)))
      throw NumericError("contour term: dual series tail does not converge fast enough "
                         "(increase p or reduce eta)");
    return std::max<std::size_t>(static_cast<std::size_t>(std::ceil(N)), 8);
  }

  const SeriesSpec& spec_;
  Complex s_;
  double p_, logX_, u_;
  std::vector<Complex> b_;
  std::vector<double> logn_;
  double abs_sum_ = 0.0;
  Complex log_omega_{};
  double logQ_ = 0.0;
  double lambda_sum_ = 0.0;
  double lambda_log_ = 0.0;
};

// Envelope mass beyond v0 in direction dir (+1 or -1).
double tail_mass(const ContourIntegrand& f, double v0, int dir) {
  constexpr double h = 0.5;
  double mass = 0.0, prev = f.envelope(v0);
  for (int k = 0; k < 200000; ++k) {
    const double v = v0 + dir * (k + 0.5) * h;
    const double e = f.envelope(v);
    mass += e * h;
    // Past the peak the envelope decays at least like e^{-pi |v| / (2p)}.
    if (e < prev && e * (4.0 * f.p() / kPi) < 1e-3 * mass + 1e-300) break;
    if (e == 0.0 && prev == 0.0) break;
    prev = e;
  }
  return mass;
}

double envelope_integral(const ContourIntegrand& f, double t) {
  const double V = default_vmax(t);
  constexpr double h = 0.5;
  double mass = 0.0;
  for (double v = -V + 0.5 * h; v < V; v += h) mass += f.envelope(v) * h;
  return mass + tail_mass(f, V, +1) + tail_mass(f, -V, -1);
}

// Truncates the dual series only as far as the final tolerance needs, using
// a coarse pass to size the kernel.
ContourIntegrand accurate_integrand(const SeriesSpec& spec, Complex s,
                                    const SmoothingParams& sp,
                                    const ContourOptions& opts) {
  const ContourIntegrand coarse(spec, s, sp, 1e-3);
  const double kernel_mass =
      envelope_integral(coarse, s.imag()) / (2.0 * kPi * sp.p) / coarse.abs_sum();
  double tol = 1e-3;
  if (kernel_mass > 0.0) tol = std::clamp(0.1 * opts.tail_tol / kernel_mass, opts.series_tol, 1e-3);
  return ContourIntegrand(spec, s, sp, tol);
}

Complex integrate(const ContourIntegrand& f, double a, double b, double density_floor,
                  double mult) {
  const GaussLegendre& gl = gauss_legendre16();
  CompensatedSum<Complex> acc;
  double v = a;
  while (v < b) {
    const double density = std::max(density_floor, 8.0 * f.frequency(v) / (2.0 * kPi)) * mult;
    const double h = std::min(16.0 / density, b - v);
    const double mid = v + 0.5 * h, half = 0.5 * h;
    for (int k = 0; k < gl.size(); ++k)
      acc.add(gl.weights[k] * half * f(mid + half * gl.nodes[k]));
    v += h;
  }
  return acc.value();
}

Complex integrate_converged(const ContourIntegrand& f, double V, const ContourOptions& opts) {
  Complex prev = integrate(f, -V, V, opts.n_quad, 1.0);
  double mult = 1.0;
  for (int i = 0; i < kMaxDoublings; ++i) {
    mult *= 2.0;
    const Complex next = integrate(f, -V, V, opts.n_quad, mult);
    if (std::abs(next - prev) <= opts.rel_tol * std::abs(next) + opts.tail_tol) return next;
    prev = next;
  }
  throw NumericError("contour term: quadrature did not converge");
}

double default_eta(const SeriesSpec& spec, double x, double p) {
  const double top = max_eta(spec, x, p);
  const double target = 1.0 - x + p - spec.sigma_a - 6.0;
  return std::clamp(target, 0.25 * top, 0.75 * top);
}

}  // namespace

std::size_t default_ncut(const SeriesSpec& spec, const SmoothingParams& sp) {
  const double n = std::ceil(sp.X * std::pow(kLogInvEps, 1.0 / sp.p));
  if (!(n < 1e10)) throw ValidationError("smoothing scale too large");
  auto N = std::max<std::size_t>(static_cast<std::size_t>(n), 1);
  if (const std::size_t M = coefficient_support(spec)) N = std::min(N, M);
  return N;
}

double max_eta(const SeriesSpec& spec, double x, double p) {
  double top = 1.0 - x + p - spec.sigma_a;
  for (const auto& pole : spec.poles) top = std::min(top, p + pole.location.real() - x);
  return top;
}

void check_smoothing(const SeriesSpec& spec, double x, const SmoothingParams& sp) {
  if (!(sp.X > 0.0) || !std::isfinite(sp.X)) throw ValidationError("smoothing X must be positive");
  if (!(sp.p > 0.0) || !std::isfinite(sp.p)) throw ValidationError("smoothing p must be positive");
  const double top = max_eta(spec, x, sp.p);
  if (!(sp.eta > 0.0 && sp.eta < top))
    throw ValidationError("smoothing eta=" + std::to_string(sp.eta) + " outside (0, " +
                          std::to_string(top) + ") at x=" + std::to_string(x));
}

Complex smoothed_sum(const SeriesSpec& spec, Complex z, double t, const SmoothingParams& sp,
                     std::size_t N_cut) {
  const Complex s = z + I * t;
  require_finite(s, "smoothed_sum");
  const auto a = coefficient_table(spec, N_cut);
  CompensatedSum<Complex> acc;
  for (std::size_t n = 1; n <= N_cut; ++n) {
    const Complex an = (*a)[n - 1];
    if (an == Complex{}) continue;
    const double ln = std::log(static_cast<double>(n));
    const double weight = std::exp(-std::exp(sp.p * (ln - std::log(sp.X))));
    if (weight == 0.0) break;
    acc.add(an * weight * std::exp(-s * ln));
  }
  return acc.value();
}

Complex residue_term_r1(const SeriesSpec& spec, Complex z, double t, const SmoothingParams& sp) {
  const Complex s = z + I * t;
  require_finite(s, "residue_term_r1");
  const double logX = std::log(sp.X);
  const double u = -sp.p + sp.eta;
  CompensatedSum<Complex> acc;
  for (const auto& pole : spec.poles) {
    const Complex w0 = pole.location - s;
    if (std::abs(w0) < 1e-12) throw PoleError("residue_term_r1: s is a pole of F");
    if (w0.real() <= u) continue;
    const int m = pole.order;
    std::vector<Complex> taylor(m);
    if (m == 1) {
      taylor[0] = h_mellin(w0, logX, sp.p);
    } else {
      double rho = std::min(1.0, std::abs(w0));
      for (int k = 1; k <= 64; ++k) rho = std::min(rho, std::abs(w0 + k * sp.p));
      rho *= 0.5;
      for (int j = 0; j < m; ++j) {
        CompensatedSum<Complex> c;
        for (int k = 0; k < kCauchyPoints; ++k) {
          const Complex e = std::polar(1.0, 2.0 * kPi * k / kCauchyPoints);
          c.add(h_mellin(w0 + rho * e, logX, sp.p) * std::pow(rho * e, -j));
        }
        taylor[j] = c.value() / static_cast<double>(kCauchyPoints);
      }
    }
    Complex res{};
    for (int k = 0; k < m; ++k) res += pole.principal[k] * taylor[m - 1 - k];
    acc.add(-res);
  }
  return acc.value();
}

double default_vmax(double t) {
  const double l = std::log(std::abs(t) + 10.0);
  return std::max(l * l, 40.0);
}

Complex contour_term_r2(const SeriesSpec& spec, Complex z, double t, const SmoothingParams& sp,
                        double v_max, const ContourOptions& opts) {
  const Complex s = z + I * t;
  require_finite(s, "contour_term_r2");
  check_smoothing(spec, s.real(), sp);
  if (!(v_max > 0.0)) throw ValidationError("contour_term_r2: v_max must be positive");
  const ContourIntegrand f = accurate_integrand(spec, s, sp, opts);
  const double tail = tail_mass(f, v_max, +1) + tail_mass(f, -v_max, -1);
  if (tail / (2.0 * kPi * sp.p) > opts.tail_tol)
    throw NumericError("contour_term_r2: truncated tails estimated at " + std::to_string(tail) +
                       " exceed tolerance");
  return -integrate_converged(f, v_max, opts) / (2.0 * kPi * sp.p);
}

Complex contour_term_r2(const SeriesSpec& spec, Complex z, double t, const SmoothingParams& sp,
                        const ContourOptions& opts) {
  const Complex s = z + I * t;
  require_finite(s, "contour_term_r2");
  check_smoothing(spec, s.real(), sp);
  const ContourIntegrand f = accurate_integrand(spec, s, sp, opts);
  double V = default_vmax(t);
  for (;;) {
    const double tail = tail_mass(f, V, +1) + tail_mass(f, -V, -1);
    if (tail / (2.0 * kPi * sp.p) <= opts.tail_tol) break;
    V *= 1.5;
    if (V > 1e6) throw NumericError("contour_term_r2: tails do not decay");
  }
  return -integrate_converged(f, V, opts) / (2.0 * kPi * sp.p);
}

double r2_envelope(const SeriesSpec& spec, double x, double t, const SmoothingParams& sp) {
  const Complex s(x, t);
  const double top = max_eta(spec, x, sp.p);
  // Keep the dual series at least one unit inside its abscissa of convergence.
  const double eta_cap = 1.0 - x + sp.p - spec.sigma_a - 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 7; ++i) {
    SmoothingParams trial = sp;
    trial.eta = std::min(top * i / 8.0, eta_cap);
    if (!(trial.eta > 0.0)) continue;
    try {
      const ContourIntegrand f(spec, s, trial, 1e-3);
      best = std::min(best, envelope_integral(f, t) / (2.0 * kPi * sp.p));
    } catch (const NumericError&) {
    }
  }
  return best;
}

double analytic_conductor(const SeriesSpec& spec, double t) {
  const InvariantSet inv = invariants(spec);
  return inv.C * spec.Q * spec.Q * std::pow(std::abs(t) + 1.0, inv.d);
}

SmoothingParams default_smoothing(const SeriesSpec& spec, Complex s, double p) {
  constexpr double kEnvelopeTarget = 1e-8;
  SmoothingParams sp;
  sp.p = p;
  sp.eta = default_eta(spec, s.real(), p);
  sp.X = std::max(4.0 * analytic_conductor(spec, s.imag()), 8.0);
  if (finite_source(spec)) return sp;
  const double env = r2_envelope(spec, s.real(), s.imag(), sp);
  // |r2| scales like X^{-p+eta} at fixed contour.
  if (env > kEnvelopeTarget && std::isfinite(env))
    sp.X *= std::pow(env / kEnvelopeTarget, 1.0 / (p - sp.eta));
  return sp;
}

Complex evaluate(const SeriesSpec& spec, Complex s, const SmoothingParams& sp,
                 const ContourOptions& opts) {
  require_finite(s, "evaluate");
  require_not_at_pole(spec, s);
  if (finite_source(spec)) return direct_finite_sum(spec, s);
  const Complex z(s.real(), 0.0);
  const double t = s.imag();
  check_smoothing(spec, s.real(), sp);
  const Complex main = smoothed_sum(spec, z, t, sp, default_ncut(spec, sp));
  const Complex r1 = residue_term_r1(spec, z, t, sp);
  ContourOptions scaled = opts;
  scaled.tail_tol = opts.tail_tol * std::max(1.0, std::abs(main));
  const Complex r2 = contour_term_r2(spec, z, t, sp, scaled);
  return main + r1 + r2;
}

double default_sharpness(const SeriesSpec& spec, double x) {
  return std::max(10.0, std::ceil(x + spec.sigma_a) + 4.0);
}

Complex evaluate(const SeriesSpec& spec, Complex s) {
  return evaluate(spec, s, default_smoothing(spec, s, default_sharpness(spec, s.real())));
}

Complex evaluate_tilde(const SeriesSpec& spec, Complex s, const SmoothingParams& sp,
                       const ContourOptions& opts) {
  return evaluate(tilde_spec(spec), s, sp, opts);
}

Complex evaluate_tilde(const SeriesSpec& spec, Complex s) {
  const SeriesSpec t = tilde_spec(spec);
  return evaluate(t, s, default_smoothing(t, s, default_sharpness(t, s.real())));
}

double fe_residual(const SeriesSpec& spec, Complex s) {
  const Complex lhs = evaluate(spec, s);
  const Complex rhs = fe_multiplier(spec, s) * evaluate_tilde(spec, 1.0 - s);
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return std::abs(lhs - rhs) / scale;
}

std::vector<Complex> fe_grid(int count) {
  if (count < 2) throw ValidationError("fe_grid requires at least two points");
  std::vector<Complex> out(count);
  for (int k = 0; k < count; ++k)
    out[k] = {k % 2 == 0 ? 0.25 : 0.75, 5.0 + 35.0 * k / (count - 1)};
  return out;
}

}  // namespace selberg
