#include "selberg/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "selberg/errors.hpp"

namespace selberg {

namespace {

constexpr int kSamples = 1000;
constexpr int kMaxLevels = 12;

double sample_at(const PhaseProblem& pp, int i, int n) {
  return pp.a + (pp.b - pp.a) * i / (n - 1);
}

void check_problem(const PhaseProblem& pp) {
  if (!(pp.a < pp.b) || !std::isfinite(pp.a) || !std::isfinite(pp.b))
    throw ValidationError("phase problem: need a finite interval a < b");
  if (!pp.f || !pp.df || !pp.g) throw ValidationError("phase problem: f, f' and g are required");
}

struct Level {
  Complex value;
  double evaluations;
};

Level composite(const PhaseProblem& pp, double mult) {
  const GaussLegendre& gl = gauss_legendre16();
  const double floor_density = 16.0 / (pp.b - pp.a);
  auto density = [&](double t) {
    return std::max(floor_density, 8.0 * std::abs(pp.df(t)) / (2.0 * kPi)) * mult;
  };
  CompensatedSum<Complex> acc;
  double evals = 0.0;
  double t = pp.a;
  while (t < pp.b) {
    double h = std::min(16.0 / density(t), pp.b - t);
    const double h_end = 16.0 / density(std::min(t + h, pp.b));
    if (h_end < h) h = std::min(h_end, pp.b - t);
    const double mid = t + 0.5 * h, half = 0.5 * h;
    for (int k = 0; k < gl.size(); ++k) {
      const double x = mid + half * gl.nodes[k];
      acc.add(gl.weights[k] * half * pp.g(x) * std::polar(1.0, pp.f(x)));
    }
    evals += gl.size();
    if (evals > kOracleBudget) throw BudgetExceeded("quadrature_oracle: evaluation budget exhausted");
    t += h;
  }
  return {acc.value(), evals};
}

double sup_abs_g(const PhaseProblem& pp) {
  double M = 0.0;
  for (int i = 0; i < kSamples; ++i) M = std::max(M, std::abs(pp.g(sample_at(pp, i, kSamples))));
  return M;
}

}  // namespace

Complex quadrature_oracle(const PhaseProblem& pp, double tol) {
  check_problem(pp);
  if (!(tol >= 1e-10)) throw ValidationError("quadrature_oracle: tol must be >= 1e-10");
  double spent = 0.0;
  Level prev = composite(pp, 1.0);
  spent += prev.evaluations;
  double mult = 1.0;
  for (int level = 0; level < kMaxLevels; ++level) {
    mult *= 2.0;
    const Level next = composite(pp, mult);
    spent += next.evaluations;
    if (spent > kOracleBudget) throw BudgetExceeded("quadrature_oracle: evaluation budget exhausted");
    if (std::abs(next.value - prev.value) <= tol) return next.value;
    prev = next;
  }
  throw BudgetExceeded("quadrature_oracle: refinement did not converge");
}

double first_derivative_bound(const PhaseProblem& pp, double m1, double M) {
  check_problem(pp);
  if (!(m1 > 0.0) || !(M >= 0.0)) throw ValidationError("first_derivative_bound: need m1 > 0, M >= 0");
  int direction = 0;
  double prev = pp.df(pp.a);
  for (int i = 0; i < kSamples; ++i) {
    const double d = pp.df(sample_at(pp, i, kSamples));
    if (std::abs(d) < m1 * (1.0 - 1e-12))
      throw ValidationError("first_derivative_bound: |f'| drops below m1");
    if (i > 0) {
      const double step = d - prev;
      const double slack = 1e-12 * (std::abs(d) + std::abs(prev));
      const int dir = step > slack ? 1 : (step < -slack ? -1 : 0);
      if (dir != 0) {
        if (direction != 0 && dir != direction)
          throw ValidationError("first_derivative_bound: f' is not monotonic");
        direction = dir;
      }
    }
    prev = d;
  }
  double variation = 0.0;
  if (pp.dg) {
    const GaussLegendre& gl = gauss_legendre16();
    const int panels = 64;
    const double h = (pp.b - pp.a) / panels;
    for (int p = 0; p < panels; ++p)
      for (int k = 0; k < gl.size(); ++k)
        variation += gl.weights[k] * 0.5 * h *
                     std::abs(pp.dg(pp.a + (p + 0.5) * h + 0.5 * h * gl.nodes[k]));
  }
  return (M + variation) / m1;
}

StationaryPhaseResult stationary_phase_eval(const PhaseProblem& pp, double c1, double c2) {
  check_problem(pp);
  if (!pp.d2f || !pp.d3f) throw ValidationError("stationary_phase_eval: f'' and f''' are required");
  int sign = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double d2 = pp.d2f(sample_at(pp, i, kSamples));
    const int s = d2 > 0 ? 1 : (d2 < 0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign))
      throw ValidationError("stationary_phase_eval: f'' vanishes on K");
    sign = s;
  }
  StationaryPhaseResult out;
  out.branch_sign = sign;
  out.M = sup_abs_g(pp);

  const double fa = pp.df(pp.a), fb = pp.df(pp.b);
  if ((fa > 0) == (fb > 0) && fa != 0.0 && fb != 0.0) {
    const double m1 = std::min(std::abs(fa), std::abs(fb));
    out.error_bound = kFirstDerivativeC * first_derivative_bound(pp, m1, out.M);
    return out;
  }
  double lo = pp.a, hi = pp.b;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((pp.df(mid) > 0) == (fa > 0)) lo = mid; else hi = mid;
  }
  const double c = 0.5 * (lo + hi);
  const double width = pp.b - pp.a;
  if (c - pp.a < 1e-6 * width || pp.b - c < 1e-6 * width)
    throw ValidationError("stationary_phase_eval: stationary point on an endpoint");
  out.c = c;
  const double f2 = pp.d2f(c);

  // Smallest self-consistent m: sup |f'''| over K intersected with
  // [c - |f''(c)|/m, c + |f''(c)|/m] must not exceed m.
  auto sup_f3 = [&](double m) {
    double lo_t = pp.a, hi_t = pp.b;
    if (m > 0.0) {
      lo_t = std::max(pp.a, c - std::abs(f2) / m);
      hi_t = std::min(pp.b, c + std::abs(f2) / m);
    }
    double s = 0.0;
    for (int i = 0; i <= 200; ++i) s = std::max(s, std::abs(pp.d3f(lo_t + (hi_t - lo_t) * i / 200.0)));
    return s;
  };
  double m = std::abs(pp.d3f(c));
  for (int it = 0; it < 200; ++it) {
    const double s = sup_f3(m);
    if (s <= m) break;
    m = s;
  }
  out.m = m;
  const double phase = pp.f(c) + sign * kPi / 4.0;
  out.main = std::sqrt(2.0 * kPi / std::abs(f2)) * pp.g(c) * std::polar(1.0, phase);
  out.error_bound = c1 * m * out.M / (f2 * f2) +
                    c2 * (out.M / std::abs(fa) + out.M / std::abs(fb));
  return out;
}

std::vector<PhaseProblem> stationary_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<PhaseProblem> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    // f(t) = phi0 + A (t-c)^2/2 + B (t-c)^3/6 with |B| (b - a) < |A| / 2.
    const double A = (U(rng) < 0.5 ? -1.0 : 1.0) * std::pow(10.0, -3.0 * U(rng));
    const double c = 100.0 * (U(rng) - 0.5);
    const double scale = 1.0 / std::sqrt(std::abs(A));
    const double left = scale * (4.0 + 20.0 * U(rng));
    const double right = scale * (4.0 + 20.0 * U(rng));
    const double B = (U(rng) - 0.5) * std::abs(A) / (left + right);
    const double phi0 = 2.0 * kPi * U(rng);
    const double omega = 2.0 * U(rng) / (left + right);
    const double amp = 0.5 * U(rng);
    PhaseProblem pp;
    pp.a = c - left;
    pp.b = c + right;
    pp.f = [=](double t) { const double x = t - c; return phi0 + A * x * x / 2 + B * x * x * x / 6; };
    pp.df = [=](double t) { const double x = t - c; return A * x + B * x * x / 2; };
    pp.d2f = [=](double t) { return A + B * (t - c); };
    pp.d3f = [=](double) { return B; };
    pp.g = [=](double t) { return Complex(1.0 + amp * std::cos(omega * (t - c)), 0.0); };
    pp.dg = [=](double t) { return Complex(-amp * omega * std::sin(omega * (t - c)), 0.0); };
    pp.d2g = [=](double t) { return Complex(-amp * omega * omega * std::cos(omega * (t - c)), 0.0); };
    out.push_back(std::move(pp));
  }
  return out;
}

PhaseProblem i_n_problem(double alpha, double n, double T, KWindow w) {
  if (!(alpha > 0.0) || !(n > 0.0) || !(T > 0.0))
    throw ValidationError("I_n: alpha, n and T must be positive");
  if (!(0.0 < w.k_lo && w.k_lo < w.k_hi)) throw ValidationError("I_n: invalid window");
  const double log_scale = std::log(2.0 * kPi * std::exp(1.0) * alpha * n);
  const double log_c = std::log(2.0 * kPi * alpha * n);
  PhaseProblem pp;
  pp.a = w.k_lo * kPi * alpha * T;
  pp.b = w.k_hi * kPi * alpha * T;
  pp.f = [=](double t) { return t * (std::log(t) - log_scale) - kPi / 4.0; };
  pp.df = [=](double t) { return std::log(t) - log_c; };
  pp.d2f = [](double t) { return 1.0 / t; };
  pp.d3f = [](double t) { return -1.0 / (t * t); };
  pp.g = [](double) { return Complex(1.0, 0.0); };
  pp.dg = [](double) { return Complex(0.0, 0.0); };
  pp.d2g = [](double) { return Complex(0.0, 0.0); };
  return pp;
}

Complex i_n(double alpha, double n, double T, KWindow w) {
  const PhaseProblem pp = i_n_problem(alpha, n, T, w);
  const double c = 2.0 * kPi * alpha * n;
  const double margin = 1e-6 * (pp.b - pp.a);
  if (c > pp.a + margin && c < pp.b - margin) return stationary_phase_eval(pp).main;
  return quadrature_oracle(pp, 1e-9);
}

Complex i_n_oracle(double alpha, double n, double T, KWindow w, double tol) {
  return quadrature_oracle(i_n_problem(alpha, n, T, w), tol);
}

Complex i_n_main(double alpha, double n) {
  return 2.0 * kPi * std::sqrt(alpha * n) * std::polar(1.0, -2.0 * kPi * alpha * n);
}

}  // namespace selberg
