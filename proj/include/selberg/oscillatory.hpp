#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "selberg/numerics.hpp"

namespace selberg {

// integral over [a, b] of g(t) e^{i f(t)} dt.
struct PhaseProblem {
  std::function<double(double)> f, df, d2f, d3f;
  std::function<Complex(double)> g, dg, d2g;
  double a = 0.0, b = 1.0;
};

struct StationaryPhaseResult {
  Complex main{};
  std::optional<double> c;
  double error_bound = 0.0;
  int branch_sign = 1;
  double m = 0.0;  // bound on |f'''| near c
  double M = 0.0;  // sup |g| on K
};

// Error-bound constants for stationary_phase_eval, fitted on
// stationary_corpus(kCorpusSeed, 50) and frozen.
inline constexpr double kStationaryC1 = 1.0;
inline constexpr double kStationaryC2 = 1.0;
inline constexpr std::uint64_t kCorpusSeed = 20240607;

inline constexpr double kOracleBudget = 1e8;

// |integral g e^{if}| <= kFirstDerivativeC * first_derivative_bound: two
// endpoint terms M/m1 plus the variation of 1/f', at most 1/m1.
inline constexpr double kFirstDerivativeC = 3.0;

// Composite Gauss-Legendre with at least 8 nodes per local wavelength
// 2 pi / |f'|, doubled until successive levels agree to tol.
// Throws BudgetExceeded past 1e8 integrand evaluations.
Complex quadrature_oracle(const PhaseProblem& pp, double tol);

// (M + integral |g'|) / m1 after checking by sampling that f' is monotone
// with |f'| >= m1. Throws ValidationError otherwise.
double first_derivative_bound(const PhaseProblem& pp, double m1, double M);

// Stationary-phase main term sqrt(2 pi / |f''(c)|) g(c) e^{i f(c) +- i pi/4}
// with error bound c1 m M / f''(c)^2 + c2 (M/|f'(a)| + M/|f'(b)|). Without a
// stationary point the main term is zero and the bound is
// kFirstDerivativeC * first_derivative_bound. Throws ValidationError when f''
// vanishes on K or c sits on an endpoint.
StationaryPhaseResult stationary_phase_eval(const PhaseProblem& pp,
                                            double c1 = kStationaryC1,
                                            double c2 = kStationaryC2);

// Random problems with one interior stationary point and
// |f''(c)| in [1e-3, 1]; deterministic in the seed.
std::vector<PhaseProblem> stationary_corpus(std::uint64_t seed, int count);

// Integration window K_T = [k_lo pi alpha T, k_hi pi alpha T].
struct KWindow {
  double k_lo = 2.0;
  double k_hi = 8.0;
};

// f(t) = t (log t - log(2 pi e alpha n)) - pi/4 on K_T, g = 1.
PhaseProblem i_n_problem(double alpha, double n, double T, KWindow w = {});

// I_n = integral over K_T of e^{i f(t)}: the stationary-phase main term when
// 2 pi alpha n lies inside K_T, otherwise the quadrature oracle.
Complex i_n(double alpha, double n, double T, KWindow w = {});

// I_n by quadrature regardless of n.
Complex i_n_oracle(double alpha, double n, double T, KWindow w = {},
                   double tol = 1e-9);

// 2 pi sqrt(alpha n) e^{-2 pi i alpha n}.
Complex i_n_main(double alpha, double n);

}  // namespace selberg
