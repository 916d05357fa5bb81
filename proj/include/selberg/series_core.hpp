#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "selberg/numerics.hpp"

namespace selberg {

struct GammaFactor {
  double lambda = 0.5;  // > 0
  Complex mu{};
};

// G(s) = prod Gamma(lambda_j s + mu_j) / prod Gamma(lambda'_j s + mu'_j).
struct GammaData {
  std::vector<GammaFactor> numerator;
  std::vector<GammaFactor> denominator;
};

// Principal part sum_k principal[k] (s - location)^{-(order - k)}, so the
// last entry is the residue.
struct PoleSpec {
  Complex location{};
  int order = 1;
  std::vector<Complex> principal;
};

struct CoefficientSource {
  enum class Kind { Builtin, File, Character };
  Kind kind = Kind::Builtin;
  std::string builtin;                 // Kind::Builtin
  std::filesystem::path file;          // Kind::File, as written in the spec
  std::vector<Complex> file_values;    // Kind::File, a_1..a_M
  bool finite = false;                 // Kind::File: a_n = 0 for n > M
  std::vector<Complex> character;      // Kind::Character, chi(0..q-1)
};

class CoefficientCache;

struct SeriesSpec {
  std::string name;
  double sigma_a = 1.0;
  double Q = 1.0;
  Complex omega{1.0, 0.0};
  GammaData gamma;
  std::vector<PoleSpec> poles;
  CoefficientSource coefficients;

  // Memoized a_n; copies of a spec share it. Created by validate().
  std::shared_ptr<CoefficientCache> cache;
};

struct InvariantSet {
  double d = 0, A = 0, B = 0, C = 1, D = 1, q = 1;
};

double degree(const GammaData& g);

InvariantSet invariants(const SeriesSpec& spec);
InvariantSet invariants(const GammaData& g, double Q = 1.0);

// Checks every structural invariant and attaches a coefficient cache.
// Throws ValidationError.
void validate(SeriesSpec& spec);

// Builtin catalogue: zeta, dirichlet_L (chi mod 4), zeta_squared,
// shifted_zeta_pair, ramanujan_delta. Returned specs are validated.
SeriesSpec builtin_spec(const std::string& name);
const std::vector<std::string>& builtin_names();

// L(s, chi) for a primitive character given as its value table chi(0..q-1).
SeriesSpec dirichlet_spec(const std::vector<Complex>& chi);

// a_1..a_N.
std::vector<Complex> coefficients(const SeriesSpec& spec, std::size_t N);

// Shared memoized table holding at least a_1..a_N at indices 0..N-1. Entries
// past the known support of a finite source are zero.
std::shared_ptr<const std::vector<Complex>> coefficient_table(
    const SeriesSpec& spec, std::size_t N);

// Largest n with a_n possibly nonzero, or 0 when unbounded.
std::size_t coefficient_support(const SeriesSpec& spec);

// F~(s) = conj(F(conj s)): conjugated coefficients, mu, poles and omega.
SeriesSpec tilde_spec(const SeriesSpec& spec);

struct CharacterInfo {
  int modulus = 0;
  int parity = 0;  // 0 even, 1 odd
  Complex gauss_sum{};
};

// Validates a primitive Dirichlet character table; throws ValidationError.
CharacterInfo character_info(const std::vector<Complex>& chi);

// Unnormalized Ramanujan tau(1..N) at indices 0..N-1, exact.
std::vector<__int128> ramanujan_tau(std::size_t N);

struct GrowthCheck {
  double observed_exponent = 0;
  bool pass = false;
};

// Least-squares slope of log sum_{n<X'} |a_n| against log X' over
// X' in {X/4, X/2, X}.
GrowthCheck coefficient_growth_check(const SeriesSpec& spec, double X,
                                     double eps);

}  // namespace selberg
