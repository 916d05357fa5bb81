#include "selberg/series_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <string>

#include "selberg/errors.hpp"
#include "selberg/special_functions.hpp"

namespace selberg {

class CoefficientCache {
 public:
  using Generator = std::function<std::vector<Complex>(std::size_t)>;
  explicit CoefficientCache(Generator gen) : gen_(std::move(gen)) {}

  std::shared_ptr<const std::vector<Complex>> get(std::size_t N) {
    std::lock_guard lock(mutex_);
    if (table_ && table_->size() >= N) return table_;
    const std::size_t have = table_ ? table_->size() : 0;
    const std::size_t want = std::max({N, 2 * have, std::size_t{64}});
    table_ = std::make_shared<const std::vector<Complex>>(gen_(want));
    return table_;
  }

 private:
  Generator gen_;
  std::mutex mutex_;
  std::shared_ptr<const std::vector<Complex>> table_;
};

namespace {

constexpr double kOmegaTolerance = 1e-12;
constexpr double kCharacterTolerance = 1e-10;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

const std::vector<Complex> kChi4 = {0.0, 1.0, 0.0, -1.0};

std::vector<Complex> divisor_sieve(std::size_t N, bool sigma_over_sqrt) {
  std::vector<std::uint64_t> acc(N + 1, 0);
  for (std::size_t i = 1; i <= N; ++i)
    for (std::size_t j = i; j <= N; j += i) acc[j] += sigma_over_sqrt ? i : 1;
  std::vector<Complex> out(N);
  for (std::size_t n = 1; n <= N; ++n) {
    const double v = static_cast<double>(acc[n]);
    out[n - 1] = sigma_over_sqrt ? v / std::sqrt(static_cast<double>(n)) : v;
  }
  return out;
}

std::vector<Complex> delta_normalized(std::size_t N) {
  const auto tau = ramanujan_tau(N);
  std::vector<Complex> out(N);
  for (std::size_t n = 1; n <= N; ++n) {
    const long double v = static_cast<long double>(tau[n - 1]) /
                          std::pow(static_cast<long double>(n), 5.5L);
    out[n - 1] = static_cast<double>(v);
  }
  return out;
}

std::vector<Complex> periodic(const std::vector<Complex>& chi, std::size_t N) {
  std::vector<Complex> out(N);
  for (std::size_t n = 1; n <= N; ++n) out[n - 1] = chi[n % chi.size()];
  return out;
}

CoefficientCache::Generator make_generator(const SeriesSpec& spec) {
  const CoefficientSource& src = spec.coefficients;
  switch (src.kind) {
    case CoefficientSource::Kind::Builtin: {
      const std::string& b = src.builtin;
      if (b == "zeta")
        return [](std::size_t N) { return std::vector<Complex>(N, 1.0); };
      if (b == "dirichlet_L")
        return [](std::size_t N) { return periodic(kChi4, N); };
      if (b == "zeta_squared")
        return [](std::size_t N) { return divisor_sieve(N, false); };
      if (b == "shifted_zeta_pair")
        return [](std::size_t N) { return divisor_sieve(N, true); };
      if (b == "ramanujan_delta") return delta_normalized;
      throw ValidationError("unknown builtin series '" + b + "'");
    }
    case CoefficientSource::Kind::Character:
      return [chi = src.character](std::size_t N) { return periodic(chi, N); };
    case CoefficientSource::Kind::File:
      return [values = src.file_values, finite = src.finite,
              path = src.file.string()](std::size_t N) {
        if (N > values.size() && !finite)
          throw ValidationError("coefficient file '" + path + "' provides " +
                                std::to_string(values.size()) +
                                " terms but " + std::to_string(N) +
                                " were requested");
        std::vector<Complex> out(N, 0.0);
        std::copy_n(values.begin(), std::min(N, values.size()), out.begin());
        return out;
      };
  }
  throw ValidationError("invalid coefficient source");
}

void validate_factors(const std::vector<GammaFactor>& fs, const char* side) {
  for (const auto& f : fs) {
    if (!std::isfinite(f.lambda) || f.lambda <= 0.0)
      throw ValidationError(std::string(side) + " gamma factor needs lambda > 0");
    require_finite(f.mu, "gamma factor mu");
  }
}

bool real_source(const CoefficientSource& src) {
  return src.kind == CoefficientSource::Kind::Builtin &&
         src.builtin != "dirichlet_L";
}

}  // namespace

double degree(const GammaData& g) {
  double num = 0.0, den = 0.0;
  for (const auto& f : g.numerator) num += f.lambda;
  for (const auto& f : g.denominator) den += f.lambda;
  return 2.0 * num - 2.0 * den;
}

InvariantSet invariants(const SeriesSpec& spec) {
  return invariants(spec.gamma, spec.Q);
}

InvariantSet invariants(const GammaData& g, double Q) {
  InvariantSet inv;
  inv.d = degree(g);

  Complex mu_num{}, mu_den{}, log_term{};
  double log_c = 0.0;
  for (const auto& f : g.numerator) {
    mu_num += f.mu;
    log_c += 2.0 * f.lambda * std::log(f.lambda);
    log_term += (std::conj(f.mu) - f.mu) * std::log(f.lambda);
  }
  for (const auto& f : g.denominator) {
    mu_den += f.mu;
    log_c -= 2.0 * f.lambda * std::log(f.lambda);
    log_term -= (std::conj(f.mu) - f.mu) * std::log(f.lambda);
  }
  const Complex I(0.0, 1.0);
  const Complex A = -I * ((std::conj(mu_num) - mu_num) -
                          (std::conj(mu_den) - mu_den));
  if (std::abs(A.imag()) > 1e-10)
    throw NumericError("invariants: A has imaginary residue " +
                       std::to_string(A.imag()));
  const double r = static_cast<double>(g.numerator.size());
  const double rp = static_cast<double>(g.denominator.size());
  const Complex B =
      -I * log_term -
      (kPi / 2.0) * (inv.d / 2.0 + 2.0 * mu_num.real() - 2.0 * mu_den.real() -
                     (r - rp));
  if (std::abs(B.imag()) > 1e-10)
    throw NumericError("invariants: B has imaginary residue " +
                       std::to_string(B.imag()));

  inv.A = A.real();
  inv.B = B.real();
  inv.C = std::exp(log_c);
  inv.D = inv.C * std::exp(-inv.d);
  inv.q = 2.0 * kPi * inv.C * Q * Q;
  return inv;
}

CharacterInfo character_info(const std::vector<Complex>& chi) {
  const int q = static_cast<int>(chi.size());
  if (q < 2) throw ValidationError("character: modulus must be at least 2");
  if (q > 100000) throw ValidationError("character: modulus too large");
  auto near = [](Complex a, Complex b) {
    return std::abs(a - b) <= kCharacterTolerance;
  };
  for (int n = 0; n < q; ++n) {
    require_finite(chi[n], "character value");
    const bool unit = std::gcd(n, q) == 1;
    if (unit && std::abs(std::abs(chi[n]) - 1.0) > kCharacterTolerance)
      throw ValidationError("character: |chi(" + std::to_string(n) +
                            ")| must be 1");
    if (!unit && std::abs(chi[n]) > kCharacterTolerance)
      throw ValidationError("character: chi(" + std::to_string(n) +
                            ") must vanish");
  }
  if (!near(chi[1], 1.0)) throw ValidationError("character: chi(1) must be 1");
  for (int m = 1; m < q; ++m)
    for (int n = m; n < q; ++n)
      if (!near(chi[(static_cast<long>(m) * n) % q], chi[m] * chi[n]))
        throw ValidationError("character: table is not multiplicative");

  // Primitive iff not trivial on the units congruent to 1 mod any proper
  // divisor of q.
  for (int dv = 1; dv < q; ++dv) {
    if (q % dv != 0) continue;
    bool induced = true;
    for (int n = 1 + dv; n < q && induced; n += dv)
      if (std::gcd(n, q) == 1 && !near(chi[n], 1.0)) induced = false;
    if (induced)
      throw ValidationError("character: not primitive (induced from modulus " +
                            std::to_string(dv) + ")");
  }

  CharacterInfo info;
  info.modulus = q;
  const Complex minus_one = chi[q - 1];
  if (near(minus_one, 1.0))
    info.parity = 0;
  else if (near(minus_one, -1.0))
    info.parity = 1;
  else
    throw ValidationError("character: chi(-1) must be +1 or -1");
  CompensatedSum<Complex> g;
  for (int n = 1; n < q; ++n)
    g.add(chi[n] * std::polar(1.0, 2.0 * kPi * n / q));
  info.gauss_sum = g.value();
  return info;
}

void validate(SeriesSpec& spec) {
  if (!std::isfinite(spec.sigma_a) || spec.sigma_a < 0.5)
    throw ValidationError("sigma_a must be finite and >= 1/2");
  if (!std::isfinite(spec.Q) || spec.Q <= 0.0)
    throw ValidationError("Q must be positive");
  require_finite(spec.omega, "omega");
  if (std::abs(std::abs(spec.omega) - 1.0) > kOmegaTolerance)
    throw ValidationError("omega must have unit modulus");
  validate_factors(spec.gamma.numerator, "numerator");
  validate_factors(spec.gamma.denominator, "denominator");
  for (const auto& p : spec.poles) {
    require_finite(p.location, "pole location");
    if (p.order < 1) throw ValidationError("pole order must be positive");
    if (p.principal.size() != static_cast<std::size_t>(p.order))
      throw ValidationError("pole principal part must have `order` entries");
    for (const auto& c : p.principal) require_finite(c, "pole coefficient");
    if (p.location.real() > spec.sigma_a + 1e-12)
      throw ValidationError("pole with real part beyond sigma_a");
  }
  const auto& src = spec.coefficients;
  if (src.kind == CoefficientSource::Kind::Character)
    character_info(src.character);
  if (src.kind == CoefficientSource::Kind::File && src.file_values.empty())
    throw ValidationError("coefficient file is empty");
  if (src.kind == CoefficientSource::Kind::File && src.finite && !spec.poles.empty())
    throw ValidationError("a finite Dirichlet polynomial cannot have poles");
  if (!spec.cache)
    spec.cache = std::make_shared<CoefficientCache>(make_generator(spec));
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "zeta", "dirichlet_L", "zeta_squared", "shifted_zeta_pair",
      "ramanujan_delta"};
  return names;
}

SeriesSpec dirichlet_spec(const std::vector<Complex>& chi) {
  const CharacterInfo info = character_info(chi);
  const double q = info.modulus;
  SeriesSpec s;
  s.name = "dirichlet_L_" + std::to_string(info.modulus);
  s.sigma_a = 1.0;
  s.Q = std::sqrt(q / kPi);
  s.gamma.numerator = {{0.5, Complex(0.5 * info.parity, 0.0)}};
  const Complex i_pow = info.parity ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
  s.omega = info.gauss_sum / (i_pow * std::sqrt(q));
  s.omega /= std::abs(s.omega);
  s.coefficients.kind = CoefficientSource::Kind::Character;
  s.coefficients.character = chi;
  validate(s);
  return s;
}

SeriesSpec builtin_spec(const std::string& name) {
  SeriesSpec s;
  s.name = name;
  s.coefficients.kind = CoefficientSource::Kind::Builtin;
  s.coefficients.builtin = name;
  if (name == "zeta") {
    s.sigma_a = 1.0;
    s.Q = 1.0 / std::sqrt(kPi);
    s.gamma.numerator = {{0.5, 0.0}};
    s.poles = {{1.0, 1, {1.0}}};
  } else if (name == "dirichlet_L") {
    SeriesSpec d = dirichlet_spec(kChi4);
    d.name = name;
    return d;
  } else if (name == "zeta_squared") {
    s.sigma_a = 1.0;
    s.Q = 1.0 / kPi;
    s.gamma.numerator = {{0.5, 0.0}, {0.5, 0.0}};
    s.poles = {{1.0, 2, {1.0, 2.0 * kEulerGamma}}};
  } else if (name == "shifted_zeta_pair") {
    s.sigma_a = 1.5;
    s.Q = 1.0 / kPi;
    s.gamma.numerator = {{0.5, -0.25}, {0.5, 0.25}};
    s.poles = {{1.5, 1, {kPi * kPi / 6.0}}, {0.5, 1, {-0.5}}};
  } else if (name == "ramanujan_delta") {
    s.sigma_a = 1.0;
    s.Q = 1.0 / (2.0 * kPi);
    s.gamma.numerator = {{1.0, 5.5}};
  } else {
    throw ValidationError("unknown builtin series '" + name + "'");
  }
  validate(s);
  return s;
}

std::shared_ptr<const std::vector<Complex>> coefficient_table(
    const SeriesSpec& spec, std::size_t N) {
  if (!spec.cache) throw ValidationError("series spec was not validated");
  return spec.cache->get(N);
}

std::vector<Complex> coefficients(const SeriesSpec& spec, std::size_t N) {
  if (N < 1) throw ValidationError("coefficients: N must be positive");
  const auto table = coefficient_table(spec, N);
  return {table->begin(), table->begin() + static_cast<std::ptrdiff_t>(N)};
}

std::size_t coefficient_support(const SeriesSpec& spec) {
  const auto& src = spec.coefficients;
  if (src.kind == CoefficientSource::Kind::File && src.finite)
    return src.file_values.size();
  return 0;
}

SeriesSpec tilde_spec(const SeriesSpec& spec) {
  SeriesSpec t = spec;
  t.name = spec.name + "~";
  t.omega = std::conj(spec.omega);
  for (auto* side : {&t.gamma.numerator, &t.gamma.denominator})
    for (auto& f : *side) f.mu = std::conj(f.mu);
  for (auto& p : t.poles) {
    p.location = std::conj(p.location);
    for (auto& c : p.principal) c = std::conj(c);
  }
  if (!real_source(spec.coefficients)) {
    auto& src = t.coefficients;
    if (src.kind == CoefficientSource::Kind::Builtin) {
      src.kind = CoefficientSource::Kind::Character;
      src.character = kChi4;
    }
    for (auto& c : src.character) c = std::conj(c);
    for (auto& c : src.file_values) c = std::conj(c);
    t.cache.reset();
  }
  validate(t);
  return t;
}

std::vector<__int128> ramanujan_tau(std::size_t N) {
  // Delta = q * E^8 with E = prod (1 - q^k)^3 = sum_m (-1)^m (2m+1) q^{m(m+1)/2}.
  // Arithmetic is modulo 2^128; the final coefficients fit in signed 128 bits.
  using U = unsigned __int128;
  std::vector<std::pair<std::size_t, U>> e;
  for (std::size_t m = 0;; ++m) {
    const std::size_t k = m * (m + 1) / 2;
    if (k >= N) break;
    const long long c = (m % 2 ? -1LL : 1LL) * static_cast<long long>(2 * m + 1);
    e.emplace_back(k, static_cast<U>(static_cast<__int128>(c)));
  }
  std::vector<U> cur(N, 0);
  for (const auto& [k, c] : e) cur[k] = c;

  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (N + kBlock - 1) / kBlock;
  const unsigned threads = resolve_threads();
  for (int pass = 0; pass < 7; ++pass) {
    std::vector<U> next(N, 0);
    parallel_for(blocks, threads, [&](std::size_t b) {
      const std::size_t lo = b * kBlock, hi = std::min(N, lo + kBlock);
      for (const auto& [k, c] : e) {
        if (k >= hi) break;
        for (std::size_t j = std::max(lo, k); j < hi; ++j)
          next[j] += cur[j - k] * c;
      }
    });
    cur.swap(next);
  }
  std::vector<__int128> tau(N);
  for (std::size_t i = 0; i < N; ++i) tau[i] = static_cast<__int128>(cur[i]);
  return tau;
}

GrowthCheck coefficient_growth_check(const SeriesSpec& spec, double X,
                                     double eps) {
  if (!(X >= 100.0)) throw ValidationError("growth check needs X >= 100");
  const auto N = static_cast<std::size_t>(std::ceil(X));
  const auto table = coefficient_table(spec, N);
  double lx[3], ls[3];
  const double scales[3] = {X / 4.0, X / 2.0, X};
  for (int i = 0; i < 3; ++i) {
    CompensatedSum<double> s;
    for (std::size_t n = 1; static_cast<double>(n) < scales[i]; ++n)
      s.add(std::abs((*table)[n - 1]));
    lx[i] = std::log(scales[i]);
    ls[i] = std::log(std::max(s.value(), 1e-300));
  }
  const double mx = (lx[0] + lx[1] + lx[2]) / 3.0;
  const double ms = (ls[0] + ls[1] + ls[2]) / 3.0;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    num += (lx[i] - mx) * (ls[i] - ms);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  GrowthCheck out;
  out.observed_exponent = num / den;
  out.pass = out.observed_exponent <= spec.sigma_a + eps;
  return out;
}

}  // namespace selberg
