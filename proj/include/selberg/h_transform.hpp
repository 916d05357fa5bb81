#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selberg/line_sampler.hpp"
#include "selberg/oscillatory.hpp"
#include "selberg/series_core.hpp"

namespace selberg {

struct HParams {
  double alpha = 1.0;
  double T = 32.0;
  double p = 10.0;
  double rho1 = 0.0;          // X1 = T^{1+rho1}
  double delta = 0.3;         // alpha in [T^delta, T^delta + 1]
  double eps = 0.015;
  double X1 = 256.0;
  double rho1_formula = 0.0;  // rho1 before the X1 > 4T floor
  KWindow window;
};

// The transform is normalised as
//   H(alpha, T) = (2 pi alpha)^{-1/2} * integral over K_T of
//                 F(1/2 + it) e^{i t log(t / (2 pi e alpha)) - i pi/4} dt,
// so that its main term is sqrt(2 pi) sum_{T<n<4T} a_n e^{-2 pi i alpha n}.
inline constexpr double kHNormalization = 0.398942280401432677939946059934381868;

// For 1 < d < 2: delta = (2-d)/(d - 1/(4 sigma_a)), rho1 = delta/(8 sigma_a),
// eps = delta/20. Any other positive d uses delta = 0.3 with the same rho1
// and eps. rho1 is raised when needed so that X1 >= 8T. alpha = T^delta.
// A supplied delta replaces both rules. Throws ValidationError for d <= 0.
HParams choose_parameters(double d, double sigma_a, double T, double p = 10.0,
                          std::optional<double> delta = std::nullopt);

struct HOptions {
  LineOptions line;
  double panel_wavelengths = 1.5;  // GL16 panel width in local wavelengths
};

// Direct quadrature against F on the critical line. The panel width is
// halved until two successive values agree to quad_tol (1 + |H|).
Complex h_direct(const SeriesSpec& spec, const HParams& hp, double quad_tol,
                 const HOptions& opts = {});

// Same integral with F(1/2+it) = omega Q^{-2it} quot(1/2+it) F~(1/2-it).
Complex h_second_method(const SeriesSpec& spec, const HParams& hp, double quad_tol,
                        const HOptions& opts = {});

// sqrt(2 pi) sum_{T<n<4T} a_n e^{-2 pi i alpha n} e^{-(n/X1)^p}.
Complex h_main_term(const SeriesSpec& spec, const HParams& hp);

enum class HMode { Direct, Second, MainTerm };
HMode parse_hmode(const std::string& name);
std::string hmode_name(HMode mode);

// H at many alpha sharing T, p and the window. Direct and Second sample F
// once on a grid covering every window.
std::vector<Complex> h_batch(const SeriesSpec& spec, const HParams& base,
                             const std::vector<double>& alphas, HMode mode,
                             const HOptions& opts = {});

// Midpoint nodes T^delta + (k + 1/2)/n_alpha, k < n_alpha.
std::vector<double> alpha_grid(const HParams& hp, int n_alpha);

// ( integral over [T^delta, T^delta+1] of |H|^2 / (2 pi) d alpha )^{1/2},
// midpoint rule. Requires n_alpha >= 64.
double l2_recover(const SeriesSpec& spec, double T, const HParams& hp_base, int n_alpha,
                  HMode mode, const HOptions& opts = {});

// ( sum_{T<n<4T} |a_n|^2 e^{-2(n/X1)^p} )^{1/2}.
double l2_reference(const SeriesSpec& spec, const HParams& hp);

// ( sum_{T<n<4T} |a_n|^2 )^{1/2}.
double l2_norm(const SeriesSpec& spec, double T);

// Which n put a stationary point of the dual phase inside K_T: the edges
// q alpha^d (k_lo pi T)^{d-1} and q alpha^d (k_hi pi T)^{d-1}, and how many
// n up to n_max fall below, inside and above.
struct LRanges {
  double lower = 0.0, upper = 0.0;
  std::size_t below = 0, inside = 0, above = 0;
};
LRanges l_ranges(const SeriesSpec& spec, const HParams& hp, std::size_t n_max);

}  // namespace selberg
