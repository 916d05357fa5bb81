#pragma once

#include <cstddef>
#include <vector>

#include "selberg/series_core.hpp"

namespace selberg {

// Smoothing weight e^{-(n/X)^p} and the contour Re w = -p + eta.
struct SmoothingParams {
  double X = 100.0;
  double p = 10.0;
  double eta = 1.0;
};

struct ContourOptions {
  double n_quad = 8.0;        // minimum GL nodes per unit of v
  double rel_tol = 1e-9;      // stop doubling the node density below this
  double tail_tol = 1e-13;    // absolute bound on the truncated tails
  double series_tol = 1e-16;  // floor for truncating the dual series
};

// Terms needed for the smoothing weight to drop below double epsilon,
// clamped to the support of a finite coefficient source.
std::size_t default_ncut(const SeriesSpec& spec, const SmoothingParams& sp);

// Supremum of admissible eta at abscissa x: the dual series must converge
// absolutely on the contour and no pole of F may be crossed.
double max_eta(const SeriesSpec& spec, double x, double p);

// Throws ValidationError unless 0 < eta < max_eta and X, p > 0.
void check_smoothing(const SeriesSpec& spec, double x,
                     const SmoothingParams& sp);

// sum_{n <= N_cut} a_n e^{-(n/X)^p} n^{-(z+it)}, compensated, ascending n.
Complex smoothed_sum(const SeriesSpec& spec, Complex z, double t,
                     const SmoothingParams& sp, std::size_t N_cut);

// Minus the residues of F(s+w) X^w Gamma(w/p)/p at w = beta - s over the
// declared poles beta right of the contour, with s = z + it. Zero when F is
// entire.
Complex residue_term_r1(const SeriesSpec& spec, Complex z, double t,
                        const SmoothingParams& sp);

// -(1/(2 pi i p)) * integral over Re w = -p + eta, |Im w| <= v_max, of
// F(s+w) X^w Gamma(w/p) dw, with F rewritten through the functional
// equation so the dual series converges absolutely. Throws NumericError if
// the estimated tails beyond v_max exceed opts.tail_tol, PoleError if the
// contour meets a pole.
Complex contour_term_r2(const SeriesSpec& spec, Complex z, double t,
                        const SmoothingParams& sp, double v_max,
                        const ContourOptions& opts = {});

// As above with v_max = max(log^2(|t|+10), 40), extended by doubling until
// the tail estimate is below opts.tail_tol.
Complex contour_term_r2(const SeriesSpec& spec, Complex z, double t,
                        const SmoothingParams& sp,
                        const ContourOptions& opts = {});

double default_vmax(double t);

// Upper estimate of |r2| from gamma-factor moduli and sum |a_n| n^{-sigma},
// minimised over admissible contour abscissas.
double r2_envelope(const SeriesSpec& spec, double x, double t,
                   const SmoothingParams& sp);

// Smoothing tuned for accuracy at s: eta well inside its range and X the
// smallest scale (at least a few analytic conductors) keeping the contour
// term's envelope small.
SmoothingParams default_smoothing(const SeriesSpec& spec, Complex s,
                                  double p = 10.0);

// p = max(10, ceil(x + sigma_a) + 4), leaving room for eta at abscissa x.
double default_sharpness(const SeriesSpec& spec, double x);

// Analytic conductor C Q^2 (|t| + 1)^d.
double analytic_conductor(const SeriesSpec& spec, double t);

Complex evaluate(const SeriesSpec& spec, Complex s, const SmoothingParams& sp,
                 const ContourOptions& opts = {});
// Uses default_smoothing with p = default_sharpness.
Complex evaluate(const SeriesSpec& spec, Complex s);

// F~(s) = conj(F(conj s)).
Complex evaluate_tilde(const SeriesSpec& spec, Complex s,
                       const SmoothingParams& sp,
                       const ContourOptions& opts = {});
Complex evaluate_tilde(const SeriesSpec& spec, Complex s);

// |F(s) - omega Q^{1-2s} quot(s) F~(1-s)| / max(|F(s)|, |right side|).
double fe_residual(const SeriesSpec& spec, Complex s);

// count points with Im s evenly spaced over [5, 40] and Re s alternating
// between 0.25 and 0.75.
std::vector<Complex> fe_grid(int count = 20);

}  // namespace selberg
