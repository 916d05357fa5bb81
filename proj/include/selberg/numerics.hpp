#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace selberg {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Kahan-Babuska (Neumaier) compensated accumulator.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    comp_ += correction(sum_, x, t);
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  static double correction(double s, double x, double t) {
    return std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
  }
  static Complex correction(Complex s, Complex x, Complex t) {
    return {correction(s.real(), x.real(), t.real()),
            correction(s.imag(), x.imag(), t.imag())};
  }

  T sum_{};
  T comp_{};
};

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n);
  int size() const { return static_cast<int>(nodes.size()); }
};

// Shared 16-point rule used by every composite quadrature in the library.
const GaussLegendre& gauss_legendre16();

// Worker count: explicit request, else SELBERG_LAB_THREADS, else 1.
unsigned resolve_threads(unsigned requested = 0);

// Runs body(i) for i in [0, count) across `threads` workers with a static
// round-robin partition. Results must be written to per-index slots.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body);

}  // namespace selberg

#include "selberg/detail/parallel_for.hpp"
