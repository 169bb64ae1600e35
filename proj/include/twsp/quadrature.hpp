#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace twsp {

using Complex = std::complex<double>;

struct Rectangle {
  double x_lo;
  double x_hi;
  double y_lo;
  double y_hi;
  double width() const { return x_hi - x_lo; }
  double height() const { return y_hi - y_lo; }
  double area() const { return width() * height(); }
};

// The universal function handle: a complex-valued function of two real
// variables together with its declared rectangular support.
struct PlanarFunction {
  std::function<Complex(double, double)> eval;
  Rectangle support;
};

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
};

struct QuadConfig {
  int node_count = 16;
  double tolerance = 1e-10;
  int max_subdivisions = 12;
};

struct QuadResult {
  Complex value;
  double error_estimate;  // summed embedded-rule discrepancy over accepted cells
  int subdivisions_used;  // deepest bisection level reached
  bool converged;         // false when some cell ran out of subdivisions
};

// Lines along which the integrand is not smooth.  The domain is pre-split on
// them so each cell sees an analytic piece and the rule converges spectrally.
struct Breakpoints {
  std::vector<double> x;
  std::vector<double> y;
};

// Adaptive tensor Gauss-Legendre quadrature over a rectangle.  Each cell is
// accepted when the discrepancy between the order node_count rule and the
// embedded half-order rule falls below the cell's area-proportional share of
// the tolerance; otherwise the cell is bisected along its longer axis, up to
// max_subdivisions levels deep.  Cells are processed in a fixed order, so
// results are bit-stable.  Throws std::runtime_error on a non-finite sample.
QuadResult integrate_2d(const PlanarFunction& f, const Rectangle& rect, const QuadConfig& cfg,
                        const Breakpoints& breaks = {});
QuadResult integrate_2d(const std::function<Complex(double, double)>& f, const Rectangle& rect,
                        const QuadConfig& cfg, const Breakpoints& breaks = {});

// One-dimensional analogue.
QuadResult integrate_1d(const std::function<Complex(double)>& f, const Interval& iv,
                        const QuadConfig& cfg, const std::vector<double>& breaks = {});

// Gauss-Legendre nodes and weights on [-1, 1], memoized per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order);

}  // namespace twsp
