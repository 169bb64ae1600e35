#pragma once

#include <complex>
#include <vector>

#include "twsp/quadrature.hpp"

namespace twsp {

// chi_{[0,1)}(x) chi_{[0,1)}(y).
Complex phi1(double x, double y);

// The order-2 twisted B-spline in its four-region closed form.  Real valued,
// continuous, supported on [0,2]^2.  Each region is evaluated in a product
// form built on sin(t)/t, which is algebraically identical to the trig-ratio
// form but free of the 0/0 cancellation near the axes.
Complex phi2_closed(double x, double y);

// Order-n twisted B-spline.  Orders 1 and 2 delegate to the closed forms;
// n >= 3 evaluates the convolution recursion
//   phi_{n}(x,y) = int_Q phi_{n-1}(x-u, y-v) e^{pi i (u y - v x)} dv du
// by adaptive quadrature, recursing down to the order-2 base case.  Values at
// dyadic grid points (denominator 4096) are memoized per (n, x, y).
Complex phi_n(int n, double x, double y, const QuadConfig& cfg = {});

enum class SplineStrategy { closed_form, recursion };

class TwistedSpline {
 public:
  explicit TwistedSpline(int order);
  int order() const { return order_; }
  SplineStrategy strategy() const {
    return order_ <= 2 ? SplineStrategy::closed_form : SplineStrategy::recursion;
  }
  Rectangle support() const {
    return {0.0, static_cast<double>(order_), 0.0, static_cast<double>(order_)};
  }
  // Instances share one process-wide dyadic-grid memo keyed by (n, x, y).
  Complex evaluate(double x, double y, const QuadConfig& cfg = {}) const;
  PlanarFunction as_planar(const QuadConfig& cfg = {}) const;

 private:
  int order_;
};

// Interior kink lines of the order-n spline: the integer grid lines
// 1, ..., n-1 on both axes.
Breakpoints spline_seams(int order);

// Moment machinery.  L_1(u,v) = (e^{pi i u} - 1)(e^{-pi i v} - 1)/(pi^2 u v)
// extended by its limits on the axes; higher orders follow the recursion
//   L_{k+1}(u,v) = int_Q L_k(p+u, q+v) e^{pi i (u q - v p)} dp dq.
Complex moment_l(int k, double u, double v, const QuadConfig& cfg = {});

// n-th moment of the twisted spline family: 1 for n = 1, the trig-integral
// closed form for n = 2, and int_Q L_{n-1} for n >= 3.
Complex moment(int n, const QuadConfig& cfg = {});

struct MomentFunctional {
  int order;
  Complex value;
  std::vector<Complex> l_table;  // row-major L_order samples on Q
  int table_size;                // samples per axis
};

MomentFunctional moment_functional(int n, const QuadConfig& cfg = {}, int table_size = 5);

// Classical cardinal B-spline of order n (support [0,n]), its tensor square,
// its Fourier transform ((1 - e^{-i w})/(i w))^n, and the residual of the
// two-scale refinement relation.
double classical_bspline(int n, double x);
double tensor_bspline(int n, double x, double y);
Complex bspline_fourier(int n, double omega);
double two_scale_check(int n, double x);

}  // namespace twsp
