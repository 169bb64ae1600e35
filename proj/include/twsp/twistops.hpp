#pragma once

#include "twsp/quadrature.hpp"

namespace twsp {

struct LatticePoint {
  int k;
  int l;
};

struct ComposedTranslation {
  Complex phase;
  LatticePoint point;
};

// T^t_{(k,l)} f (x,y) = e^{pi i (l x - k y)} f(x-k, y-l).
PlanarFunction twisted_translate(const PlanarFunction& f, LatticePoint p);

// T^t_{p1} T^t_{p2} = phase * T^t_{p1+p2} with phase = (-1)^{k1 l2 - l1 k2}.
ComposedTranslation compose_translations(LatticePoint p1, LatticePoint p2);

// (T^t)^lambda at a possibly non-integer shift:
// (x,y) -> e^{pi i lambda (sy x - sx y)} f(x - sx, y - sy).  lambda != 0.
PlanarFunction lambda_twisted_translate(const PlanarFunction& f, double lambda, double shift_x,
                                        double shift_y);
PlanarFunction lambda_twisted_translate(const PlanarFunction& f, double lambda, LatticePoint p);

// D_a f (x,y) = a f(ax, ay), a > 0.
PlanarFunction dilate(const PlanarFunction& f, double a);

// Twisted convolution
//   (f x g)(x,y) = iint f(x-u, y-v) g(u,v) e^{pi i (u y - v x)} du dv,
// evaluated lazily by quadrature over supp(g) intersected with (x,y) - supp(f).
// The declared support of the result is the Minkowski sum of the supports.
PlanarFunction twisted_convolve(const PlanarFunction& f, const PlanarFunction& g,
                                const QuadConfig& cfg = {});

// Caching wrapper: values at dyadic grid points (denominator 4096) are
// remembered, off-grid queries pass through.
PlanarFunction memoized(const PlanarFunction& f);

// L2 inner product iint f conj(g) over the intersection of the supports.
Complex l2_inner(const PlanarFunction& f, const PlanarFunction& g, const QuadConfig& cfg = {},
                 const Breakpoints& breaks = {});
double l2_norm_sq(const PlanarFunction& f, const QuadConfig& cfg = {},
                  const Breakpoints& breaks = {});

}  // namespace twsp
