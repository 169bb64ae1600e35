#pragma once

#include <string>

#include "twsp/quadrature.hpp"

namespace twsp {

// Case classes for the lattice constants calI(p, q).  The four tags
// partition the integer lattice:
//   small_block  |p| <= 1 and |q| <= 1
//   axis         exactly one of |p|, |q| exceeds 1
//   both_large   |p|, |q| >= 2 with equal signs
//   mixed_sign   |p|, |q| >= 2 with opposite signs
enum class CaseTag { small_block, axis, both_large, mixed_sign };

CaseTag classify_case(int p, int q);

// Pointwise value of the twisted-translate partition sum for the order-one
// spline: exp(pi i (floor(y) x - floor(x) y)).  At any point exactly one
// lattice term contributes, so the full sum collapses to this phase.
Complex pointwise_pou_phi1(double x, double y);

// Closed-form pieces of the truncated partition identity over the index
// block [-m, m-1]^2.  The two cross terms cancel exactly, so b_plus_c is
// identically zero and total = 1 + a_term with
//   a_term = (4/pi^2) / m^2  for odd m,  0 for even m.
// Requires m >= 1; throws std::domain_error otherwise.
struct PouTruncated {
  double a_term = 0.0;
  Complex b_plus_c{0.0, 0.0};
  Complex total{0.0, 0.0};
};

PouTruncated pou_phi1_truncated(int m);

// Lattice constant calI(p, q) = G(p, q) * conj(G(q, p)).  The factor G has
// closed forms built from cosine and sine integrals; its internal split at
// p = 0 and p = 1 covers the axis and small-block specials, and a single
// closed form serves both sign quadrants when |p|, |q| >= 2.  Every
// exponential integral at an imaginary argument goes through ei_imag.
Complex calI(int p, int q);

// Direct quadrature of the defining double integral over the unit square.
// Independent of the closed forms above; used to arbitrate them.
Complex calI_quadrature(int p, int q, const QuadConfig& cfg = QuadConfig{});

// Truncated lattice sum and certified tail data.  partial_sum accumulates
// calI over the block |p|, |q| <= truncation_radius, grouped exactly as the
// sum decomposes: the small block, the three doubled axis families, then
// the mixed-sign and equal-sign quadrants.  tail_bound dominates the
// discarded remainder via inverse-square envelopes; it is trustworthy only
// when envelope_ok is set.  c_phi2_value = Re(partial_sum) / pi^2 is the
// normalized spline constant the sum certifies.
struct SumReport {
  int truncation_radius = 0;
  Complex partial_sum{0.0, 0.0};
  double tail_bound = 0.0;
  double constant_c_fit = 0.0;
  double c_phi2_value = 0.0;
  bool envelope_ok = false;
};

// Builds the report at the given radius.  Envelope constants are calibrated
// from sweeps of the normalized terms, never assumed; the decay exponents
// are re-fitted by least squares and the small block is cross-checked
// against calI_quadrature with cfg, and either failure clears envelope_ok.
// Requires radius >= 2; throws std::domain_error otherwise.
SumReport c_phi2(int radius, const QuadConfig& cfg = QuadConfig{});

// Flat key-value rendering, one "key value" pair per line.
std::string serialize_sum(const SumReport& rep);

// Envelope classes for the real-part bounds along the summation families.
enum class ReCase { axis0, axis_plus1, axis_minus1, generic };

// Re calI(p, q) together with its envelope
//   axis families    c / (p - 1)^2           (q fixed at 0, +1, -1)
//   generic          c / ((p - 1)^2 (|q| - 1)^2)
// with c the sweep-calibrated class constant.  Requires p >= 2, and
// |q| >= 2 for the generic class; throws std::domain_error otherwise.
struct ReBound {
  double value = 0.0;
  double envelope = 0.0;
};

ReBound re_calI_bound(int p, ReCase which, int q = 0);

// Level n of the translated-sum moment family, evaluated pointwise.  Level
// one is the truncated lattice sum
//   L_1(u, v) = pi^2 sum_{|p|,|q| <= radius} e^{pi i (u q - v p)}
//               e^{pi i ((u-p) - (v-q))/2} su(pi (u-p)/2) su(pi (v-q)/2)
// with su(t) = sin(t)/t, and each further level integrates the previous one
// against the twisted phase over the unit square:
//   L_{n+1}(u, v) = int_Q e^{pi i (u t - v s)} L_n(u + s, v + t) ds dt.
// Requires n >= 1 and lattice_radius >= 1; throws std::domain_error.
Complex moment_pou_level(int n, double u, double v, const QuadConfig& cfg = QuadConfig{},
                         int lattice_radius = 8);

// Integral of level n over the unit square.  At n = 1 and matched
// truncation this reproduces the partial lattice sum of calI.
Complex moment_pou_recursion(int n, const QuadConfig& cfg = QuadConfig{}, int lattice_radius = 8);

}  // namespace twsp
