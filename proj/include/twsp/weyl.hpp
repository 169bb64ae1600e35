#pragma once

#include "twsp/quadrature.hpp"
#include "twsp/twistops.hpp"

namespace twsp {

// Integral kernel supported on the strip band_lo <= eta - xi <= band_hi.
// decay_rate d and envelope_amp_sq document a far-field envelope
// |K(xi,eta)|^2 <= envelope_amp_sq / |xi+eta|^d used for truncation bounds.
struct KernelFunction {
  std::function<Complex(double, double)> eval;
  double band_lo = 0.0;
  double band_hi = 0.0;
  double decay_rate = 2.0;
  double envelope_amp_sq = 0.0;
};

// K at order one: e^{pi i (xi+eta)/2} sinc_half((xi+eta)/2) on 0 <= eta-xi < 1.
Complex kernel_phi1(double xi, double eta);

// Order n kernel by the one-dimensional recursion
//   K_n(xi,eta) = e^{pi i eta} int_0^1 e^{-pi i t/2} sinc_half((2 eta - t)/2)
//                 K_{n-1}(xi, eta - t) dt,
// restricted to the strip 0 <= eta - xi < n.
Complex kernel_phi_n(int n, double xi, double eta, const QuadConfig& cfg = {});

// KernelFunction wrapper for the order-n kernel, with documented envelope.
KernelFunction weyl_kernel(int n, const QuadConfig& cfg = {});

// (K1 o K2)(xi,eta) = int K1(xi,y) K2(y,eta) dy over the strip overlap.
// The band of the result is the sum of the bands.
KernelFunction kernel_compose(const KernelFunction& k1, const KernelFunction& k2,
                              const QuadConfig& cfg = {});

struct HsNorm {
  double value;       // sqrt of the truncated squared norm
  double tail_bound;  // bound on the squared-norm mass outside |xi+eta| <= 2R
};

// Hilbert-Schmidt norm truncated to |xi+eta| <= 2R, with analytic tail bound
// from the documented envelope.  decay_rate < 1 is rejected: the envelope
// tail would not converge.
HsNorm hs_norm(const KernelFunction& k, double truncation_radius = 200.0,
               const QuadConfig& cfg = {});

// Truncated Hilbert-Schmidt inner product iint K1 conj(K2).
Complex hs_inner(const KernelFunction& k1, const KernelFunction& k2,
                 double truncation_radius = 200.0, const QuadConfig& cfg = {});

// Kernel of the metaplectic action: (xi,eta) -> e^{2 pi i (k xi + k l/2)} K(xi+l, eta).
// The band shifts by +l along the eta - xi axis.
KernelFunction pi_action(const KernelFunction& k, LatticePoint p);

}  // namespace twsp
