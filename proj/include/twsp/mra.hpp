#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "twsp/gram.hpp"
#include "twsp/quadrature.hpp"
#include "twsp/twistops.hpp"

namespace twsp {

// One level of the nonstationary ladder.  The scaling window is
// N_{2j}(x, y) = 2^{2j} phi1(2^{2j} x, 2^{2j} y), and the level's basis
// functions arise from it through dilation by 2^{-j}, a 2^{2j}-twisted
// translate with shifts scaled by 2^{-j}, and nothing else.
struct MRALevel {
  int j = 0;
  PlanarFunction phi;
  double dilation = 1.0;     // 2^{-j}
  double lambda = 1.0;       // 2^{2j}, the twist of the level's translates
  double shift_scale = 1.0;  // 2^{-j}
};

// Levels are capped at |j| <= 8; index ranges grow like 2^{-j} and desk
// scale ends there.  Throws std::domain_error beyond the cap.
MRALevel mra_level(int j);

// Basis function of level j at lattice index (k, l), built compositionally
// as dilate(lambda_twisted_translate(Phi_j, 2^{2j}, 2^{-j}(k,l)), 2^{-j}).
// Closed form: 2^j e^{pi i (l x - k y)} on [k, k+2^{-j}) x [l, l+2^{-j}).
PlanarFunction basis_fn(int j, int k, int l);

// Inner product of the translated scaling windows,
// <T^t_{(r,s)} N_j, N_j>.  For j >= 0 the translates are orthonormal and
// this is a Kronecker delta.  For j <= -1 the closed form is 1 at (0,0),
// zero whenever r or s is even or the supports miss, and
// 2^{2j+2} / (pi^2 |r s|) when r and s are both odd.
Complex inner_Nj(int r, int s, int j);

// The same inner product by direct quadrature of the overlap integral.
Complex inner_Nj_quadrature(int r, int s, int j, const QuadConfig& cfg = QuadConfig{});

// Index set A_j of nonzero offsets with |r|, |s| <= 2^{-j} - 1, the range
// over which translated windows can meet.  Requires j <= -1.
std::vector<LatticePoint> index_set_a(int j);

// Number of offsets in A_j with r, s both odd and r s > 0.
std::size_t b1_count(int j);

// S = || sum alpha_{k,l} D_{2^{-j}} (T^t_{2^{-j}(k,l)})^{2^{2j}} Phi_j ||^2
// assembled from inner_Nj: the diagonal gives ||alpha||^2 and each cross
// pair contributes the composition sign (-1)^{l k' - k l'} times
// inner_Nj(k - k', l - l', j).
double quadratic_form_S(const CoefficientSeq& alpha, int j);

// Randomized sampling of S over unit-normalized coefficient draws on the
// window [0, 2^{-j})^2.  Trials are seeded individually, so sharding them
// across workers cannot change the outcome.  lo and hi bracket the sampled
// S values; inside reports containment in [1 - 2/pi, 1 + 2/pi].
struct RieszWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool inside = false;
};

RieszWindow riesz_sample_S(int j, int trials, unsigned long long seed = 20260822ull);

// Coefficients c_{k,l} = <D_{1/2} phi, T^t_{(k,l)} phi> for k, l in {0,1},
// the only indices that can contribute when supp phi is in the unit
// square.  Requires that support; throws std::domain_error otherwise.
CoefficientSeq haar_coefficients(const PlanarFunction& phi, const QuadConfig& cfg = QuadConfig{});

// psi = sum (-1)^{k+l} conj(c_{k,l}) D_2 T^t_{(-k+1, l)} phi, together with
// its coefficient table and a check of the construction's hypothesis: the
// residual of D_{1/2} phi against the integer twisted translates of phi
// (meaningful when those translates are orthonormal).  The table may only
// hold indices in {0,1}^2, which is what keeps supp psi inside the unit
// square; other indices throw std::domain_error.
struct WaveletCandidate {
  CoefficientSeq coefficients;
  PlanarFunction psi;
  std::string source_tag;
  double hypothesis_residual = 0.0;
  bool hypothesis_ok = false;
};

WaveletCandidate build_psi(const CoefficientSeq& c, const PlanarFunction& phi,
                           const QuadConfig& cfg = QuadConfig{},
                           const std::string& source_tag = "phi");

// Projection residual of basis_fn(j, 0, 0) against the level j+1 system,
// ||b||^2 minus the summed squared coefficients over every overlapping
// index.  The target system must be orthonormal, so j >= -1 is required
// (and j <= 7 keeps the level cap).  A zero residual would mean the level
// embeds in the next one; the measured values do not vanish.
double nesting_residual(int j, const QuadConfig& cfg = QuadConfig{});

// Residual of g = T^t_{(1,0)} phi1 against the D_2 T^t_{(k,l)} phi1 system
// truncated at |k|, |l| <= truncation.  Only finitely many of those basis
// functions meet supp g, so any truncation >= 4 is exact.  Requires
// truncation >= 2.
double v0_not_in_v1_residual(int truncation, const QuadConfig& cfg = QuadConfig{});

}  // namespace twsp
