#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>

#include "twsp/quadrature.hpp"
#include "twsp/twistops.hpp"

namespace twsp {

// Finitely supported coefficient sequence on the integer lattice.
struct CoefficientSeq {
  std::map<std::pair<int, int>, Complex> entries;

  void set(LatticePoint p, Complex v) { entries[{p.k, p.l}] = v; }
  Complex at(LatticePoint p) const {
    auto it = entries.find({p.k, p.l});
    return it == entries.end() ? Complex(0.0, 0.0) : it->second;
  }
  double norm_sq() const;
};

struct GramianReport {
  int order = 2;
  Complex i1, i3, i5, i7, i9;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double tolerance = 1e-3;
  unsigned long long seed = 20260822ull;
};

// <T^t_p f, T^t_q f> after reduction to a single overlap integral:
//   (-1)^{q.k p.l - q.l p.k} * iint e^{pi i (x (p.l-q.l) - y (p.k-q.k))}
//   f(x + q.k - p.k, y + q.l - p.l) conj(f(x,y)) dx dy over supp f.
// `seams` lists interior kink lines of f in its own coordinates; the shifted
// copy's seams are derived from them.
Complex twisted_inner(const PlanarFunction& f, LatticePoint p, LatticePoint q,
                      const QuadConfig& cfg = {}, const Breakpoints& seams = {});

// The five independent Gram integrals of the order-two spline, scaled by
// pi^4, together with the certified frame bounds
//   lower = (I9 - (2|I1| + 4|I3| + 2|I7|)) / pi^4,
//   upper = (I9 + (2|I1| + 4|I3| + 2|I7|)) / pi^4.
GramianReport gramian_phi2_integrals(const QuadConfig& cfg = {});

// Flat "key value" text block: i1_re, i1_im, ..., i9_re, i9_im, lower, upper.
std::string serialize_gramian(const GramianReport& rep);

// ||sum_p c_p T^t_p f||^2 via the Gram expansion with overlap pruning.
double quadratic_form(const PlanarFunction& f, const CoefficientSeq& c, const QuadConfig& cfg = {},
                      const Breakpoints& seams = {});

// The nine shift-class partial sums of the Gram expansion for the order-two
// generator, S_1..S_9, computed from the report's integrals.  Their total is
// the quadratic form; even-indexed entries conjugate their predecessors.
std::array<Complex, 9> s_family(const CoefficientSeq& c, const GramianReport& rep);

// Max of quadratic_form(phi_n, c)/||c||^2 over `trials` random sequences
// supported on {-1,0,1}^2; the order-two upper bound dominates it for n >= 2.
double bessel_upper_bound(int n, int trials, const QuadConfig& cfg = {},
                          unsigned long long seed = 20260822ull);

}  // namespace twsp
