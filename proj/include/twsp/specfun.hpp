#pragma once

#include <complex>

namespace twsp {

// Values of the cosine and sine integrals at a common positive argument.
struct TrigIntegralPair {
  double ci;
  double si;
  double argument;
};

// Partial sums of the asymptotic series
//   P(x) = sum_{k=0}^{n} (-1)^k (2k)!   / x^{2k}
//   Q(x) = sum_{k=0}^{n} (-1)^k (2k+1)! / x^{2k+1}
// truncated at k = order_n.
struct AsymptoticPQ {
  double p_value;
  double q_value;
  int order_n;
  double argument;
};

struct Constants {
  double euler_gamma;
  double pi;
};

Constants constants();

// Si(x) = integral of sin(t)/t over [0, x].  Power series below the regime
// crossover, optimally truncated asymptotic expansion beyond it.
// Requires finite x >= 0; throws std::domain_error otherwise.
double si(double x);

// Ci(x) = euler_gamma + log(x) + integral of (cos(t) - 1)/t over [0, x].
// Requires finite x > 0; throws std::domain_error otherwise.
double ci(double x);

// Both integrals at once for x > 0.
TrigIntegralPair trig_integral_pair(double x);

// Ei(ix) = Ci(x) + i (Si(x) - pi/2) for x > 0; the conjugate for x < 0.
// Requires finite nonzero x; throws std::domain_error otherwise.
std::complex<double> ei_imag(double x);

// P and Q partial sums through k = order_n at the given nonzero argument.
AsymptoticPQ asymptotic_pq(double x, int order_n);

// sin(pi t) / (pi t) with the removable singularity filled in.
double sinc_half(double t);

// sin(u) / u, the unnormalized variant.
double sinu(double u);

namespace detail {
// Single-regime evaluations, exposed so the crossover band can be checked.
double si_series(double x);
double ci_series(double x);
double si_asymptotic(double x);
double ci_asymptotic(double x);
}  // namespace detail

}  // namespace twsp
