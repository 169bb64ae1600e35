#include "twsp/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace twsp {
namespace {

// Series/asymptotic crossover.  Both regimes agree to about 1e-9 across
// [15, 25]; the series loses accuracy above (alternating-term cancellation)
// and the divergent expansion loses accuracy below.
constexpr double kCrossover = 20.0;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kahan-compensated accumulator; the power series pass through terms in the
// 1e6 range near the crossover, so naive summation wastes digits.
struct Accum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Optimally truncated P and Q: accumulate while terms shrink, stop at the
// smallest term of each divergent series.
void pq_optimal(double x, double& p_out, double& q_out) {
  const double x2 = x * x;

  double p = 1.0;
  double term = 1.0;
  double sign = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double next = term * (2.0 * k) * (2.0 * k - 1.0) / x2;
    if (next >= term) break;
    term = next;
    sign = -sign;
    p += sign * term;
    if (term <= kEps * std::abs(p)) break;
  }

  double q = 1.0 / x;
  term = q;
  sign = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double next = term * (2.0 * k + 1.0) * (2.0 * k) / x2;
    if (next >= term) break;
    term = next;
    sign = -sign;
    q += sign * term;
    if (term <= kEps * std::abs(q)) break;
  }

  p_out = p;
  q_out = q;
}

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(who) + ": non-finite argument");
}

}  // namespace

namespace detail {

double si_series(double x) {
  const double x2 = x * x;
  Accum acc;
  double t = x;  // x^{2k+1} / (2k+1)!
  acc.add(t);
  for (int k = 1; k < 200; ++k) {
    t *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
    const double term = t / (2.0 * k + 1.0);
    acc.add(term);
    if (std::abs(term) <= kEps * (1.0 + std::abs(acc.sum)) && 2.0 * k > x) break;
  }
  return acc.sum;
}

double ci_series(double x) {
  const double x2 = x * x;
  Accum acc;
  double t = x2 / 2.0;  // x^{2k} / (2k)!
  double sign = -1.0;
  acc.add(sign * t / 2.0);
  for (int k = 2; k < 200; ++k) {
    t *= x2 / ((2.0 * k - 1.0) * (2.0 * k));
    sign = -sign;
    const double term = sign * t / (2.0 * k);
    acc.add(term);
    if (std::abs(term) <= kEps * (1.0 + std::abs(acc.sum)) && 2.0 * k > x) break;
  }
  return std::numbers::egamma + std::log(x) + acc.sum;
}

double si_asymptotic(double x) {
  double p, q;
  pq_optimal(x, p, q);
  return std::numbers::pi / 2.0 - (std::cos(x) / x) * p - (std::sin(x) / x) * q;
}

double ci_asymptotic(double x) {
  double p, q;
  pq_optimal(x, p, q);
  return (std::sin(x) / x) * p - (std::cos(x) / x) * q;
}

}  // namespace detail

Constants constants() { return {std::numbers::egamma, std::numbers::pi}; }

double si(double x) {
  require_finite(x, "si");
  if (x < 0.0) throw std::domain_error("si: negative argument");
  if (x == 0.0) return 0.0;
  return x < kCrossover ? detail::si_series(x) : detail::si_asymptotic(x);
}

double ci(double x) {
  require_finite(x, "ci");
  if (x <= 0.0) throw std::domain_error("ci: argument must be positive");
  return x < kCrossover ? detail::ci_series(x) : detail::ci_asymptotic(x);
}

TrigIntegralPair trig_integral_pair(double x) { return {ci(x), si(x), x}; }

std::complex<double> ei_imag(double x) {
  require_finite(x, "ei_imag");
  if (x == 0.0) throw std::domain_error("ei_imag: logarithmic singularity at 0");
  if (x < 0.0) return std::conj(ei_imag(-x));
  return {ci(x), si(x) - std::numbers::pi / 2.0};
}

AsymptoticPQ asymptotic_pq(double x, int order_n) {
  require_finite(x, "asymptotic_pq");
  if (x == 0.0) throw std::domain_error("asymptotic_pq: zero argument");
  if (order_n < 0) throw std::domain_error("asymptotic_pq: negative order");
  const double x2 = x * x;
  double p = 0.0;
  double q = 0.0;
  double pt = 1.0;
  double qt = 1.0 / x;
  double sign = 1.0;
  for (int k = 0; k <= order_n; ++k) {
    if (k > 0) {
      pt *= (2.0 * k) * (2.0 * k - 1.0) / x2;
      qt *= (2.0 * k + 1.0) * (2.0 * k) / x2;
      sign = -sign;
    }
    p += sign * pt;
    q += sign * qt;
  }
  return {p, q, order_n, x};
}

double sinc_half(double t) {
  if (t == 0.0) return 1.0;
  const double u = std::numbers::pi * t;
  return std::sin(u) / u;
}

double sinu(double u) {
  if (u == 0.0) return 1.0;
  return std::sin(u) / u;
}

}  // namespace twsp
