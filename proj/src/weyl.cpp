#include "twsp/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "twsp/specfun.hpp"

namespace twsp {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

Complex expi(double t) { return Complex(std::cos(t), std::sin(t)); }

void check_band(const KernelFunction& k, const char* where) {
  if (!(k.band_lo <= k.band_hi) || !std::isfinite(k.band_lo) || !std::isfinite(k.band_hi)) {
    throw std::domain_error(std::string(where) + ": kernel band must be a finite interval");
  }
}

}  // namespace

Complex kernel_phi1(double xi, double eta) {
  const double w = eta - xi;
  if (w < 0.0 || w >= 1.0) return Complex(0.0, 0.0);
  const double s = xi + eta;
  return expi(kPi * s / 2.0) * sinc_half(s / 2.0);
}

Complex kernel_phi_n(int n, double xi, double eta, const QuadConfig& cfg) {
  if (n < 1) throw std::domain_error("kernel_phi_n: order must be >= 1");
  if (n == 1) return kernel_phi1(xi, eta);
  const double w = eta - xi;
  if (w < 0.0 || w >= static_cast<double>(n)) return Complex(0.0, 0.0);
  const double t_lo = std::max(0.0, w - (n - 1.0));
  const double t_hi = std::min(1.0, w);
  if (!(t_lo < t_hi)) return Complex(0.0, 0.0);
  auto integrand = [&](double t) {
    return expi(-kPi * t / 2.0) * sinc_half((2.0 * eta - t) / 2.0) *
           kernel_phi_n(n - 1, xi, eta - t, cfg);
  };
  const Complex integral = integrate_1d(integrand, Interval{t_lo, t_hi}, cfg).value;
  return expi(kPi * eta) * integral;
}

KernelFunction weyl_kernel(int n, const QuadConfig& cfg) {
  if (n < 1) throw std::domain_error("weyl_kernel: order must be >= 1");
  KernelFunction k;
  k.band_lo = 0.0;
  k.band_hi = static_cast<double>(n);
  k.decay_rate = 2.0;
  if (n == 1) {
    k.envelope_amp_sq = 4.0 / (kPi * kPi);
    k.eval = [](double xi, double eta) { return kernel_phi1(xi, eta); };
  } else if (n == 2) {
    k.envelope_amp_sq = 64.0 / (kPi * kPi * kPi * kPi);
    k.eval = [cfg](double xi, double eta) { return kernel_phi_n(2, xi, eta, cfg); };
  } else {
    k.envelope_amp_sq = 16.0 / (kPi * kPi);
    k.eval = [n, cfg](double xi, double eta) { return kernel_phi_n(n, xi, eta, cfg); };
  }
  return k;
}

KernelFunction kernel_compose(const KernelFunction& k1, const KernelFunction& k2,
                              const QuadConfig& cfg) {
  check_band(k1, "kernel_compose");
  check_band(k2, "kernel_compose");
  KernelFunction out;
  out.band_lo = k1.band_lo + k2.band_lo;
  out.band_hi = k1.band_hi + k2.band_hi;
  out.decay_rate = k1.decay_rate + k2.decay_rate;
  const double overlap = std::min(k1.band_hi - k1.band_lo, k2.band_hi - k2.band_lo);
  out.envelope_amp_sq = overlap * overlap * k1.envelope_amp_sq * k2.envelope_amp_sq *
                        std::pow(2.0, k1.decay_rate + k2.decay_rate);
  auto e1 = k1.eval;
  auto e2 = k2.eval;
  const double a1 = k1.band_lo;
  const double b1 = k1.band_hi;
  const double a2 = k2.band_lo;
  const double b2 = k2.band_hi;
  out.eval = [e1, e2, a1, b1, a2, b2, cfg](double xi, double eta) -> Complex {
    // K1(xi,y) needs y - xi in [a1,b1]; K2(y,eta) needs eta - y in [a2,b2].
    const double y_lo = std::max(xi + a1, eta - b2);
    const double y_hi = std::min(xi + b1, eta - a2);
    if (!(y_lo < y_hi)) return Complex(0.0, 0.0);
    auto integrand = [&](double y) { return e1(xi, y) * e2(y, eta); };
    return integrate_1d(integrand, Interval{y_lo, y_hi}, cfg).value;
  };
  return out;
}

namespace {

// Deterministic panel sum of iint F over the truncated strip, in rotated
// coordinates s = xi + eta, w = eta - xi (Jacobian 1/2).  Panels are unit in
// s; the w range is split at integers to isolate kernel seams.
Complex strip_integral(const std::function<Complex(double, double)>& f, double w_lo, double w_hi,
                       double radius, const QuadConfig& cfg) {
  const auto& [nodes, weights] = gauss_legendre(cfg.node_count);
  std::vector<double> w_cuts;
  w_cuts.push_back(w_lo);
  for (double c = std::ceil(w_lo); c < w_hi; c += 1.0) {
    if (c > w_lo && c < w_hi) w_cuts.push_back(c);
  }
  w_cuts.push_back(w_hi);

  const long s_panels = std::lround(std::ceil(2.0 * radius));
  Complex total(0.0, 0.0);
  for (std::size_t wi = 0; wi + 1 < w_cuts.size(); ++wi) {
    const double wa = w_cuts[wi];
    const double wb = w_cuts[wi + 1];
    const double wc = 0.5 * (wa + wb);
    const double wh = 0.5 * (wb - wa);
    for (long sp = -s_panels; sp < s_panels; ++sp) {
      const double sa = std::max(-2.0 * radius, static_cast<double>(sp));
      const double sb = std::min(2.0 * radius, static_cast<double>(sp) + 1.0);
      if (!(sa < sb)) continue;
      const double sc = 0.5 * (sa + sb);
      const double sh = 0.5 * (sb - sa);
      Complex panel(0.0, 0.0);
      for (int i = 0; i < cfg.node_count; ++i) {
        const double s = sc + sh * nodes[i];
        for (int j = 0; j < cfg.node_count; ++j) {
          const double w = wc + wh * nodes[j];
          const double xi = 0.5 * (s - w);
          const double eta = 0.5 * (s + w);
          panel += weights[i] * weights[j] * f(xi, eta);
        }
      }
      total += panel * (sh * wh * 0.5);
    }
  }
  return total;
}

double envelope_tail(const KernelFunction& k, double radius) {
  // integral over |s| > 2R of amp/|s|^d, times band width, Jacobian 1/2.
  const double d = k.decay_rate;
  const double width = k.band_hi - k.band_lo;
  return width * k.envelope_amp_sq * std::pow(2.0 * radius, 1.0 - d) / (d - 1.0);
}

}  // namespace

HsNorm hs_norm(const KernelFunction& k, double truncation_radius, const QuadConfig& cfg) {
  check_band(k, "hs_norm");
  if (!(truncation_radius > 0.0) || !std::isfinite(truncation_radius)) {
    throw std::domain_error("hs_norm: truncation radius must be positive");
  }
  if (!(k.decay_rate >= 1.0)) {
    throw std::domain_error("hs_norm: decay_rate < 1 leaves the tail uncontrolled");
  }
  auto eval = k.eval;
  auto f = [eval](double xi, double eta) -> Complex {
    const Complex v = eval(xi, eta);
    return Complex(std::norm(v), 0.0);
  };
  const Complex sq = strip_integral(f, k.band_lo, k.band_hi, truncation_radius, cfg);
  HsNorm out;
  out.value = std::sqrt(std::max(0.0, sq.real()));
  out.tail_bound = (k.decay_rate > 1.0) ? envelope_tail(k, truncation_radius)
                                        : std::numeric_limits<double>::infinity();
  return out;
}

Complex hs_inner(const KernelFunction& k1, const KernelFunction& k2, double truncation_radius,
                 const QuadConfig& cfg) {
  check_band(k1, "hs_inner");
  check_band(k2, "hs_inner");
  if (!(truncation_radius > 0.0) || !std::isfinite(truncation_radius)) {
    throw std::domain_error("hs_inner: truncation radius must be positive");
  }
  const double w_lo = std::max(k1.band_lo, k2.band_lo);
  const double w_hi = std::min(k1.band_hi, k2.band_hi);
  if (!(w_lo < w_hi)) return Complex(0.0, 0.0);
  auto e1 = k1.eval;
  auto e2 = k2.eval;
  auto f = [e1, e2](double xi, double eta) { return e1(xi, eta) * std::conj(e2(xi, eta)); };
  return strip_integral(f, w_lo, w_hi, truncation_radius, cfg);
}

KernelFunction pi_action(const KernelFunction& k, LatticePoint p) {
  KernelFunction out;
  const double kk = p.k;
  const double ll = p.l;
  auto inner = k.eval;
  out.eval = [inner, kk, ll](double xi, double eta) {
    return expi(2.0 * kPi * (kk * xi + kk * ll / 2.0)) * inner(xi + ll, eta);
  };
  out.band_lo = k.band_lo + ll;
  out.band_hi = k.band_hi + ll;
  out.decay_rate = k.decay_rate;
  out.envelope_amp_sq = k.envelope_amp_sq;
  return out;
}

}  // namespace twsp
