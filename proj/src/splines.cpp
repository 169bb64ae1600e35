#include "twsp/splines.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "twsp/specfun.hpp"

namespace twsp {
namespace {

constexpr double kPi = std::numbers::pi;

Complex expi(double t) { return {std::cos(t), std::sin(t)}; }

// Dyadic-grid detection for the memo: x is cacheable when 4096 x is integral.
bool dyadic_key(double t, std::int64_t& out) {
  const double s = t * 4096.0;
  if (s == std::floor(s) && std::abs(s) < 9.0e15) {
    out = static_cast<std::int64_t>(s);
    return true;
  }
  return false;
}

using MemoKey = std::tuple<int, std::int64_t, std::int64_t>;
std::map<MemoKey, Complex>& memo() {
  static std::map<MemoKey, Complex> m;
  return m;
}
std::mutex& memo_mutex() {
  static std::mutex mu;
  return mu;
}

double sq(double t) { return t * t; }

Complex phi_recursion(int n, double x, double y, const QuadConfig& cfg) {
  const double ulo = std::max(0.0, x - (n - 1.0));
  const double uhi = std::min(1.0, x);
  const double vlo = std::max(0.0, y - (n - 1.0));
  const double vhi = std::min(1.0, y);
  if (!(ulo < uhi) || !(vlo < vhi)) return 0.0;
  Breakpoints bp;
  for (int k = 1; k <= n - 2; ++k) {
    bp.x.push_back(x - k);
    bp.y.push_back(y - k);
  }
  auto integrand = [&](double u, double v) {
    return phi_n(n - 1, x - u, y - v, cfg) * expi(kPi * (u * y - v * x));
  };
  return integrate_2d(integrand, {ulo, uhi, vlo, vhi}, cfg, bp).value;
}

}  // namespace

Complex phi1(double x, double y) {
  return (x >= 0.0 && x < 1.0 && y >= 0.0 && y < 1.0) ? 1.0 : 0.0;
}

Complex phi2_closed(double x, double y) {
  if (!(x > 0.0 && x < 2.0 && y > 0.0 && y < 2.0)) return 0.0;
  const double h = kPi / 2.0;
  double v;
  if (x <= 1.0) {
    if (y <= 1.0) {
      v = x * y * sq(sinu(h * x * y));
    } else {
      v = x * (2.0 - y) * sinu(h * x * y) * sinu(h * x * (2.0 - y));
    }
  } else {
    if (y <= 1.0) {
      v = y * (2.0 - x) * sinu(h * x * y) * sinu(h * y * (2.0 - x));
    } else {
      v = (2.0 - x) * (2.0 - y) * sinu(h * x * (2.0 - y)) * sinu(h * (2.0 - x) * y);
    }
  }
  return v;
}

Complex phi_n(int n, double x, double y, const QuadConfig& cfg) {
  if (n < 1) throw std::domain_error("phi_n: order must be >= 1");
  if (n == 1) return phi1(x, y);
  if (n == 2) return phi2_closed(x, y);

  std::int64_t ix = 0, iy = 0;
  const bool cacheable = dyadic_key(x, ix) && dyadic_key(y, iy);
  if (cacheable) {
    std::lock_guard<std::mutex> lock(memo_mutex());
    auto it = memo().find({n, ix, iy});
    if (it != memo().end()) return it->second;
  }
  const Complex v = phi_recursion(n, x, y, cfg);
  if (cacheable) {
    std::lock_guard<std::mutex> lock(memo_mutex());
    memo().emplace(MemoKey{n, ix, iy}, v);
  }
  return v;
}

TwistedSpline::TwistedSpline(int order) : order_(order) {
  if (order < 1) throw std::domain_error("TwistedSpline: order must be >= 1");
}

Complex TwistedSpline::evaluate(double x, double y, const QuadConfig& cfg) const {
  return phi_n(order_, x, y, cfg);
}

PlanarFunction TwistedSpline::as_planar(const QuadConfig& cfg) const {
  const int n = order_;
  return {[n, cfg](double x, double y) { return phi_n(n, x, y, cfg); }, support()};
}

Breakpoints spline_seams(int order) {
  if (order < 1) throw std::domain_error("spline_seams: order must be >= 1");
  Breakpoints b;
  for (int k = 1; k < order; ++k) {
    b.x.push_back(static_cast<double>(k));
    b.y.push_back(static_cast<double>(k));
  }
  return b;
}

Complex moment_l(int k, double u, double v, const QuadConfig& cfg) {
  if (k < 1) throw std::domain_error("moment_l: order must be >= 1");
  if (k == 1) {
    auto g = [](double t) {  // (e^{pi i t} - 1)/(pi t), limit i at 0
      if (std::abs(t) < 1e-8) return Complex(-0.5 * kPi * t, 1.0);
      return (expi(kPi * t) - 1.0) / (kPi * t);
    };
    auto h = [&g](double t) { return std::conj(g(t)); };  // (e^{-pi i t} - 1)/(pi t)
    return g(u) * h(v);
  }
  auto integrand = [&](double p, double q) {
    return moment_l(k - 1, p + u, q + v, cfg) * expi(kPi * (u * q - v * p));
  };
  return integrate_2d(integrand, {0.0, 1.0, 0.0, 1.0}, cfg).value;
}

Complex moment(int n, const QuadConfig& cfg) {
  if (n < 1) throw std::domain_error("moment: order must be >= 1");
  if (n == 1) return 1.0;
  if (n == 2) {
    const double c = -std::numbers::egamma - std::log(kPi) + ci(kPi);
    const double s = si(kPi);
    return Complex(c, s) * Complex(c, -s) / (kPi * kPi);
  }
  auto integrand = [&](double u, double v) { return moment_l(n - 1, u, v, cfg); };
  return integrate_2d(integrand, {0.0, 1.0, 0.0, 1.0}, cfg).value;
}

MomentFunctional moment_functional(int n, const QuadConfig& cfg, int table_size) {
  if (table_size < 2) throw std::domain_error("moment_functional: table_size must be >= 2");
  MomentFunctional out;
  out.order = n;
  out.value = moment(n, cfg);
  out.table_size = table_size;
  out.l_table.reserve(static_cast<std::size_t>(table_size) * table_size);
  for (int i = 0; i < table_size; ++i) {
    for (int j = 0; j < table_size; ++j) {
      const double u = static_cast<double>(i) / (table_size - 1);
      const double v = static_cast<double>(j) / (table_size - 1);
      out.l_table.push_back(moment_l(n, u, v, cfg));
    }
  }
  return out;
}

double classical_bspline(int n, double x) {
  if (n < 1) throw std::domain_error("classical_bspline: order must be >= 1");
  if (n == 1) return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
  if (x <= 0.0 || x >= n) return 0.0;
  double fact = 1.0;  // (n-1)!
  for (int k = 2; k < n; ++k) fact *= k;
  double binom = 1.0;  // C(n, k)
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = x - k;
    if (t > 0.0) {
      const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      sum += sgn * binom * std::pow(t, n - 1);
    }
    binom = binom * (n - k) / (k + 1.0);
  }
  return sum / fact;
}

double tensor_bspline(int n, double x, double y) {
  return classical_bspline(n, x) * classical_bspline(n, y);
}

Complex bspline_fourier(int n, double omega) {
  if (n < 1) throw std::domain_error("bspline_fourier: order must be >= 1");
  // (1 - e^{-i w})/(i w) = e^{-i w/2} sin(w/2)/(w/2), stable at w = 0.
  const Complex base = expi(-0.5 * omega) * sinu(0.5 * omega);
  return std::pow(base, n);
}

double two_scale_check(int n, double x) {
  if (n < 1) throw std::domain_error("two_scale_check: order must be >= 1");
  const double scale = std::pow(2.0, 1 - n);
  double binom = 1.0;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    sum += scale * binom * classical_bspline(n, 2.0 * x - k);
    binom = binom * (n - k) / (k + 1.0);
  }
  return std::abs(classical_bspline(n, x) - sum);
}

}  // namespace twsp
