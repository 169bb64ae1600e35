#include "twsp/twistops.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace twsp {
namespace {

Complex expi(double t) { return Complex(std::cos(t), std::sin(t)); }

constexpr double kPi = 3.14159265358979323846264338327950288;

bool dyadic_key(double t, std::int64_t* out) {
  const double s = t * 4096.0;
  if (!(std::abs(s) < 9.0e15)) return false;
  const double r = std::nearbyint(s);
  if (r != s) return false;
  *out = static_cast<std::int64_t>(r);
  return true;
}

}  // namespace

PlanarFunction twisted_translate(const PlanarFunction& f, LatticePoint p) {
  PlanarFunction out;
  const double k = p.k;
  const double l = p.l;
  auto inner = f.eval;
  out.eval = [inner, k, l](double x, double y) {
    return expi(kPi * (l * x - k * y)) * inner(x - k, y - l);
  };
  out.support = Rectangle{f.support.x_lo + k, f.support.x_hi + k, f.support.y_lo + l,
                          f.support.y_hi + l};
  return out;
}

ComposedTranslation compose_translations(LatticePoint p1, LatticePoint p2) {
  const long d = static_cast<long>(p1.k) * p2.l - static_cast<long>(p1.l) * p2.k;
  ComposedTranslation out;
  out.phase = (d % 2 != 0) ? Complex(-1.0, 0.0) : Complex(1.0, 0.0);
  out.point = LatticePoint{p1.k + p2.k, p1.l + p2.l};
  return out;
}

PlanarFunction lambda_twisted_translate(const PlanarFunction& f, double lambda, double shift_x,
                                        double shift_y) {
  if (!(lambda != 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("lambda_twisted_translate: lambda must be finite and nonzero");
  }
  if (!std::isfinite(shift_x) || !std::isfinite(shift_y)) {
    throw std::domain_error("lambda_twisted_translate: shift must be finite");
  }
  PlanarFunction out;
  auto inner = f.eval;
  out.eval = [inner, lambda, shift_x, shift_y](double x, double y) {
    return expi(kPi * lambda * (shift_y * x - shift_x * y)) * inner(x - shift_x, y - shift_y);
  };
  out.support = Rectangle{f.support.x_lo + shift_x, f.support.x_hi + shift_x,
                          f.support.y_lo + shift_y, f.support.y_hi + shift_y};
  return out;
}

PlanarFunction lambda_twisted_translate(const PlanarFunction& f, double lambda, LatticePoint p) {
  return lambda_twisted_translate(f, lambda, static_cast<double>(p.k), static_cast<double>(p.l));
}

PlanarFunction dilate(const PlanarFunction& f, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::domain_error("dilate: scale must be finite and positive");
  }
  PlanarFunction out;
  auto inner = f.eval;
  out.eval = [inner, a](double x, double y) { return a * inner(a * x, a * y); };
  out.support = Rectangle{f.support.x_lo / a, f.support.x_hi / a, f.support.y_lo / a,
                          f.support.y_hi / a};
  return out;
}

PlanarFunction twisted_convolve(const PlanarFunction& f, const PlanarFunction& g,
                                const QuadConfig& cfg) {
  PlanarFunction out;
  auto fe = f.eval;
  auto ge = g.eval;
  const Rectangle fs = f.support;
  const Rectangle gs = g.support;
  out.eval = [fe, ge, fs, gs, cfg](double x, double y) -> Complex {
    const double ulo = std::max(gs.x_lo, x - fs.x_hi);
    const double uhi = std::min(gs.x_hi, x - fs.x_lo);
    const double vlo = std::max(gs.y_lo, y - fs.y_hi);
    const double vhi = std::min(gs.y_hi, y - fs.y_lo);
    if (!(ulo < uhi) || !(vlo < vhi)) return Complex(0.0, 0.0);
    auto integrand = [&](double u, double v) {
      return fe(x - u, y - v) * ge(u, v) * expi(kPi * (u * y - v * x));
    };
    return integrate_2d(integrand, Rectangle{ulo, uhi, vlo, vhi}, cfg).value;
  };
  out.support = Rectangle{fs.x_lo + gs.x_lo, fs.x_hi + gs.x_hi, fs.y_lo + gs.y_lo,
                          fs.y_hi + gs.y_hi};
  return out;
}

PlanarFunction memoized(const PlanarFunction& f) {
  struct Cache {
    std::mutex mu;
    std::map<std::pair<std::int64_t, std::int64_t>, Complex> values;
  };
  auto cache = std::make_shared<Cache>();
  PlanarFunction out;
  auto inner = f.eval;
  out.eval = [inner, cache](double x, double y) -> Complex {
    std::int64_t ix = 0;
    std::int64_t iy = 0;
    if (dyadic_key(x, &ix) && dyadic_key(y, &iy)) {
      const auto key = std::make_pair(ix, iy);
      {
        std::lock_guard<std::mutex> lock(cache->mu);
        auto it = cache->values.find(key);
        if (it != cache->values.end()) return it->second;
      }
      const Complex v = inner(x, y);
      std::lock_guard<std::mutex> lock(cache->mu);
      cache->values.emplace(key, v);
      return v;
    }
    return inner(x, y);
  };
  out.support = f.support;
  return out;
}

Complex l2_inner(const PlanarFunction& f, const PlanarFunction& g, const QuadConfig& cfg,
                 const Breakpoints& breaks) {
  const double xlo = std::max(f.support.x_lo, g.support.x_lo);
  const double xhi = std::min(f.support.x_hi, g.support.x_hi);
  const double ylo = std::max(f.support.y_lo, g.support.y_lo);
  const double yhi = std::min(f.support.y_hi, g.support.y_hi);
  if (!(xlo < xhi) || !(ylo < yhi)) return Complex(0.0, 0.0);
  auto fe = f.eval;
  auto ge = g.eval;
  auto integrand = [&](double x, double y) { return fe(x, y) * std::conj(ge(x, y)); };
  return integrate_2d(integrand, Rectangle{xlo, xhi, ylo, yhi}, cfg, breaks).value;
}

double l2_norm_sq(const PlanarFunction& f, const QuadConfig& cfg, const Breakpoints& breaks) {
  return l2_inner(f, f, cfg, breaks).real();
}

}  // namespace twsp
