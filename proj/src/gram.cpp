#include "twsp/gram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "twsp/splines.hpp"

namespace twsp {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kPi4 = kPi * kPi * kPi * kPi;

Complex expi(double t) { return Complex(std::cos(t), std::sin(t)); }

double pair_sign(LatticePoint p, LatticePoint q) {
  const long par = static_cast<long>(q.k) * p.l - static_cast<long>(q.l) * p.k;
  return (par % 2 != 0) ? -1.0 : 1.0;
}

// Overlap integral for shift d = p - q, without the sign factor:
//   iint e^{pi i (x dl - y dk)} f(x - dk, y - dl) conj(f(x,y)) dx dy.
Complex gram_base(const PlanarFunction& f, int dk, int dl, const QuadConfig& cfg,
                  const Breakpoints& seams) {
  const Rectangle s = f.support;
  const double x_lo = std::max(s.x_lo, s.x_lo + dk);
  const double x_hi = std::min(s.x_hi, s.x_hi + dk);
  const double y_lo = std::max(s.y_lo, s.y_lo + dl);
  const double y_hi = std::min(s.y_hi, s.y_hi + dl);
  if (!(x_lo < x_hi) || !(y_lo < y_hi)) return Complex(0.0, 0.0);

  Breakpoints merged;
  for (double b : seams.x) {
    merged.x.push_back(b);
    merged.x.push_back(b + dk);
  }
  for (double b : seams.y) {
    merged.y.push_back(b);
    merged.y.push_back(b + dl);
  }

  auto fe = f.eval;
  const double ddk = dk;
  const double ddl = dl;
  auto integrand = [fe, ddk, ddl](double x, double y) {
    return expi(kPi * (x * ddl - y * ddk)) * fe(x - ddk, y - ddl) * std::conj(fe(x, y));
  };
  return integrate_2d(integrand, Rectangle{x_lo, x_hi, y_lo, y_hi}, cfg, merged).value;
}

}  // namespace

double CoefficientSeq::norm_sq() const {
  double total = 0.0;
  for (const auto& [key, v] : entries) total += std::norm(v);
  return total;
}

Complex twisted_inner(const PlanarFunction& f, LatticePoint p, LatticePoint q,
                      const QuadConfig& cfg, const Breakpoints& seams) {
  return pair_sign(p, q) * gram_base(f, p.k - q.k, p.l - q.l, cfg, seams);
}

GramianReport gramian_phi2_integrals(const QuadConfig& cfg) {
  QuadConfig tight = cfg;
  tight.tolerance = std::min(cfg.tolerance, 1e-11);

  PlanarFunction f;
  f.eval = [](double x, double y) { return phi2_closed(x, y); };
  f.support = Rectangle{0.0, 2.0, 0.0, 2.0};
  const Breakpoints seams = spline_seams(2);

  GramianReport rep;
  rep.order = 2;
  rep.i1 = kPi4 * twisted_inner(f, LatticePoint{-1, -1}, LatticePoint{0, 0}, tight, seams);
  rep.i3 = kPi4 * twisted_inner(f, LatticePoint{-1, 0}, LatticePoint{0, 0}, tight, seams);
  rep.i5 = kPi4 * twisted_inner(f, LatticePoint{0, -1}, LatticePoint{0, 0}, tight, seams);
  rep.i7 = kPi4 * twisted_inner(f, LatticePoint{-1, 1}, LatticePoint{0, 0}, tight, seams);
  rep.i9 = kPi4 * twisted_inner(f, LatticePoint{0, 0}, LatticePoint{0, 0}, tight, seams);

  const double cross = 2.0 * std::abs(rep.i1) + 4.0 * std::abs(rep.i3) + 2.0 * std::abs(rep.i7);
  rep.lower_bound = (rep.i9.real() - cross) / kPi4;
  rep.upper_bound = (rep.i9.real() + cross) / kPi4;
  return rep;
}

std::string serialize_gramian(const GramianReport& rep) {
  const std::pair<const char*, double> rows[] = {
      {"i1_re", rep.i1.real()}, {"i1_im", rep.i1.imag()}, {"i3_re", rep.i3.real()},
      {"i3_im", rep.i3.imag()}, {"i5_re", rep.i5.real()}, {"i5_im", rep.i5.imag()},
      {"i7_re", rep.i7.real()}, {"i7_im", rep.i7.imag()}, {"i9_re", rep.i9.real()},
      {"i9_im", rep.i9.imag()}, {"lower", rep.lower_bound}, {"upper", rep.upper_bound},
  };
  std::string out;
  char line[64];
  for (const auto& [key, value] : rows) {
    std::snprintf(line, sizeof line, "%s %.11e\n", key, value);
    out += line;
  }
  return out;
}

double quadratic_form(const PlanarFunction& f, const CoefficientSeq& c, const QuadConfig& cfg,
                      const Breakpoints& seams) {
  const double width_x = f.support.x_hi - f.support.x_lo;
  const double width_y = f.support.y_hi - f.support.y_lo;
  std::map<std::pair<int, int>, Complex> base;
  Complex total(0.0, 0.0);
  for (const auto& [pk_pair, cp] : c.entries) {
    const LatticePoint p{pk_pair.first, pk_pair.second};
    for (const auto& [qk_pair, cq] : c.entries) {
      const LatticePoint q{qk_pair.first, qk_pair.second};
      const int dk = p.k - q.k;
      const int dl = p.l - q.l;
      if (std::abs(dk) >= width_x || std::abs(dl) >= width_y) continue;
      auto it = base.find({dk, dl});
      if (it == base.end()) {
        it = base.emplace(std::make_pair(dk, dl), gram_base(f, dk, dl, cfg, seams)).first;
      }
      total += cp * std::conj(cq) * pair_sign(p, q) * it->second;
    }
  }
  return total.real();
}

std::array<Complex, 9> s_family(const CoefficientSeq& c, const GramianReport& rep) {
  const struct {
    int dk, dl;
    Complex m;
  } classes[9] = {
      {-1, -1, rep.i1 / kPi4},           {1, 1, std::conj(rep.i1) / kPi4},
      {-1, 0, rep.i3 / kPi4},            {1, 0, std::conj(rep.i3) / kPi4},
      {0, -1, rep.i5 / kPi4},            {0, 1, std::conj(rep.i5) / kPi4},
      {-1, 1, rep.i7 / kPi4},            {1, -1, std::conj(rep.i7) / kPi4},
      {0, 0, rep.i9 / kPi4},
  };
  std::array<Complex, 9> out{};
  for (int j = 0; j < 9; ++j) {
    Complex sum(0.0, 0.0);
    for (const auto& [q_pair, cq] : c.entries) {
      const LatticePoint q{q_pair.first, q_pair.second};
      const LatticePoint p{q.k + classes[j].dk, q.l + classes[j].dl};
      const Complex cp = c.at(p);
      if (cp == Complex(0.0, 0.0)) continue;
      sum += cp * std::conj(cq) * pair_sign(p, q);
    }
    out[j] = sum * classes[j].m;
  }
  return out;
}

double bessel_upper_bound(int n, int trials, const QuadConfig& cfg, unsigned long long seed) {
  if (n < 2) throw std::domain_error("bessel_upper_bound: order must be >= 2");
  if (trials < 1) return 0.0;

  const TwistedSpline spline(n);
  const PlanarFunction f = spline.as_planar(cfg);
  const Breakpoints seams = spline_seams(n);
  const double width = static_cast<double>(n);

  std::map<std::pair<int, int>, Complex> base;
  auto base_at = [&](int dk, int dl) -> Complex {
    if (std::abs(dk) >= width || std::abs(dl) >= width) return Complex(0.0, 0.0);
    auto it = base.find({dk, dl});
    if (it == base.end()) {
      it = base.emplace(std::make_pair(dk, dl), gram_base(f, dk, dl, cfg, seams)).first;
    }
    return it->second;
  };

  std::mt19937_64 rng(seed);
  auto unif = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    CoefficientSeq c;
    for (int k = -1; k <= 1; ++k) {
      for (int l = -1; l <= 1; ++l) {
        c.set(LatticePoint{k, l}, Complex(2.0 * unif() - 1.0, 2.0 * unif() - 1.0));
      }
    }
    Complex qf(0.0, 0.0);
    for (const auto& [p_pair, cp] : c.entries) {
      const LatticePoint p{p_pair.first, p_pair.second};
      for (const auto& [q_pair, cq] : c.entries) {
        const LatticePoint q{q_pair.first, q_pair.second};
        qf += cp * std::conj(cq) * pair_sign(p, q) * base_at(p.k - q.k, p.l - q.l);
      }
    }
    best = std::max(best, qf.real() / c.norm_sq());
  }
  return best;
}

}  // namespace twsp
