#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <memory>
#include <random>
#include <vector>

#include "doctest.h"
#include "twsp/quadrature.hpp"
#include "twsp/splines.hpp"
#include "twsp/twistops.hpp"

using twsp::Breakpoints;
using twsp::Complex;
using twsp::LatticePoint;
using twsp::PlanarFunction;
using twsp::QuadConfig;
using twsp::Rectangle;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

Complex expi(double t) { return Complex(std::cos(t), std::sin(t)); }

// Smooth complex bump supported on [0,1]^2, vanishing on the boundary.
PlanarFunction smooth_bump() {
  PlanarFunction f;
  f.eval = [](double x, double y) -> Complex {
    if (x <= 0.0 || x >= 1.0 || y <= 0.0 || y >= 1.0) return Complex(0.0, 0.0);
    const double amp = x * (1.0 - x) * y * (1.0 - y);
    return amp * expi(kPi * (0.7 * x - 0.3 * y));
  };
  f.support = Rectangle{0.0, 1.0, 0.0, 1.0};
  return f;
}

// Smooth complex window on [-1,3]^2, vanishing on the boundary.
PlanarFunction wide_window() {
  PlanarFunction g;
  g.eval = [](double x, double y) -> Complex {
    if (x <= -1.0 || x >= 3.0 || y <= -1.0 || y >= 3.0) return Complex(0.0, 0.0);
    const double amp = (x + 1.0) * (3.0 - x) * (y + 1.0) * (3.0 - y) / 16.0;
    return amp * expi(kPi * 0.4 * (x - y));
  };
  g.support = Rectangle{-1.0, 3.0, -1.0, 3.0};
  return g;
}

PlanarFunction planar_phi1() { return twsp::TwistedSpline(1).as_planar(); }

}  // namespace

TEST_CASE("twisted translation matches its defining formula") {
  const PlanarFunction f = smooth_bump();

  const PlanarFunction id = twsp::twisted_translate(f, LatticePoint{0, 0});
  for (double x : {0.2, 0.5, 0.9}) {
    for (double y : {0.1, 0.6}) {
      CHECK(std::abs(id.eval(x, y) - f.eval(x, y)) < 1e-15);
    }
  }

  // T^t_{(1,0)} phi1 at (1.5, 0.5) = e^{-pi i / 2} = -i.
  const PlanarFunction t10 = twsp::twisted_translate(planar_phi1(), LatticePoint{1, 0});
  const Complex v = t10.eval(1.5, 0.5);
  CHECK(std::abs(v - Complex(0.0, -1.0)) < 1e-14);
  CHECK(t10.support.x_lo == doctest::Approx(1.0));
  CHECK(t10.support.x_hi == doctest::Approx(2.0));
  CHECK(t10.eval(0.5, 0.5) == Complex(0.0, 0.0));

  std::mt19937_64 rng(20260822u);
  auto unif = [&rng](double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  };
  for (int trial = 0; trial < 8; ++trial) {
    const int k = static_cast<int>(rng() % 7) - 3;
    const int l = static_cast<int>(rng() % 7) - 3;
    const PlanarFunction tf = twsp::twisted_translate(f, LatticePoint{k, l});
    for (int s = 0; s < 6; ++s) {
      const double x = unif(k - 0.5, k + 1.5);
      const double y = unif(l - 0.5, l + 1.5);
      const Complex want = expi(kPi * (l * x - k * y)) * f.eval(x - k, y - l);
      CHECK(std::abs(tf.eval(x, y) - want) < 1e-14);
    }
  }
}

TEST_CASE("twisted translation preserves the L2 norm") {
  const PlanarFunction f = smooth_bump();
  const QuadConfig cfg{16, 1e-12, 12};
  const double base = twsp::l2_norm_sq(f, cfg);
  CHECK(base > 0.0);
  for (LatticePoint p : {LatticePoint{1, 0}, LatticePoint{-2, 3}, LatticePoint{4, -1}}) {
    const double shifted = twsp::l2_norm_sq(twsp::twisted_translate(f, p), cfg);
    CHECK(std::abs(shifted - base) < 1e-10);
  }
}

TEST_CASE("composition of twisted translations") {
  const auto c1 = twsp::compose_translations(LatticePoint{1, 0}, LatticePoint{0, 1});
  CHECK(c1.phase == Complex(-1.0, 0.0));
  CHECK(c1.point.k == 1);
  CHECK(c1.point.l == 1);

  const auto c2 = twsp::compose_translations(LatticePoint{3, -2}, LatticePoint{-3, 2});
  CHECK(c2.phase == Complex(1.0, 0.0));
  CHECK(c2.point.k == 0);
  CHECK(c2.point.l == 0);

  const auto c3 = twsp::compose_translations(LatticePoint{2, 3}, LatticePoint{4, 6});
  CHECK(c3.phase == Complex(1.0, 0.0));
  CHECK(c3.point.k == 6);
  CHECK(c3.point.l == 9);

  // Pointwise: T_{p1} T_{p2} f = phase * T_{p1+p2} f.
  const PlanarFunction f = smooth_bump();
  std::mt19937_64 rng(977u);
  auto unif = [&rng](double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  };
  const std::vector<std::pair<LatticePoint, LatticePoint>> pairs = {
      {{1, 0}, {0, 1}}, {{2, 3}, {4, 6}}, {{-1, 2}, {3, -5}}, {{0, 0}, {7, -4}}};
  for (const auto& [p1, p2] : pairs) {
    const auto comp = twsp::compose_translations(p1, p2);
    const PlanarFunction lhs = twsp::twisted_translate(twsp::twisted_translate(f, p2), p1);
    const PlanarFunction rhs = twsp::twisted_translate(f, comp.point);
    for (int s = 0; s < 10; ++s) {
      const double x = unif(comp.point.k - 0.5, comp.point.k + 1.5);
      const double y = unif(comp.point.l - 0.5, comp.point.l + 1.5);
      CHECK(std::abs(lhs.eval(x, y) - comp.phase * rhs.eval(x, y)) < 1e-13);
    }
  }
}

TEST_CASE("adjoint identity for twisted translation") {
  const PlanarFunction f = smooth_bump();
  const PlanarFunction g = wide_window();
  const QuadConfig cfg{16, 1e-11, 12};
  for (LatticePoint p : {LatticePoint{1, 0}, LatticePoint{0, 1}, LatticePoint{1, 1},
                         LatticePoint{-1, 2}}) {
    const Complex lhs = twsp::l2_inner(twsp::twisted_translate(f, p), g, cfg);
    const Complex rhs = twsp::l2_inner(f, twsp::twisted_translate(g, LatticePoint{-p.k, -p.l}), cfg);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("lambda-twisted translation") {
  const PlanarFunction f = smooth_bump();

  // lambda = 1 at a lattice point reduces to the plain twisted translation.
  const PlanarFunction a = twsp::lambda_twisted_translate(f, 1.0, LatticePoint{2, -1});
  const PlanarFunction b = twsp::twisted_translate(f, LatticePoint{2, -1});
  for (double x : {1.8, 2.3, 2.9}) {
    for (double y : {-0.9, -0.4, -0.1}) {
      CHECK(std::abs(a.eval(x, y) - b.eval(x, y)) < 1e-15);
    }
  }

  // Non-integer shift with lambda = 4: check the formula and unitarity.
  const double lam = 4.0;
  const double sx = 0.5;
  const double sy = 0.25;
  const PlanarFunction c = twsp::lambda_twisted_translate(f, lam, sx, sy);
  const double x0 = 0.9;
  const double y0 = 0.7;
  const Complex want = expi(kPi * lam * (sy * x0 - sx * y0)) * f.eval(x0 - sx, y0 - sy);
  CHECK(std::abs(c.eval(x0, y0) - want) < 1e-15);
  CHECK(c.support.x_lo == doctest::Approx(0.5));
  CHECK(c.support.y_hi == doctest::Approx(1.25));

  const QuadConfig cfg{16, 1e-12, 12};
  CHECK(std::abs(twsp::l2_norm_sq(c, cfg) - twsp::l2_norm_sq(f, cfg)) < 1e-10);

  CHECK_THROWS_AS(twsp::lambda_twisted_translate(f, 0.0, LatticePoint{1, 0}), std::domain_error);
  CHECK_THROWS_AS(twsp::lambda_twisted_translate(f, std::nan(""), 0.5, 0.5), std::domain_error);
}

TEST_CASE("dilation") {
  const PlanarFunction f = smooth_bump();

  const PlanarFunction d2 = twsp::dilate(f, 2.0);
  CHECK(d2.support.x_hi == doctest::Approx(0.5));
  CHECK(std::abs(d2.eval(0.25, 0.25) - 2.0 * f.eval(0.5, 0.5)) < 1e-15);
  CHECK(d2.eval(0.75, 0.25) == Complex(0.0, 0.0));

  const QuadConfig cfg{16, 1e-12, 12};
  const double base = twsp::l2_norm_sq(f, cfg);
  for (double s : {2.0, 0.7, 5.0}) {
    CHECK(std::abs(twsp::l2_norm_sq(twsp::dilate(f, s), cfg) - base) < 1e-10);
  }

  // D_2 D_{1/2} is the identity.
  const PlanarFunction round_trip = twsp::dilate(twsp::dilate(f, 0.5), 2.0);
  for (double x : {0.1, 0.4, 0.8}) {
    for (double y : {0.3, 0.9}) {
      CHECK(std::abs(round_trip.eval(x, y) - f.eval(x, y)) < 1e-15);
    }
  }

  CHECK_THROWS_AS(twsp::dilate(f, 0.0), std::domain_error);
  CHECK_THROWS_AS(twsp::dilate(f, -1.0), std::domain_error);
  CHECK_THROWS_AS(twsp::dilate(f, std::nan("")), std::domain_error);
}

TEST_CASE("twisted self-convolution of the indicator reproduces the order-two spline") {
  const QuadConfig cfg{16, 1e-9, 12};
  const PlanarFunction conv = twsp::twisted_convolve(planar_phi1(), planar_phi1(), cfg);

  CHECK(conv.support.x_lo == doctest::Approx(0.0));
  CHECK(conv.support.x_hi == doctest::Approx(2.0));
  CHECK(conv.support.y_hi == doctest::Approx(2.0));

  const Complex center = conv.eval(1.0, 1.0);
  CHECK(std::abs(center - Complex(4.0 / (kPi * kPi), 0.0)) < 1e-10);

  double worst = 0.0;
  for (int i = 0; i <= 16; ++i) {
    for (int j = 0; j <= 16; ++j) {
      const double x = 2.0 * i / 16.0;
      const double y = 2.0 * j / 16.0;
      const double d = std::abs(conv.eval(x, y) - twsp::phi2_closed(x, y));
      worst = std::max(worst, d);
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("twisted convolution is noncommutative") {
  const PlanarFunction p1 = planar_phi1();
  const PlanarFunction t10 = twsp::twisted_translate(p1, LatticePoint{1, 0});
  const QuadConfig cfg{16, 1e-10, 12};

  const Complex ab = twsp::twisted_convolve(p1, t10, cfg).eval(1.5, 0.5);
  const Complex ba = twsp::twisted_convolve(t10, p1, cfg).eval(1.5, 0.5);

  // Reversed order evaluates to -i * |int_0^{1/2} e^{pi i u/2} du|^2 = -(8-4*sqrt(2))/pi^2 i.
  const Complex ba_closed(0.0, -(8.0 - 4.0 * std::sqrt(2.0)) / (kPi * kPi));
  CHECK(std::abs(ba - ba_closed) < 1e-10);
  CHECK(ab.real() > 0.1);
  CHECK(std::abs(ab - ba) > 0.1);
}

TEST_CASE("triple twisted self-convolution") {
  const QuadConfig inner{16, 1e-9, 12};
  const QuadConfig outer{16, 1e-8, 12};
  const PlanarFunction p1 = planar_phi1();
  const PlanarFunction two = twsp::twisted_convolve(p1, p1, inner);
  const PlanarFunction three = twsp::twisted_convolve(two, p1, outer);

  CHECK(three.support.x_lo == doctest::Approx(0.0));
  CHECK(three.support.x_hi == doctest::Approx(3.0));
  CHECK(three.support.y_hi == doctest::Approx(3.0));
  CHECK(three.eval(3.5, 1.0) == Complex(0.0, 0.0));
  CHECK(three.eval(-0.2, 1.0) == Complex(0.0, 0.0));

  for (auto [x, y] : {std::pair<double, double>{1.5, 1.5}, {1.2, 0.8}}) {
    const Complex direct = three.eval(x, y);
    const Complex ref = twsp::phi_n(3, x, y);
    CHECK(std::abs(direct - ref) < 1e-6);
  }
}

TEST_CASE("memoized wrapper caches dyadic grid points") {
  auto counter = std::make_shared<int>(0);
  PlanarFunction f;
  f.eval = [counter](double x, double y) -> Complex {
    ++*counter;
    return Complex(x + 2.0 * y, 0.0);
  };
  f.support = Rectangle{0.0, 1.0, 0.0, 1.0};
  const PlanarFunction m = twsp::memoized(f);

  const Complex v1 = m.eval(0.5, 0.25);
  const Complex v2 = m.eval(0.5, 0.25);
  CHECK(v1 == v2);
  CHECK(*counter == 1);

  // 0.1 is not representable on the dyadic grid, so it passes through.
  m.eval(0.1, 0.1);
  m.eval(0.1, 0.1);
  CHECK(*counter == 3);
  CHECK(std::abs(m.eval(0.75, 0.75) - Complex(2.25, 0.0)) < 1e-15);
}

TEST_CASE("L2 helper integrals") {
  const QuadConfig cfg{16, 1e-11, 12};
  const PlanarFunction p1 = planar_phi1();
  CHECK(std::abs(twsp::l2_norm_sq(p1, cfg) - 1.0) < 1e-12);

  const PlanarFunction far = twsp::twisted_translate(p1, LatticePoint{3, 0});
  CHECK(twsp::l2_inner(p1, far, cfg) == Complex(0.0, 0.0));

  // Norm of the order-two spline; kinks sit on the half-way lines.
  const PlanarFunction p2 = twsp::TwistedSpline(2).as_planar();
  Breakpoints br;
  br.x = {1.0};
  br.y = {1.0};
  CHECK(std::abs(twsp::l2_norm_sq(p2, cfg, br) - 0.163482635874) < 1e-8);
}
