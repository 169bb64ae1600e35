#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "twsp/quadrature.hpp"
#include "twsp/specfun.hpp"

using namespace twsp;
using namespace std::complex_literals;

namespace {
const Rectangle kUnitSquare{0.0, 1.0, 0.0, 1.0};
constexpr double kPi = std::numbers::pi;

Complex expi(double t) { return std::exp(Complex(0.0, t)); }
}  // namespace

TEST_CASE("constant on the unit square") {
  const auto r = integrate_2d([](double, double) { return Complex(1.0); }, kUnitSquare, {});
  CHECK(std::abs(r.value - 1.0) <= 1e-14);
  CHECK(r.converged);
  CHECK(r.subdivisions_used == 0);
}

TEST_CASE("separable oscillatory exponential on the unit square") {
  // e^{pi i (s - r)} integrates to (2i/pi)(-2i/pi) = 4/pi^2.
  const auto r =
      integrate_2d([](double u, double v) { return expi(kPi * (v - u)); }, kUnitSquare, {});
  CHECK(std::abs(r.value - 4.0 / (kPi * kPi)) <= 1e-12);
  CHECK(std::abs(r.value.imag()) <= 1e-13);
}

TEST_CASE("one dimensional basics") {
  const auto one = integrate_1d([](double) { return Complex(1.0); }, {0.0, 1.0}, {});
  CHECK(std::abs(one.value - 1.0) <= 1e-14);

  // int_0^1 (e^{pi i u} - 1)/u du in terms of the trig integrals.
  const auto osc = integrate_1d(
      [](double u) {
        if (u == 0.0) return Complex(0.0, kPi);
        return (expi(kPi * u) - 1.0) / u;
      },
      {0.0, 1.0}, {});
  const Complex expected(ci(kPi) - constants().euler_gamma - std::log(kPi), si(kPi));
  CHECK(std::abs(osc.value - expected) <= 1e-12);

  const auto whole = integrate_1d([](double u) { return expi(2.0 * kPi * u); }, {0.0, 1.0}, {});
  CHECK(std::abs(whole.value) <= 1e-13);
}

TEST_CASE("linearity for random polynomials") {
  std::mt19937_64 rng(7u);
  auto coeff = [&rng]() {
    return Complex(static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5,
                   static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
  };
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Complex> cf, cg;
    for (int i = 0; i < 9; ++i) {
      cf.push_back(coeff());
      cg.push_back(coeff());
    }
    auto poly = [](const std::vector<Complex>& c, double x, double y) {
      Complex s = 0.0;
      int idx = 0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) s += c[idx++] * std::pow(x, j) * std::pow(y, k);
      return s;
    };
    const Complex a = coeff(), b = coeff();
    const Rectangle rect{-1.0, 2.0, 0.5, 1.5};
    const auto fa = integrate_2d([&](double x, double y) { return poly(cf, x, y); }, rect, {});
    const auto fb = integrate_2d([&](double x, double y) { return poly(cg, x, y); }, rect, {});
    const auto combo = integrate_2d(
        [&](double x, double y) { return a * poly(cf, x, y) + b * poly(cg, x, y); }, rect, {});
    CHECK(std::abs(combo.value - (a * fa.value + b * fb.value)) <= 1e-12);
  }
}

TEST_CASE("gauss legendre rule is exact through degree 2m-1 per axis") {
  for (int m : {2, 4, 8, 16}) {
    QuadConfig cfg;
    cfg.node_count = m;
    cfg.tolerance = 1e3;  // one-cell evaluation, no refinement
    const int deg = 2 * m - 1;
    const auto r = integrate_2d(
        [&](double x, double y) { return Complex(std::pow(x, deg) * std::pow(y, deg - 1)); },
        kUnitSquare, cfg);
    const double exact = 1.0 / (deg + 1) / deg;
    CHECK(std::abs(r.value.real() - exact) <= 1e-13 * std::max(1.0, std::abs(exact)));
    CHECK(std::abs(r.value.imag()) == 0.0);
  }

  const auto& [nodes, weights] = gauss_legendre(16);
  double wsum = 0.0, even = 0.0, odd = 0.0;
  for (int i = 0; i < 16; ++i) {
    wsum += weights[i];
    even += weights[i] * std::pow(nodes[i], 30);
    odd += weights[i] * std::pow(nodes[i], 31);
  }
  CHECK(std::abs(wsum - 2.0) <= 1e-14);
  CHECK(std::abs(even - 2.0 / 31.0) <= 1e-14);
  CHECK(std::abs(odd) <= 1e-15);
}

TEST_CASE("conjugation symmetry is bitwise") {
  auto f = [](double u, double v) { return expi(kPi * (2.3 * v - 1.7 * u)) * (u + 0.25 * v); };
  auto fc = [&](double u, double v) { return std::conj(f(u, v)); };
  QuadConfig cfg;
  cfg.node_count = 4;
  cfg.tolerance = 1e-12;
  const Rectangle rect{0.0, 2.0, 0.0, 1.0};
  const Breakpoints breaks{{0.7}, {}};
  const auto a = integrate_2d(f, rect, cfg, breaks);
  const auto b = integrate_2d(fc, rect, cfg, breaks);
  CHECK(b.value.real() == a.value.real());
  CHECK(b.value.imag() == -a.value.imag());
  CHECK(b.subdivisions_used == a.subdivisions_used);
}

TEST_CASE("halving the tolerance never worsens a fixed oscillatory set") {
  auto f = [](double u, double v) { return expi(kPi * (2.7 * v - 1.3 * u)); };
  const Complex exact = ((expi(2.7 * kPi) - 1.0) / Complex(0.0, 2.7 * kPi)) *
                        ((expi(-1.3 * kPi) - 1.0) / Complex(0.0, -1.3 * kPi));
  QuadConfig cfg;
  cfg.node_count = 4;
  double prev = std::numeric_limits<double>::infinity();
  for (double tol : {1e-2, 5e-3, 2.5e-3, 1e-4, 1e-6, 1e-8}) {
    cfg.tolerance = tol;
    const auto r = integrate_2d(f, kUnitSquare, cfg);
    const double err = std::abs(r.value - exact);
    CHECK(err <= prev + 1e-15);
    prev = err;
    if (r.converged) CHECK(r.error_estimate <= tol);
  }
}

TEST_CASE("breakpoints restore single-cell convergence on kinked integrands") {
  auto kink = [](double u, double) { return Complex(std::abs(u - 1.0 / 3.0)); };
  QuadConfig cfg;
  const double exact = 0.5 * (1.0 / 9.0 + 4.0 / 9.0);

  const auto with = integrate_2d(kink, kUnitSquare, cfg, Breakpoints{{1.0 / 3.0}, {}});
  CHECK(std::abs(with.value.real() - exact) <= 1e-13);
  CHECK(with.subdivisions_used == 0);

  const auto without = integrate_2d(kink, kUnitSquare, cfg);
  CHECK(std::abs(without.value.real() - exact) <= 1e-6);
  CHECK(without.subdivisions_used > 0);
}

TEST_CASE("running out of subdivisions is flagged") {
  QuadConfig cfg;
  cfg.node_count = 4;
  cfg.tolerance = 1e-14;
  cfg.max_subdivisions = 1;
  const auto r =
      integrate_2d([](double u, double v) { return expi(kPi * (6.1 * v - 7.3 * u)); }, kUnitSquare,
                   cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.subdivisions_used == 1);
}

TEST_CASE("non-finite samples raise") {
  CHECK_THROWS_AS(
      integrate_2d([](double, double) { return Complex(std::nan("")); }, kUnitSquare, {}),
      std::runtime_error);
  CHECK_THROWS_AS(integrate_1d([](double) { return Complex(1.0 / 0.0); }, {0.0, 1.0}, {}),
                  std::runtime_error);
}

TEST_CASE("planar function handle carries its support") {
  PlanarFunction f{[](double x, double y) { return Complex(x * y); }, kUnitSquare};
  const auto r = integrate_2d(f, f.support, {});
  CHECK(std::abs(r.value - 0.25) <= 1e-14);
  CHECK(f.support.area() == 1.0);
}

TEST_CASE("config validation") {
  QuadConfig bad;
  bad.node_count = 1;
  CHECK_THROWS_AS(integrate_2d([](double, double) { return Complex(0.0); }, kUnitSquare, bad),
                  std::domain_error);
  QuadConfig bad2;
  bad2.tolerance = 0.0;
  CHECK_THROWS_AS(integrate_1d([](double) { return Complex(0.0); }, {0.0, 1.0}, bad2),
                  std::domain_error);
}
