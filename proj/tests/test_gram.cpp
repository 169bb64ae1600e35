#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "doctest.h"
#include "twsp/gram.hpp"
#include "twsp/quadrature.hpp"
#include "twsp/splines.hpp"
#include "twsp/twistops.hpp"

using twsp::Breakpoints;
using twsp::CoefficientSeq;
using twsp::Complex;
using twsp::GramianReport;
using twsp::LatticePoint;
using twsp::PlanarFunction;
using twsp::QuadConfig;
using twsp::Rectangle;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kPi4 = kPi * kPi * kPi * kPi;

PlanarFunction planar_phi2() {
  PlanarFunction f;
  f.eval = [](double x, double y) { return twsp::phi2_closed(x, y); };
  f.support = Rectangle{0.0, 2.0, 0.0, 2.0};
  return f;
}

CoefficientSeq random_seq(std::mt19937_64& rng, int radius) {
  auto unif = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  CoefficientSeq c;
  for (int k = -radius; k <= radius; ++k) {
    for (int l = -radius; l <= radius; ++l) {
      c.set(LatticePoint{k, l}, Complex(2.0 * unif() - 1.0, 2.0 * unif() - 1.0));
    }
  }
  return c;
}

}  // namespace

TEST_CASE("order-one translate system is orthonormal") {
  const PlanarFunction f = twsp::TwistedSpline(1).as_planar();
  const QuadConfig cfg{16, 1e-12, 12};
  for (int pk = -2; pk <= 2; ++pk) {
    for (int pl = -2; pl <= 2; ++pl) {
      for (int qk = -2; qk <= 2; ++qk) {
        for (int ql = -2; ql <= 2; ++ql) {
          const Complex v =
              twsp::twisted_inner(f, LatticePoint{pk, pl}, LatticePoint{qk, ql}, cfg);
          const double want = (pk == qk && pl == ql) ? 1.0 : 0.0;
          CHECK(std::abs(v - Complex(want, 0.0)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("order-two inner products: pruning, symmetry, oracle") {
  const PlanarFunction f = planar_phi2();
  const QuadConfig cfg{16, 1e-11, 12};
  const Breakpoints seams = twsp::spline_seams(2);

  CHECK(twsp::twisted_inner(f, LatticePoint{2, 0}, LatticePoint{0, 0}, cfg, seams) ==
        Complex(0.0, 0.0));
  CHECK(twsp::twisted_inner(f, LatticePoint{1, 0}, LatticePoint{1, 2}, cfg, seams) ==
        Complex(0.0, 0.0));
  CHECK(twsp::twisted_inner(f, LatticePoint{-3, 1}, LatticePoint{0, 0}, cfg, seams) ==
        Complex(0.0, 0.0));

  const LatticePoint pairs[][2] = {
      {{1, 0}, {0, 0}}, {{0, 1}, {1, 0}}, {{-1, 1}, {0, 0}}, {{1, 1}, {0, 1}}};
  for (const auto& pq : pairs) {
    const Complex ab = twsp::twisted_inner(f, pq[0], pq[1], cfg, seams);
    const Complex ba = twsp::twisted_inner(f, pq[1], pq[0], cfg, seams);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-10);
  }

  // Against the raw definition through explicit twisted translates.
  for (const auto& pq : {std::pair<LatticePoint, LatticePoint>{{1, 0}, {0, 1}},
                         {{-1, 1}, {0, 0}}}) {
    const Complex reduced = twsp::twisted_inner(f, pq.first, pq.second, cfg, seams);
    const Complex direct = twsp::l2_inner(twsp::twisted_translate(f, pq.first),
                                          twsp::twisted_translate(f, pq.second), cfg);
    CHECK(std::abs(reduced - direct) < 1e-9);
  }
}

TEST_CASE("gram integrals of the order-two spline") {
  const GramianReport rep = twsp::gramian_phi2_integrals();
  CHECK(rep.order == 2);
  CHECK(rep.tolerance == 1e-3);

  CHECK(std::abs(rep.i1.real() - 0.9065016190247255) < 1e-8);
  CHECK(std::abs(rep.i1.imag()) < 1e-8);
  CHECK(std::abs(rep.i3 - Complex(-1.9787709567445984, 0.5679100838025659)) < 1e-8);
  CHECK(std::abs(rep.i5 - std::conj(rep.i3)) < 1e-9);
  CHECK(std::abs(rep.i7 - Complex(0.9066159904438269, -0.3901305267822009)) < 1e-8);
  CHECK(std::abs(rep.i9.real() - 15.924694960303977) < 1e-7);
  CHECK(std::abs(rep.i9.imag()) < 1e-9);
  CHECK(std::abs(std::abs(rep.i5) - std::abs(rep.i3)) < 1e-9);

  CHECK(std::abs(rep.lower_bound * kPi4 - 3.903090463983858) < 1e-6);
  CHECK(std::abs(rep.upper_bound * kPi4 - 27.946299456624097) < 1e-6);
  CHECK(rep.lower_bound > 0.0);  // certifies the frame property at order two
  CHECK(rep.upper_bound > rep.lower_bound);
}

TEST_CASE("gram report serialization") {
  const GramianReport rep = twsp::gramian_phi2_integrals();
  const std::string text = twsp::serialize_gramian(rep);
  std::istringstream in(text);
  std::string key;
  double value = 0.0;
  const char* expected[] = {"i1_re", "i1_im", "i3_re", "i3_im", "i5_re", "i5_im",
                            "i7_re", "i7_im", "i9_re", "i9_im", "lower", "upper"};
  int row = 0;
  while (in >> key >> value) {
    REQUIRE(row < 12);
    CHECK(key == expected[row]);
    ++row;
  }
  CHECK(row == 12);
  // Spot value round-trip.
  std::istringstream again(text);
  again >> key >> value;
  CHECK(key == std::string("i1_re"));
  CHECK(value == doctest::Approx(rep.i1.real()).epsilon(1e-10));
}

TEST_CASE("quadratic form basics") {
  const QuadConfig cfg{16, 1e-11, 12};
  const Breakpoints seams = twsp::spline_seams(2);
  const PlanarFunction f2 = planar_phi2();
  const GramianReport rep = twsp::gramian_phi2_integrals();

  CoefficientSeq delta;
  delta.set(LatticePoint{0, 0}, Complex(1.0, 0.0));
  CHECK(std::abs(twsp::quadratic_form(f2, delta, cfg, seams) - rep.i9.real() / kPi4) < 1e-9);

  CoefficientSeq empty;
  CHECK(twsp::quadratic_form(f2, empty, cfg, seams) == 0.0);

  // Orthonormal generator: the form collapses to the coefficient norm.
  const PlanarFunction f1 = twsp::TwistedSpline(1).as_planar();
  std::mt19937_64 rng(31337u);
  for (int t = 0; t < 5; ++t) {
    const CoefficientSeq c = random_seq(rng, 1);
    CHECK(std::abs(twsp::quadratic_form(f1, c, cfg) - c.norm_sq()) < 1e-12);
  }
}

TEST_CASE("randomized certification stays in the frame window") {
  const QuadConfig cfg{16, 1e-10, 12};
  const Breakpoints seams = twsp::spline_seams(2);
  const PlanarFunction f2 = planar_phi2();
  const GramianReport rep = twsp::gramian_phi2_integrals();

  std::mt19937_64 rng(rep.seed);
  for (int t = 0; t < 20; ++t) {
    CoefficientSeq c = random_seq(rng, 1);
    const double scale = 1.0 / std::sqrt(c.norm_sq());
    for (auto& [key, v] : c.entries) v *= scale;
    const double value = twsp::quadratic_form(f2, c, cfg, seams);
    CHECK(value >= 0.0);
    CHECK(value >= rep.lower_bound - 1e-9);
    CHECK(value <= rep.upper_bound + 1e-9);
  }
}

TEST_CASE("shift-class family") {
  const GramianReport rep = twsp::gramian_phi2_integrals();
  std::mt19937_64 rng(8088u);
  const QuadConfig cfg{16, 1e-10, 12};
  const Breakpoints seams = twsp::spline_seams(2);
  const PlanarFunction f2 = planar_phi2();

  for (int t = 0; t < 3; ++t) {
    const CoefficientSeq c = random_seq(rng, 2);
    const auto s = twsp::s_family(c, rep);
    CHECK(std::abs(s[1] - std::conj(s[0])) < 1e-9);
    CHECK(std::abs(s[3] - std::conj(s[2])) < 1e-9);
    CHECK(std::abs(s[5] - std::conj(s[4])) < 1e-9);
    CHECK(std::abs(s[7] - std::conj(s[6])) < 1e-9);
    CHECK(std::abs(s[8].imag()) < 1e-12);
    CHECK(std::abs(s[8] - rep.i9 / kPi4 * c.norm_sq()) < 1e-9);

    Complex total(0.0, 0.0);
    for (const auto& part : s) total += part;
    CHECK(std::abs(total.imag()) < 1e-9);
    CHECK(std::abs(total.real() - twsp::quadratic_form(f2, c, cfg, seams)) < 1e-8);
  }
}

TEST_CASE("order-three gram entries") {
  const QuadConfig cfg{10, 1e-6, 6};
  const PlanarFunction f3 = twsp::TwistedSpline(3).as_planar(cfg);
  const Breakpoints seams = twsp::spline_seams(3);

  const Complex m00 = twsp::twisted_inner(f3, LatticePoint{0, 0}, LatticePoint{0, 0}, cfg, seams);
  CHECK(std::abs(m00 - Complex(0.011767620748943629, 0.0)) < 5e-6);

  const Complex m10 = twsp::twisted_inner(f3, LatticePoint{1, 0}, LatticePoint{0, 0}, cfg, seams);
  CHECK(std::abs(m10 - Complex(-0.0014947325979507, -0.0000735795866772)) < 5e-6);

  const Complex m11 = twsp::twisted_inner(f3, LatticePoint{1, 1}, LatticePoint{0, 0}, cfg, seams);
  CHECK(std::abs(m11 - Complex(0.000992397637198592, 0.0)) < 5e-6);

  const Complex m22 = twsp::twisted_inner(f3, LatticePoint{2, 2}, LatticePoint{0, 0}, cfg, seams);
  CHECK(std::abs(m22 - Complex(6.286144718988e-06, 0.0)) < 1e-7);

  CHECK(twsp::twisted_inner(f3, LatticePoint{3, 0}, LatticePoint{0, 0}, cfg, seams) ==
        Complex(0.0, 0.0));
}

TEST_CASE("bessel upper bounds") {
  const GramianReport rep = twsp::gramian_phi2_integrals();

  const double b2 = twsp::bessel_upper_bound(2, 10, QuadConfig{16, 1e-9, 12});
  CHECK(b2 > 0.0);
  CHECK(b2 <= rep.upper_bound + 1e-9);

  const double b3 = twsp::bessel_upper_bound(3, 5, QuadConfig{10, 1e-6, 6});
  CHECK(b3 > 0.0);
  CHECK(b3 <= rep.upper_bound);  // the order-two bound survives one induction step
  CHECK(b3 < 0.05);              // and in fact the order-three form is far smaller

  CHECK_THROWS_AS(twsp::bessel_upper_bound(1, 3), std::domain_error);
}
