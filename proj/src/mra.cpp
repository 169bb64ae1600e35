#include "twsp/mra.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "twsp/splines.hpp"

namespace twsp {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kLevelCap = 8;

void check_level(int j) {
  if (j < -kLevelCap || j > kLevelCap)
    throw std::domain_error("mra: level |j| must be <= 8");
}

void check_unit_support(const PlanarFunction& f) {
  const Rectangle& s = f.support;
  if (s.x_lo < -1e-12 || s.x_hi > 1.0 + 1e-12 || s.y_lo < -1e-12 || s.y_hi > 1.0 + 1e-12)
    throw std::domain_error("mra: scaling function support must sit in the unit square");
}

}  // namespace

MRALevel mra_level(int j) {
  check_level(j);
  MRALevel level;
  level.j = j;
  level.dilation = std::ldexp(1.0, -j);
  level.lambda = std::ldexp(1.0, 2 * j);
  level.shift_scale = level.dilation;
  double scale = level.lambda;
  level.phi.eval = [scale](double x, double y) { return scale * phi1(scale * x, scale * y); };
  double w = 1.0 / scale;
  level.phi.support = Rectangle{0.0, w, 0.0, w};
  return level;
}

PlanarFunction basis_fn(int j, int k, int l) {
  check_level(j);
  MRALevel level = mra_level(j);
  PlanarFunction shifted = lambda_twisted_translate(level.phi, level.lambda,
                                                    level.shift_scale * k, level.shift_scale * l);
  return dilate(shifted, level.dilation);
}

Complex inner_Nj(int r, int s, int j) {
  if (r == 0 && s == 0) return {1.0, 0.0};
  if (j >= 0) return {0.0, 0.0};
  double width = std::ldexp(1.0, -j);
  if (std::abs(r) >= width || std::abs(s) >= width) return {0.0, 0.0};
  if (r % 2 == 0 || s % 2 == 0) return {0.0, 0.0};
  double value = std::ldexp(4.0, 2 * j) / (kPi * kPi * std::abs(double(r) * double(s)));
  return {value, 0.0};
}

Complex inner_Nj_quadrature(int r, int s, int j, const QuadConfig& cfg) {
  check_level(j);
  double scale = std::ldexp(1.0, j);
  PlanarFunction nj;
  nj.eval = [scale](double x, double y) { return scale * phi1(scale * x, scale * y); };
  double w = 1.0 / scale;
  nj.support = Rectangle{0.0, w, 0.0, w};
  return l2_inner(twisted_translate(nj, LatticePoint{r, s}), nj, cfg);
}

std::vector<LatticePoint> index_set_a(int j) {
  if (j > -1) throw std::domain_error("index_set_a: needs j <= -1");
  check_level(j);
  int reach = static_cast<int>(std::ldexp(1.0, -j)) - 1;
  std::vector<LatticePoint> out;
  for (int r = -reach; r <= reach; ++r)
    for (int s = -reach; s <= reach; ++s)
      if (r != 0 || s != 0) out.push_back(LatticePoint{r, s});
  return out;
}

std::size_t b1_count(int j) {
  std::size_t n = 0;
  for (const LatticePoint& p : index_set_a(j))
    if (p.k % 2 != 0 && p.l % 2 != 0 && static_cast<long>(p.k) * p.l > 0) ++n;
  return n;
}

double quadratic_form_S(const CoefficientSeq& alpha, int j) {
  check_level(j);
  Complex total{0.0, 0.0};
  for (const auto& [a, va] : alpha.entries) {
    for (const auto& [b, vb] : alpha.entries) {
      Complex inner = inner_Nj(a.first - b.first, a.second - b.second, j);
      if (inner == Complex{0.0, 0.0}) continue;
      long cross = static_cast<long>(a.second) * b.first - static_cast<long>(a.first) * b.second;
      double sign = (cross % 2 != 0) ? -1.0 : 1.0;
      total += va * std::conj(vb) * sign * inner;
    }
  }
  return total.real();
}

RieszWindow riesz_sample_S(int j, int trials, unsigned long long seed) {
  if (j > -1) throw std::domain_error("riesz_sample_S: needs j <= -1");
  check_level(j);
  int side = static_cast<int>(std::ldexp(1.0, -j));
  RieszWindow window;
  window.lo = 2.0;
  window.hi = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (trial + 1)));
    auto unif = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    CoefficientSeq alpha;
    for (int k = 0; k < side; ++k)
      for (int l = 0; l < side; ++l)
        alpha.set(LatticePoint{k, l}, Complex(2.0 * unif() - 1.0, 2.0 * unif() - 1.0));
    double ratio = quadratic_form_S(alpha, j) / alpha.norm_sq();
    window.lo = std::min(window.lo, ratio);
    window.hi = std::max(window.hi, ratio);
  }
  window.inside = window.lo >= 1.0 - 2.0 / kPi - 1e-12 && window.hi <= 1.0 + 2.0 / kPi + 1e-12;
  return window;
}

CoefficientSeq haar_coefficients(const PlanarFunction& phi, const QuadConfig& cfg) {
  check_unit_support(phi);
  PlanarFunction half = dilate(phi, 0.5);
  CoefficientSeq c;
  for (int k = 0; k <= 1; ++k)
    for (int l = 0; l <= 1; ++l)
      c.set(LatticePoint{k, l}, l2_inner(half, twisted_translate(phi, LatticePoint{k, l}), cfg));
  return c;
}

WaveletCandidate build_psi(const CoefficientSeq& c, const PlanarFunction& phi,
                           const QuadConfig& cfg, const std::string& source_tag) {
  check_unit_support(phi);
  for (const auto& [idx, value] : c.entries) {
    (void)value;
    if (idx.first < 0 || idx.first > 1 || idx.second < 0 || idx.second > 1)
      throw std::domain_error("build_psi: coefficient indices must lie in {0,1}^2");
  }
  WaveletCandidate out;
  out.coefficients = c;
  out.source_tag = source_tag;

  auto table = c.entries;
  auto phi_eval = phi.eval;
  out.psi.eval = [table, phi_eval](double x, double y) {
    Complex acc{0.0, 0.0};
    for (const auto& [idx, ckl] : table) {
      int k = idx.first;
      int l = idx.second;
      int m = 1 - k;
      double sign = ((k + l) % 2 != 0) ? -1.0 : 1.0;
      double phase = 2.0 * kPi * (l * x - m * y);
      acc += sign * std::conj(ckl) * 2.0 * Complex{std::cos(phase), std::sin(phase)} *
             phi_eval(2.0 * x - m, 2.0 * y - l);
    }
    return acc;
  };
  out.psi.support = Rectangle{0.0, 1.0, 0.0, 1.0};

  double projected = 0.0;
  for (const auto& [idx, ckl] : table) {
    (void)idx;
    projected += std::norm(ckl);
  }
  out.hypothesis_residual = l2_norm_sq(dilate(phi, 0.5), cfg) - projected;
  out.hypothesis_ok = std::abs(out.hypothesis_residual) <= 1e-8;
  return out;
}

double nesting_residual(int j, const QuadConfig& cfg) {
  if (j < -1 || j > kLevelCap - 1)
    throw std::domain_error("nesting_residual: needs -1 <= j <= 7");
  PlanarFunction b = basis_fn(j, 0, 0);
  double captured = 0.0;
  double fine_w = std::ldexp(1.0, -(j + 1));
  double coarse_w = std::ldexp(1.0, -j);
  int lo = -static_cast<int>(std::ceil(fine_w)) - 1;
  int hi = static_cast<int>(std::ceil(coarse_w)) + 1;
  for (int k = lo; k <= hi; ++k) {
    if (std::min(k + fine_w, coarse_w) - std::max(double(k), 0.0) <= 1e-12) continue;
    for (int l = lo; l <= hi; ++l) {
      if (std::min(l + fine_w, coarse_w) - std::max(double(l), 0.0) <= 1e-12) continue;
      captured += std::norm(l2_inner(b, basis_fn(j + 1, k, l), cfg));
    }
  }
  return l2_norm_sq(b, cfg) - captured;
}

double v0_not_in_v1_residual(int truncation, const QuadConfig& cfg) {
  if (truncation < 2) throw std::domain_error("v0_not_in_v1_residual: needs truncation >= 2");
  PlanarFunction base;
  base.eval = [](double x, double y) { return phi1(x, y); };
  base.support = Rectangle{0.0, 1.0, 0.0, 1.0};
  PlanarFunction g = twisted_translate(base, LatticePoint{1, 0});
  double captured = 0.0;
  for (int k = -truncation; k <= truncation; ++k) {
    for (int l = -truncation; l <= truncation; ++l) {
      PlanarFunction e = dilate(twisted_translate(base, LatticePoint{k, l}), 2.0);
      captured += std::norm(l2_inner(g, e, cfg));
    }
  }
  return l2_norm_sq(g, cfg) - captured;
}

}  // namespace twsp
