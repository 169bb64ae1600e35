#include "twsp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace twsp {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::pair<std::vector<double>, std::vector<double>> compute_gauss_legendre(int order) {
  std::vector<double> nodes(order), weights(order);
  for (int i = 0; i < order; ++i) {
    // Chebyshev-based initial guess, then Newton on the Legendre recurrence.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double deriv = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / deriv;
      x -= dx;
      if (std::abs(dx) <= 4.0 * kEps * std::abs(x) + 1e-300) {
        double q0 = 1.0, q1 = x;
        for (int k = 2; k <= order; ++k) {
          const double q2 = ((2.0 * k - 1.0) * x * q1 - (k - 1.0) * q0) / k;
          q0 = q1;
          q1 = q2;
        }
        const double d = order * (x * q1 - q0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * d * d);
        break;
      }
    }
  }
  return {nodes, weights};
}

void check_finite(const Complex& v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::runtime_error("integrate: non-finite integrand sample");
}

Complex cell_value_2d(const std::function<Complex(double, double)>& f, const Rectangle& r,
                      int order) {
  const auto& [nodes, weights] = gauss_legendre(order);
  const double cx = 0.5 * (r.x_lo + r.x_hi), hx = 0.5 * (r.x_hi - r.x_lo);
  const double cy = 0.5 * (r.y_lo + r.y_hi), hy = 0.5 * (r.y_hi - r.y_lo);
  Complex acc = 0.0;
  for (int i = 0; i < order; ++i) {
    const double x = cx + hx * nodes[i];
    Complex row = 0.0;
    for (int j = 0; j < order; ++j) {
      const double y = cy + hy * nodes[j];
      const Complex v = f(x, y);
      check_finite(v);
      row += weights[j] * v;
    }
    acc += weights[i] * row;
  }
  return acc * (hx * hy);
}

Complex cell_value_1d(const std::function<Complex(double)>& f, double lo, double hi, int order) {
  const auto& [nodes, weights] = gauss_legendre(order);
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  Complex acc = 0.0;
  for (int i = 0; i < order; ++i) {
    const Complex v = f(c + h * nodes[i]);
    check_finite(v);
    acc += weights[i] * v;
  }
  return acc * h;
}

// Breakpoint lines restricted to the open interior, sorted and deduplicated.
std::vector<double> interior_cuts(const std::vector<double>& cuts, double lo, double hi) {
  std::vector<double> out;
  for (double c : cuts)
    if (c > lo && c < hi) out.push_back(c);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Cell2 {
  Rectangle r;
  int depth;
};

}  // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order) {
  if (order < 1) throw std::domain_error("gauss_legendre: order must be positive");
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
  return it->second;
}

QuadResult integrate_2d(const std::function<Complex(double, double)>& f, const Rectangle& rect,
                        const QuadConfig& cfg, const Breakpoints& breaks) {
  if (cfg.node_count < 2) throw std::domain_error("integrate_2d: node_count must be >= 2");
  if (!(cfg.tolerance > 0.0)) throw std::domain_error("integrate_2d: tolerance must be positive");
  const int lo_order = std::max(1, cfg.node_count / 2);

  const auto xcuts = interior_cuts(breaks.x, rect.x_lo, rect.x_hi);
  const auto ycuts = interior_cuts(breaks.y, rect.y_lo, rect.y_hi);
  std::vector<double> xs{rect.x_lo};
  xs.insert(xs.end(), xcuts.begin(), xcuts.end());
  xs.push_back(rect.x_hi);
  std::vector<double> ys{rect.y_lo};
  ys.insert(ys.end(), ycuts.begin(), ycuts.end());
  ys.push_back(rect.y_hi);

  const double total_area = std::max(rect.area(), kEps);
  std::vector<Cell2> stack;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    for (std::size_t j = 0; j + 1 < ys.size(); ++j)
      stack.push_back({{xs[i], xs[i + 1], ys[j], ys[j + 1]}, 0});
  // Reverse so the first cell is processed first (LIFO order).
  std::reverse(stack.begin(), stack.end());

  Complex value = 0.0;
  double err_sum = 0.0;
  int max_depth = 0;
  bool converged = true;

  while (!stack.empty()) {
    const Cell2 cell = stack.back();
    stack.pop_back();
    const Complex hi = cell_value_2d(f, cell.r, cfg.node_count);
    const Complex lo = cell_value_2d(f, cell.r, lo_order);
    const double err = std::abs(hi - lo);
    const double budget = cfg.tolerance * (cell.r.area() / total_area);
    const double floor = 8.0 * kEps * (1.0 + std::abs(hi));
    if (err <= std::max(budget, floor)) {
      value += hi;
      err_sum += err;
      continue;
    }
    if (cell.depth >= cfg.max_subdivisions) {
      value += hi;
      err_sum += err;
      max_depth = std::max(max_depth, cell.depth);
      converged = false;
      continue;
    }
    max_depth = std::max(max_depth, cell.depth + 1);
    Rectangle a = cell.r, b = cell.r;
    if (cell.r.width() >= cell.r.height()) {
      const double m = 0.5 * (cell.r.x_lo + cell.r.x_hi);
      a.x_hi = m;
      b.x_lo = m;
    } else {
      const double m = 0.5 * (cell.r.y_lo + cell.r.y_hi);
      a.y_hi = m;
      b.y_lo = m;
    }
    stack.push_back({b, cell.depth + 1});
    stack.push_back({a, cell.depth + 1});
  }

  return {value, err_sum, max_depth, converged};
}

QuadResult integrate_2d(const PlanarFunction& f, const Rectangle& rect, const QuadConfig& cfg,
                        const Breakpoints& breaks) {
  return integrate_2d(f.eval, rect, cfg, breaks);
}

QuadResult integrate_1d(const std::function<Complex(double)>& f, const Interval& iv,
                        const QuadConfig& cfg, const std::vector<double>& breaks) {
  if (cfg.node_count < 2) throw std::domain_error("integrate_1d: node_count must be >= 2");
  if (!(cfg.tolerance > 0.0)) throw std::domain_error("integrate_1d: tolerance must be positive");
  const int lo_order = std::max(1, cfg.node_count / 2);

  const auto cuts = interior_cuts(breaks, iv.lo, iv.hi);
  std::vector<double> xs{iv.lo};
  xs.insert(xs.end(), cuts.begin(), cuts.end());
  xs.push_back(iv.hi);

  const double total_len = std::max(std::abs(iv.length()), kEps);
  struct Cell1 {
    double lo, hi;
    int depth;
  };
  std::vector<Cell1> stack;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) stack.push_back({xs[i], xs[i + 1], 0});
  std::reverse(stack.begin(), stack.end());

  Complex value = 0.0;
  double err_sum = 0.0;
  int max_depth = 0;
  bool converged = true;

  while (!stack.empty()) {
    const Cell1 cell = stack.back();
    stack.pop_back();
    const Complex hi = cell_value_1d(f, cell.lo, cell.hi, cfg.node_count);
    const Complex lo = cell_value_1d(f, cell.lo, cell.hi, lo_order);
    const double err = std::abs(hi - lo);
    const double budget = cfg.tolerance * ((cell.hi - cell.lo) / total_len);
    const double floor = 8.0 * kEps * (1.0 + std::abs(hi));
    if (err <= std::max(budget, floor)) {
      value += hi;
      err_sum += err;
      continue;
    }
    if (cell.depth >= cfg.max_subdivisions) {
      value += hi;
      err_sum += err;
      max_depth = std::max(max_depth, cell.depth);
      converged = false;
      continue;
    }
    max_depth = std::max(max_depth, cell.depth + 1);
    const double m = 0.5 * (cell.lo + cell.hi);
    stack.push_back({m, cell.hi, cell.depth + 1});
    stack.push_back({cell.lo, m, cell.depth + 1});
  }

  return {value, err_sum, max_depth, converged};
}

}  // namespace twsp
