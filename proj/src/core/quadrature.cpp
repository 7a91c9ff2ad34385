#include "core/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spn {

GaussLegendre gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
  GaussLegendre q;
  q.nodes.resize(order);
  q.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev guess, then Newton
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= order; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = -x;
    q.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.weights[i] = w;
    q.weights[order - 1 - i] = w;
  }
  return q;
}

double sphere_integral(const std::array<double, 3>& center, double radius,
                       const std::function<double(double, double, double)>& f,
                       const SphereRule& rule) {
  static GaussLegendre cached;  // single-threaded; rebuilt on order change
  static int cached_order = -1;
  if (cached_order != rule.n_mu) {
    cached = gauss_legendre(rule.n_mu);
    cached_order = rule.n_mu;
  }
  const double wphi = 2.0 * std::numbers::pi / rule.n_phi;
  double total = 0.0;
  for (int a = 0; a < rule.n_mu; ++a) {
    const double mu = cached.nodes[a];
    const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    double ring = 0.0;
    for (int b = 0; b < rule.n_phi; ++b) {
      const double phi = wphi * b;
      ring += f(center[0] + radius * s * std::cos(phi),
                center[1] + radius * s * std::sin(phi),
                center[2] + radius * mu);
    }
    total += cached.weights[a] * ring;
  }
  return total * wphi * radius * radius;
}

double ball_integral(const std::array<double, 3>& center, double radius,
                     const std::function<double(double, double, double)>& f,
                     int n_radial, const SphereRule& rule) {
  const GaussLegendre qr = gauss_legendre(n_radial);
  double total = 0.0;
  for (int i = 0; i < n_radial; ++i) {
    const double r = 0.5 * radius * (qr.nodes[i] + 1.0);
    const double w = 0.5 * radius * qr.weights[i];
    if (r == 0.0) continue;
    // sphere_integral carries the r^2 surface factor already
    total += w * sphere_integral(center, r, f, rule);
  }
  return total;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa,
             double b, double fb, double m, double fm, double whole,
             double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(f, a, fa, b, fb, m, fm);
  return adapt(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace spn
