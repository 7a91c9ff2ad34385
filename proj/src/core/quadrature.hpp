// Gauss-Legendre rules, sphere/ball quadrature and adaptive 1D integration.
#pragma once

#include <array>
#include <functional>
#include <vector>

namespace spn {

struct GaussLegendre {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

// Nodes/weights by Newton iteration on the Legendre polynomial.
GaussLegendre gauss_legendre(int order);

// Product rule on a sphere: Gauss-Legendre in cos(theta) x uniform in phi.
// Integrates f over the sphere surface |y - center| = radius.
struct SphereRule {
  int n_mu = 32;
  int n_phi = 64;
};

double sphere_integral(const std::array<double, 3>& center, double radius,
                       const std::function<double(double, double, double)>& f,
                       const SphereRule& rule = {});

// Volume integral over a ball, radial Gauss-Legendre x sphere rule.
double ball_integral(const std::array<double, 3>& center, double radius,
                     const std::function<double(double, double, double)>& f,
                     int n_radial = 48, const SphereRule& rule = {});

// Adaptive Simpson on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int max_depth = 30);

}  // namespace spn
