#include "core/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "core/quadrature.hpp"

namespace spn {

namespace {
constexpr double kPi = std::numbers::pi;
}

// --- ball geometry -----------------------------------------------------------

BallGeometry ball_geometry(const std::array<double, 3>& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be > 0");
  BallGeometry g;
  g.radius = radius;
  const double c = std::sqrt(center[0] * center[0] + center[1] * center[1] +
                             center[2] * center[2]);
  g.far_point = c + radius;
  g.area = 4.0 * kPi * radius * radius;
  g.volume = 4.0 / 3.0 * kPi * radius * radius * radius;
  g.mean_curvature = 2.0 / radius;
  g.kappa1 = g.area / g.volume;  // = 3 / R
  // torsion problem: w = |x - center|^2 / (2R) has Laplacian 3/R = kappa1 and
  // unit normal derivative on the boundary, so |grad w| there is exactly 1
  g.kappa2 = 1.0;
  g.h_l2_boundary = g.mean_curvature * std::sqrt(g.area);
  const double L = g.far_point;
  g.size_d = L * std::pow(g.volume, 1.0 / 6.0) *
             (L * g.h_l2_boundary + std::sqrt(g.area)) *
             std::sqrt(g.kappa1 * std::cbrt(g.volume) + g.kappa2);
  return g;
}

double size_d_lower_constant() {
  const double b1 = 4.0 / 3.0 * kPi;  // unit ball volume
  return std::sqrt(3.0) * std::sqrt(3.0 * std::cbrt(b1) + 1.0) /
         std::pow(b1, 1.0 / 6.0);
}

// --- radial terms --------------------------------------------------------------

double DopingProfile::RadialTerm::value(double r) const {
  switch (kind) {
    case Kind::Gaussian:
      return a * std::exp(-b * r * r);
    case Kind::PowerLaw:
      return a / (1.0 + std::pow(r, b));
    case Kind::MollifiedBall:
      // a = sigma, b = radius, c = mollification width
      return 0.5 * a * std::erfc((r - b) / (std::numbers::sqrt2 * c));
  }
  return 0.0;
}

double DopingProfile::RadialTerm::rprime(double r) const {
  switch (kind) {
    case Kind::Gaussian:
      return -2.0 * b * r * r * value(r);
    case Kind::PowerLaw: {
      const double rb = std::pow(r, b);
      const double d = 1.0 + rb;
      return -a * b * rb / (d * d);
    }
    case Kind::MollifiedBall: {
      const double t = (r - b) / c;
      return -r * a / (std::sqrt(2.0 * kPi) * c) * std::exp(-0.5 * t * t);
    }
  }
  return 0.0;
}

double DopingProfile::RadialTerm::r2second(double r) const {
  switch (kind) {
    case Kind::Gaussian:
      return a * std::exp(-b * r * r) *
             (4.0 * b * b * r * r * r * r - 2.0 * b * r * r);
    case Kind::PowerLaw: {
      const double rb = std::pow(r, b);
      const double d = 1.0 + rb;
      return -a * b * (b - 1.0) * rb / (d * d) +
             2.0 * a * b * b * rb * rb / (d * d * d);
    }
    case Kind::MollifiedBall: {
      const double t = (r - b) / c;
      return r * r * a * (r - b) / (std::sqrt(2.0 * kPi) * c * c * c) *
             std::exp(-0.5 * t * t);
    }
  }
  return 0.0;
}

double DopingProfile::RadialTerm::cutoff_radius() const {
  switch (kind) {
    case Kind::Gaussian:
      return std::sqrt(80.0 / b);
    case Kind::PowerLaw:
      return 2000.0;  // analytic tail appended past this
    case Kind::MollifiedBall:
      return b + 14.0 * c;
  }
  return 100.0;
}

// --- construction ---------------------------------------------------------------

DopingProfile DopingProfile::zero() {
  DopingProfile p;
  p.rebuild_key();
  return p;
}

DopingProfile DopingProfile::gaussian(double eps, double alpha) {
  if (!(eps > 0.0) || !(alpha > 0.0))
    throw std::invalid_argument("gaussian profile needs eps > 0, alpha > 0");
  DopingProfile p;
  p.terms_.push_back({RadialTerm::Kind::Gaussian, eps, alpha, 0.0});
  p.rebuild_key();
  return p;
}

DopingProfile DopingProfile::power_law(double eps, double alpha) {
  if (!(eps > 0.0))
    throw std::invalid_argument("power-law profile needs eps > 0");
  if (!(alpha > 2.5))
    throw std::invalid_argument("power-law exponent must exceed 5/2");
  DopingProfile p;
  p.terms_.push_back({RadialTerm::Kind::PowerLaw, eps, alpha, 0.0});
  p.rebuild_key();
  return p;
}

DopingProfile DopingProfile::mollified_ball(double sigma, double radius,
                                            double eps) {
  if (!(sigma > 0.0) || !(radius > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("mollified ball needs positive parameters");
  DopingProfile p;
  p.terms_.push_back({RadialTerm::Kind::MollifiedBall, sigma, radius, eps});
  p.rebuild_key();
  return p;
}

DopingProfile DopingProfile::balls(std::vector<BallSpec> list) {
  if (list.empty()) throw std::invalid_argument("ball list is empty");
  for (const auto& b : list) {
    if (!(b.sigma > 0.0) || !(b.radius > 0.0))
      throw std::invalid_argument("balls need sigma > 0 and radius > 0");
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      double d2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double d = list[i].center[k] - list[j].center[k];
        d2 += d * d;
      }
      const double need = list[i].radius + list[j].radius;
      if (std::sqrt(d2) < need - 1e-12)
        throw std::invalid_argument("balls must be pairwise disjoint");
    }
  }
  DopingProfile p;
  p.balls_ = std::move(list);
  p.rebuild_key();
  return p;
}

DopingProfile DopingProfile::sum(const std::vector<DopingProfile>& parts) {
  DopingProfile p;
  for (const auto& part : parts) {
    if (part.is_balls())
      throw std::invalid_argument(
          "sum profiles accept smooth parts only; use a single balls profile "
          "for characteristic-function backgrounds");
    p.terms_.insert(p.terms_.end(), part.terms_.begin(), part.terms_.end());
  }
  p.rebuild_key();
  return p;
}

void DopingProfile::rebuild_key() {
  std::ostringstream os;
  os.precision(17);
  if (terms_.empty() && balls_.empty()) os << "zero";
  for (const auto& t : terms_) {
    switch (t.kind) {
      case RadialTerm::Kind::Gaussian:
        os << "gaussian(" << t.a << "," << t.b << ");";
        break;
      case RadialTerm::Kind::PowerLaw:
        os << "powerlaw(" << t.a << "," << t.b << ");";
        break;
      case RadialTerm::Kind::MollifiedBall:
        os << "mollified_ball(" << t.a << "," << t.b << "," << t.c << ");";
        break;
    }
  }
  for (const auto& b : balls_) {
    os << "ball(" << b.sigma << ",[" << b.center[0] << "," << b.center[1]
       << "," << b.center[2] << "]," << b.radius << ");";
  }
  key_ = os.str();
}

void DopingProfile::require_smooth(const char* op) const {
  if (is_balls())
    throw std::invalid_argument(std::string(op) +
                                " is not defined for characteristic-function "
                                "profiles; use the surface-form machinery");
}

bool DopingProfile::is_zero() const { return terms_.empty() && balls_.empty(); }

// --- evaluation -----------------------------------------------------------------

double DopingProfile::radial(double r) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.value(r);
  return s;
}

double DopingProfile::radial_xgrad(double r) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.rprime(r);
  return s;
}

double DopingProfile::radial_xhess(double r) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.r2second(r);
  return s;
}

double DopingProfile::eval(double x, double y, double z) const {
  if (is_balls()) {
    double s = 0.0;
    for (const auto& b : balls_) {
      const double dx = x - b.center[0], dy = y - b.center[1],
                   dz = z - b.center[2];
      if (dx * dx + dy * dy + dz * dz < b.radius * b.radius) s += b.sigma;
    }
    return s;
  }
  return radial(std::sqrt(x * x + y * y + z * z));
}

double DopingProfile::eval_xgrad(double x, double y, double z) const {
  require_smooth("x.grad(rho)");
  return radial_xgrad(std::sqrt(x * x + y * y + z * z));
}

double DopingProfile::eval_xhess(double x, double y, double z) const {
  require_smooth("x.(D2 rho x)");
  return radial_xhess(std::sqrt(x * x + y * y + z * z));
}

// --- norms and smallness -----------------------------------------------------------

namespace {

// (4 pi int_0^inf |f(r)|^{6/5} r^2 dr)^{5/6}
double radial_norm65(const std::function<double(double)>& f, double r_cut,
                     double tail_exponent_estimate) {
  auto integrand = [&](double r) {
    return std::pow(std::abs(f(r)), 1.2) * r * r;
  };
  double total = adaptive_simpson(integrand, 0.0, std::min(r_cut, 8.0), 1e-13) +
                 adaptive_simpson(integrand, std::min(r_cut, 8.0), r_cut, 1e-13);
  if (tail_exponent_estimate > 0.0) {
    // assumes |f| ~ c r^{-alpha} beyond the cutoff
    const double a = tail_exponent_estimate;
    const double p = 1.2 * a - 3.0;
    if (p > 0.0) total += integrand(r_cut) * r_cut / p;
  }
  return std::pow(4.0 * kPi * total, 5.0 / 6.0);
}

}  // namespace

ProfileNorms65 DopingProfile::norms_65() const {
  require_smooth("L^{6/5} norms");
  ProfileNorms65 out;
  if (terms_.empty()) return out;
  double r_cut = 0.0;
  double slowest = -1.0;
  for (const auto& t : terms_) {
    r_cut = std::max(r_cut, t.cutoff_radius());
    if (t.kind == RadialTerm::Kind::PowerLaw)
      slowest = slowest < 0 ? t.b : std::min(slowest, t.b);
  }
  out.rho = radial_norm65([&](double r) { return radial(r); }, r_cut, slowest);
  out.xgrad =
      radial_norm65([&](double r) { return radial_xgrad(r); }, r_cut, slowest);
  out.xhess =
      radial_norm65([&](double r) { return radial_xhess(r); }, r_cut, slowest);
  return out;
}

double DopingProfile::smallness(double e) const {
  if (is_zero()) return 0.0;
  if (is_balls()) {
    double s = 0.0;
    for (const auto& b : balls_)
      s += b.sigma * ball_geometry(b.center, b.radius).size_d;
    return e * e * s;
  }
  return e * e * norms_65().sum();
}

// --- pointwise fibering-uniqueness condition -----------------------------------------

Condition517Report DopingProfile::condition_5_17(
    const std::vector<double>& radii) const {
  require_smooth("the pointwise fibering condition");
  Condition517Report rep;
  rep.radii = radii;
  rep.values.reserve(radii.size());
  auto expr = [&](double r) {
    return 8.0 * radial(r) + 7.0 * radial_xgrad(r) + radial_xhess(r);
  };
  for (double r : radii) rep.values.push_back(expr(r));
  if (is_zero()) {
    rep.identically_zero = true;
    return rep;
  }
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    const double va = rep.values[i], vb = rep.values[i + 1];
    if (va == 0.0 || va * vb >= 0.0) continue;
    double a = radii[i], b = radii[i + 1], fa = va;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = expr(m);
      if (fa * fm <= 0.0) {
        b = m;
      } else {
        a = m;
        fa = fm;
      }
      if (b - a < 1e-15 * std::max(1.0, b)) break;
    }
    rep.sign_change_intervals.push_back({radii[i], radii[i + 1]});
    rep.roots.push_back(0.5 * (a + b));
  }
  return rep;
}

// --- grid sampling --------------------------------------------------------------------

namespace {

template <typename F>
RealField3 sample_grid(const Grid& g, F&& f) {
  RealField3 out = RealField3::zeros(g);
  std::size_t idx = 0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coord(i);
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coord(j);
      for (int k = 0; k < g.n; ++k, ++idx) {
        out.values[idx] = f(x, y, g.coord(k));
      }
    }
  }
  return out;
}

}  // namespace

RealField3 DopingProfile::sample_on_grid(const Grid& g) const {
  if (is_balls()) {
    // antialias the step over one cell, order-h^2 placement of the surface
    const double w = g.h;
    return sample_grid(g, [&](double x, double y, double z) {
      double s = 0.0;
      for (const auto& b : balls_) {
        const double dx = x - b.center[0], dy = y - b.center[1],
                     dz = z - b.center[2];
        const double d = std::sqrt(dx * dx + dy * dy + dz * dz) - b.radius;
        s += b.sigma * std::clamp(0.5 - d / w, 0.0, 1.0);
      }
      return s;
    });
  }
  return sample_grid(g, [&](double x, double y, double z) { return eval(x, y, z); });
}

RealField3 DopingProfile::sample_xgrad_on_grid(const Grid& g) const {
  require_smooth("x.grad(rho) sampling");
  return sample_grid(
      g, [&](double x, double y, double z) { return eval_xgrad(x, y, z); });
}

RealField3 DopingProfile::sample_xhess_on_grid(const Grid& g) const {
  require_smooth("x.(D2 rho x) sampling");
  return sample_grid(
      g, [&](double x, double y, double z) { return eval_xhess(x, y, z); });
}

RealField3 DopingProfile::sample_rescaled_on_grid(const Grid& g,
                                                  double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  const double inv = 1.0 / lambda;
  return sample_grid(g, [&](double x, double y, double z) {
    return eval(inv * x, inv * y, inv * z);
  });
}

double DopingProfile::total_mass() const {
  if (is_balls()) {
    double s = 0.0;
    for (const auto& b : balls_)
      s += b.sigma * 4.0 / 3.0 * kPi * b.radius * b.radius * b.radius;
    return s;
  }
  if (terms_.empty()) return 0.0;
  double r_cut = 0.0;
  for (const auto& t : terms_) r_cut = std::max(r_cut, t.cutoff_radius());
  auto integrand = [&](double r) { return radial(r) * r * r; };
  double total = adaptive_simpson(integrand, 0.0, r_cut, 1e-13);
  for (const auto& t : terms_) {
    if (t.kind == RadialTerm::Kind::PowerLaw && t.b > 3.0)
      total += t.a * std::pow(r_cut, 3.0 - t.b) / (t.b - 3.0);
  }
  return 4.0 * kPi * total;
}

double DopingProfile::mass_outside_radius(double r0) const {
  if (is_balls()) {
    double s = 0.0;
    for (const auto& b : balls_) {
      const double c = std::sqrt(b.center[0] * b.center[0] +
                                 b.center[1] * b.center[1] +
                                 b.center[2] * b.center[2]);
      if (c + b.radius > r0)  // coarse: count the whole ball
        s += b.sigma * 4.0 / 3.0 * kPi * std::pow(b.radius, 3);
    }
    return s;
  }
  if (terms_.empty()) return 0.0;
  double r_cut = r0;
  for (const auto& t : terms_) r_cut = std::max(r_cut, t.cutoff_radius());
  auto integrand = [&](double r) { return radial(r) * r * r; };
  double total = adaptive_simpson(integrand, r0, r_cut, 1e-13);
  for (const auto& t : terms_) {
    if (t.kind == RadialTerm::Kind::PowerLaw && t.b > 3.0)
      total += t.a * std::pow(r_cut, 3.0 - t.b) / (t.b - 3.0);
  }
  return 4.0 * kPi * total;
}

}  // namespace spn
