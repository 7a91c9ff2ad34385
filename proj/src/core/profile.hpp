// Background charge profiles: smooth radial families (Gaussian, power-law,
// mollified ball, sums of those) and characteristic functions of disjoint
// balls, together with their derivative combinations, L^{6/5} sizes, the
// coupling smallness measure, and ball boundary geometry.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "core/field.hpp"

namespace spn {

struct BallSpec {
  double sigma = 1.0;                     // height of the step
  std::array<double, 3> center{0, 0, 0};
  double radius = 1.0;
};

// Geometry constants of a ball domain entering the boundary-trace machinery.
struct BallGeometry {
  double radius = 0.0;
  double far_point = 0.0;     // sup_{boundary} |x| = |center| + R
  double area = 0.0;          // 4 pi R^2
  double volume = 0.0;        // (4/3) pi R^3
  double mean_curvature = 0.0;  // 2 / R
  double kappa1 = 0.0;        // area / volume = 3 / R
  double kappa2 = 1.0;        // |grad w| on the boundary, torsion solution
  double h_l2_boundary = 0.0; // L^2 boundary norm of the mean curvature
  double size_d = 0.0;        // the trace-inequality size functional D
};

BallGeometry ball_geometry(const std::array<double, 3>& center, double radius);

// Lower bound constant in D(ball) >= C * |ball|^{5/6}.
double size_d_lower_constant();

struct Condition517Report {
  std::vector<double> radii;
  std::vector<double> values;       // 8 rho + 7 x.grad rho + x.(D2 rho x)
  std::vector<std::array<double, 2>> sign_change_intervals;
  std::vector<double> roots;        // refined by bisection
  bool identically_zero = false;
};

struct ProfileNorms65 {
  double rho = 0.0;
  double xgrad = 0.0;
  double xhess = 0.0;
  double sum() const { return rho + xgrad + xhess; }
};

class DopingProfile {
 public:
  static DopingProfile zero();
  static DopingProfile gaussian(double eps, double alpha);
  static DopingProfile power_law(double eps, double alpha);  // alpha > 5/2
  static DopingProfile mollified_ball(double sigma, double radius, double eps);
  static DopingProfile balls(std::vector<BallSpec> list);    // pairwise disjoint
  static DopingProfile sum(const std::vector<DopingProfile>& smooth_parts);

  bool is_zero() const;
  bool is_balls() const { return !balls_.empty(); }
  bool is_smooth() const { return balls_.empty(); }

  double eval(double x, double y, double z) const;
  // x . grad rho and x . (D2 rho x); defined for smooth variants only
  double eval_xgrad(double x, double y, double z) const;
  double eval_xhess(double x, double y, double z) const;

  // radial forms (all smooth terms are centered at the origin)
  double radial(double r) const;
  double radial_xgrad(double r) const;
  double radial_xhess(double r) const;

  ProfileNorms65 norms_65() const;      // smooth variants
  // e^2 * (L^{6/5} size) for smooth profiles, e^2 * sum sigma_i D(B_i) for balls
  double smallness(double e) const;

  Condition517Report condition_5_17(const std::vector<double>& radii) const;

  const std::vector<BallSpec>& ball_list() const { return balls_; }

  RealField3 sample_on_grid(const Grid& g) const;
  RealField3 sample_xgrad_on_grid(const Grid& g) const;
  RealField3 sample_xhess_on_grid(const Grid& g) const;
  // rho(x / lambda) sampled on the grid (used by the fibering maps)
  RealField3 sample_rescaled_on_grid(const Grid& g, double lambda) const;

  double total_mass() const;                    // integral of rho
  double mass_outside_radius(double r) const;   // tail beyond |x| = r

  const std::string& key() const { return key_; }  // cache / log identity

 private:
  struct RadialTerm {
    enum class Kind { Gaussian, PowerLaw, MollifiedBall };
    Kind kind;
    double a = 0.0, b = 0.0, c = 0.0;  // meaning depends on kind
    double value(double r) const;
    double rprime(double r) const;     // r * rho'(r)
    double r2second(double r) const;   // r^2 * rho''(r)
    double cutoff_radius() const;
  };

  std::vector<RadialTerm> terms_;
  std::vector<BallSpec> balls_;
  std::string key_;

  void rebuild_key();
  void require_smooth(const char* op) const;
};

}  // namespace spn
