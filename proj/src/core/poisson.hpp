// Free-space Coulomb convolutions on the grid: the pair potential of |u|^2,
// the background potentials sourced by the doping profile and its derivative
// combinations, and the pair energy.
#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "core/field.hpp"
#include "core/profile.hpp"

namespace spn {

// Free-space (non-periodic) convolution with 1/(8 pi |x|) by 2x zero padding.
// The kernel is sampled in real space on the padded grid; the singular cell
// carries the cell average of 1/(4 pi |x|), which keeps the scheme second
// order. One instance per grid, reused through the engine cache below.
class CoulombSolver {
 public:
  explicit CoulombSolver(const Grid& g);

  const Grid& grid() const { return grid_; }

  // (1/(8 pi |x|)) * f
  RealField3 convolve(const RealField3& f) const;

  // gradient of the convolution, via the sampled kernel gradient
  // -x/(8 pi |x|^3); the odd kernel has zero central-cell average
  std::array<RealField3, 3> convolve_gradient(const RealField3& f) const;

 private:
  Grid grid_;
  std::vector<cplx> kernel_hat_;  // includes h^3 / (2 m^3) normalization
  mutable std::vector<std::array<cplx, 3>> grad_kernel_hat_;  // lazy
  void build_gradient_kernels() const;
};

CoulombSolver& coulomb_solver_for(const Grid& g);

// Background potentials for a (grid, profile) pair. Everything here is
// independent of the state u and reused across solves and time steps.
struct Background {
  RealField3 s1;   // -(1/(8 pi |x|)) * rho, <= 0
  RealField3 s2;   // (1/(8 pi |x|)) * (x . grad rho); single-layer form for balls
  RealField3 s3;   // (1/(8 pi |x|)) * (x . (D2 rho x)); unset for balls
  bool surface_forms = false;      // balls route: E2/E3 via boundary integrals
  bool has_s3 = false;
  double f_const = 0.0;            // -(1/4) int S1 rho
  bool f_const_truncation_sensitive = false;
};

const Background& background_for(const Grid& g, const DopingProfile& rho);

// Closed-form s1 for ball profiles (uniform-ball potential), exact.
double ball_s1_exact(const std::vector<BallSpec>& balls, double x, double y,
                     double z);

// D(u) = (1/4) int s0 |u|^2 given the pair potential and density.
double pair_energy_from(const RealField3& s0, const RealField3& a2);
// Convenience: computes s0 internally.
double pair_energy(const CoulombSolver& solver, const Field3& u);

struct DecayReport {
  double inner_max = 0.0;    // max |s1| on the mid shell
  double outer_max = 0.0;    // max |s1| on the outer shell
  double outer_max_doubled = 0.0;  // same, box doubled
  double ratio = 0.0;        // outer_max_doubled / outer_max
};

// Samples |S1| on radial shells and under box doubling; the far field of a
// localized background decays like its monopole, so doubling the box should
// halve the outer-shell values.
DecayReport s1_decay_check(const DopingProfile& rho, const Grid& g);

}  // namespace spn
