// Uniform periodic 3D grid, complex/real fields, spectral operations and
// the amplitude/argument scaling family used throughout the toolkit.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace spn {

using cplx = std::complex<double>;

struct Grid {
  int n = 0;           // points per axis, power of two, >= 8
  double box = 0.0;    // half width: domain is [-box, box)^3
  double h = 0.0;      // spacing, 2*box/n

  static Grid make(int n, double box_half_width);

  std::size_t size() const { return std::size_t(n) * n * n; }
  std::size_t index(int i, int j, int k) const {
    return (std::size_t(i) * n + j) * n + k;
  }
  double coord(int i) const { return -box + h * i; }
  // wavenumber of mode index i on the 2*box torus
  double wavenumber(int i) const;
  bool operator==(const Grid& o) const { return n == o.n && box == o.box; }
};

// Optional closed-form attached to a field; lets the scaling operators
// re-evaluate exactly instead of interpolating.
using Generator = std::function<cplx(double, double, double)>;

struct Field3 {
  Grid grid;
  std::vector<cplx> values;
  std::shared_ptr<const Generator> generator;  // may be null

  static Field3 zeros(const Grid& g);
  static Field3 from_generator(const Grid& g, Generator gen);
  static Field3 from_values(const Grid& g, std::vector<cplx> v);

  bool has_generator() const { return generator != nullptr; }
  cplx eval_generator(double x, double y, double z) const {
    return (*generator)(x, y, z);
  }
};

struct RealField3 {
  Grid grid;
  std::vector<double> values;

  static RealField3 zeros(const Grid& g);
};

struct ScaleSpec {
  double a = 1.5;      // amplitude exponent
  double b = 1.0;      // argument exponent
  double lambda = 1.0; // scale factor, > 0

  // the mass-preserving family u^lambda(x) = lambda^{3/2} u(lambda x)
  static ScaleSpec l2_invariant(double lambda) { return {1.5, 1.0, lambda}; }
};

// --- transforms -----------------------------------------------------------

// Unnormalized forward DFT (coefficients in FFT index order).
Field3 transform_forward(const Field3& f);
// Inverse of transform_forward (includes the 1/n^3 normalization).
Field3 transform_inverse(const Field3& f);

// --- norms and integrals ---------------------------------------------------

double integral(const RealField3& f);               // h^3 * sum
double norm_l2sq(const Field3& u);                  // B(u)
double norm_l2sq(const RealField3& u);
// A(u) via spectral differentiation. Optionally reports the high-mode
// fraction of |u-hat|^2; warning set when it exceeds 1e-6.
double grad_norm_sq(const Field3& u, bool* tail_warning = nullptr,
                    double* tail_fraction = nullptr);
double spectral_tail_fraction(const Field3& u);
double norm_lp(const Field3& u, double q);          // (h^3 sum |u|^q)^{1/q}, q >= 1
double norm_lp_pow(const Field3& u, double q);      // h^3 sum |u|^q
double parseval_mismatch(const Field3& u);          // relative, for diagnostics

// --- calculus on the grid ---------------------------------------------------

std::array<Field3, 3> spectral_gradient(const Field3& u);
Field3 spectral_laplacian(const Field3& u);
// x . grad u, evaluated spectrally (box-centered coordinates)
Field3 x_dot_grad(const Field3& u);
RealField3 abs2(const Field3& u);

// --- scaling ----------------------------------------------------------------

// v(x) = lambda^a u(lambda^b x). Fields carrying a generator are re-evaluated
// exactly; otherwise trilinear interpolation with zero extension outside the
// box. support_warning is set when the |v|^2 mass in the outer 10% shell
// exceeds 1e-8 of the total.
Field3 scale_field(const Field3& u, const ScaleSpec& s,
                   bool* support_warning = nullptr);

// trilinear sample of u at a physical point, zero outside the box
cplx interpolate(const Field3& u, double x, double y, double z);
double interpolate(const RealField3& u, double x, double y, double z);

// --- serialization -----------------------------------------------------------

// Flat little-endian binary: 32-byte header ("SPF3", version, n, box) then
// n^3 (re, im) float64 pairs in (i,j,k) row-major order. A JSON sidecar with
// the grid metadata is written next to the binary as <path>.json.
void save_field(const Field3& u, const std::string& path);
Field3 load_field(const std::string& path);

}  // namespace spn
