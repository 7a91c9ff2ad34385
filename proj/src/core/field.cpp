#include "core/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "core/fft.hpp"
#include "json.hpp"

namespace spn {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_finite(const std::vector<cplx>& v) {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("field contains non-finite entries");
  }
}

}  // namespace

Grid Grid::make(int n, double box_half_width) {
  if (n < 8 || !is_pow2(n))
    throw std::invalid_argument("grid size must be a power of two, >= 8");
  if (!(box_half_width > 0.0))
    throw std::invalid_argument("box half width must be positive");
  Grid g;
  g.n = n;
  g.box = box_half_width;
  g.h = 2.0 * box_half_width / n;
  return g;
}

double Grid::wavenumber(int i) const {
  const int m = (i <= n / 2) ? i : i - n;
  return std::numbers::pi / box * m;
}

Field3 Field3::zeros(const Grid& g) {
  Field3 f;
  f.grid = g;
  f.values.assign(g.size(), cplx(0.0, 0.0));
  return f;
}

Field3 Field3::from_generator(const Grid& g, Generator gen) {
  Field3 f;
  f.grid = g;
  f.values.resize(g.size());
  const int n = g.n;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const double x = g.coord(i);
    for (int j = 0; j < n; ++j) {
      const double y = g.coord(j);
      for (int k = 0; k < n; ++k, ++idx) {
        f.values[idx] = gen(x, y, g.coord(k));
      }
    }
  }
  check_finite(f.values);
  f.generator = std::make_shared<const Generator>(std::move(gen));
  return f;
}

Field3 Field3::from_values(const Grid& g, std::vector<cplx> v) {
  if (v.size() != g.size())
    throw std::invalid_argument("value array does not match grid size");
  check_finite(v);
  Field3 f;
  f.grid = g;
  f.values = std::move(v);
  return f;
}

RealField3 RealField3::zeros(const Grid& g) {
  RealField3 f;
  f.grid = g;
  f.values.assign(g.size(), 0.0);
  return f;
}

// --- transforms -------------------------------------------------------------

Field3 transform_forward(const Field3& f) {
  auto& eng = cfft_for(f.grid.n);
  std::copy(f.values.begin(), f.values.end(), eng.buffer());
  eng.forward();
  Field3 out;
  out.grid = f.grid;
  out.values.assign(eng.buffer(), eng.buffer() + f.grid.size());
  return out;
}

Field3 transform_inverse(const Field3& f) {
  auto& eng = cfft_for(f.grid.n);
  std::copy(f.values.begin(), f.values.end(), eng.buffer());
  eng.backward();
  Field3 out;
  out.grid = f.grid;
  out.values.resize(f.grid.size());
  const double inv = 1.0 / double(f.grid.size());
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = eng.buffer()[i] * inv;
  return out;
}

// --- norms -------------------------------------------------------------------

double integral(const RealField3& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s * f.grid.h * f.grid.h * f.grid.h;
}

double norm_l2sq(const Field3& u) {
  double s = 0.0;
  for (const auto& z : u.values) s += std::norm(z);
  return s * u.grid.h * u.grid.h * u.grid.h;
}

double norm_l2sq(const RealField3& u) {
  double s = 0.0;
  for (double v : u.values) s += v * v;
  return s * u.grid.h * u.grid.h * u.grid.h;
}

namespace {

// shared spectral pass: returns sum |k|^2 |uhat|^2 and the tail diagnostics
struct SpectralMoments {
  double ksq_sum = 0.0;
  double total = 0.0;
  double tail = 0.0;
};

SpectralMoments spectral_moments(const Field3& u) {
  auto& eng = cfft_for(u.grid.n);
  std::copy(u.values.begin(), u.values.end(), eng.buffer());
  eng.forward();
  const int n = u.grid.n;
  const int tail_lo = n / 3;  // |m| above this counts as unresolved tail
  SpectralMoments mom;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const double ki = u.grid.wavenumber(i);
    const int mi = std::abs(i <= n / 2 ? i : i - n);
    for (int j = 0; j < n; ++j) {
      const double kj = u.grid.wavenumber(j);
      const int mj = std::abs(j <= n / 2 ? j : j - n);
      for (int k = 0; k < n; ++k, ++idx) {
        const double kk = u.grid.wavenumber(k);
        const int mk = std::abs(k <= n / 2 ? k : k - n);
        const double p = std::norm(eng.buffer()[idx]);
        mom.total += p;
        mom.ksq_sum += (ki * ki + kj * kj + kk * kk) * p;
        if (std::max({mi, mj, mk}) > tail_lo) mom.tail += p;
      }
    }
  }
  return mom;
}

}  // namespace

double grad_norm_sq(const Field3& u, bool* tail_warning, double* tail_fraction) {
  const auto mom = spectral_moments(u);
  const double frac = mom.total > 0.0 ? mom.tail / mom.total : 0.0;
  if (tail_fraction) *tail_fraction = frac;
  if (tail_warning) *tail_warning = frac > 1e-6;
  const double h3 = u.grid.h * u.grid.h * u.grid.h;
  return mom.ksq_sum * h3 / double(u.grid.size());
}

double spectral_tail_fraction(const Field3& u) {
  const auto mom = spectral_moments(u);
  return mom.total > 0.0 ? mom.tail / mom.total : 0.0;
}

double norm_lp_pow(const Field3& u, double q) {
  if (q < 1.0) throw std::invalid_argument("Lq norm needs q >= 1");
  double s = 0.0;
  for (const auto& z : u.values) s += std::pow(std::abs(z), q);
  return s * u.grid.h * u.grid.h * u.grid.h;
}

double norm_lp(const Field3& u, double q) {
  return std::pow(norm_lp_pow(u, q), 1.0 / q);
}

double parseval_mismatch(const Field3& u) {
  const double direct = norm_l2sq(u);
  auto uhat = transform_forward(u);
  double s = 0.0;
  for (const auto& z : uhat.values) s += std::norm(z);
  const double via_hat =
      s * u.grid.h * u.grid.h * u.grid.h / double(u.grid.size());
  const double scale = std::max(direct, via_hat);
  return scale > 0.0 ? std::abs(direct - via_hat) / scale : 0.0;
}

// --- calculus -----------------------------------------------------------------

std::array<Field3, 3> spectral_gradient(const Field3& u) {
  auto uhat = transform_forward(u);
  const int n = u.grid.n;
  std::array<Field3, 3> out;
  for (int axis = 0; axis < 3; ++axis) {
    Field3 d;
    d.grid = u.grid;
    d.values.resize(u.grid.size());
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
      const double ki = u.grid.wavenumber(i);
      for (int j = 0; j < n; ++j) {
        const double kj = u.grid.wavenumber(j);
        for (int k = 0; k < n; ++k, ++idx) {
          const double kk = u.grid.wavenumber(k);
          const double kax = axis == 0 ? ki : (axis == 1 ? kj : kk);
          d.values[idx] = cplx(0.0, kax) * uhat.values[idx];
        }
      }
    }
    out[axis] = transform_inverse(d);
  }
  return out;
}

Field3 spectral_laplacian(const Field3& u) {
  auto uhat = transform_forward(u);
  const int n = u.grid.n;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const double ki = u.grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double kj = u.grid.wavenumber(j);
      for (int k = 0; k < n; ++k, ++idx) {
        const double kk = u.grid.wavenumber(k);
        uhat.values[idx] *= -(ki * ki + kj * kj + kk * kk);
      }
    }
  }
  return transform_inverse(uhat);
}

Field3 x_dot_grad(const Field3& u) {
  const auto grad = spectral_gradient(u);
  Field3 out = Field3::zeros(u.grid);
  const int n = u.grid.n;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const double x = u.grid.coord(i);
    for (int j = 0; j < n; ++j) {
      const double y = u.grid.coord(j);
      for (int k = 0; k < n; ++k, ++idx) {
        const double z = u.grid.coord(k);
        out.values[idx] = x * grad[0].values[idx] + y * grad[1].values[idx] +
                          z * grad[2].values[idx];
      }
    }
  }
  return out;
}

RealField3 abs2(const Field3& u) {
  RealField3 out;
  out.grid = u.grid;
  out.values.resize(u.grid.size());
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = std::norm(u.values[i]);
  return out;
}

// --- interpolation and scaling -------------------------------------------------

namespace {

template <typename V>
auto trilinear(const Grid& g, const std::vector<V>& vals, double x, double y,
               double z) -> V {
  // zero extension outside the sampled box
  if (x < -g.box || y < -g.box || z < -g.box) return V{};
  const double fx = (x + g.box) / g.h;
  const double fy = (y + g.box) / g.h;
  const double fz = (z + g.box) / g.h;
  const int i0 = int(std::floor(fx));
  const int j0 = int(std::floor(fy));
  const int k0 = int(std::floor(fz));
  if (i0 >= g.n || j0 >= g.n || k0 >= g.n) return V{};
  const double tx = fx - i0, ty = fy - j0, tz = fz - k0;
  auto at = [&](int i, int j, int k) -> V {
    if (i >= g.n || j >= g.n || k >= g.n) return V{};  // clamp edge to zero
    return vals[g.index(i, j, k)];
  };
  V c00 = at(i0, j0, k0) * (1 - tz) + at(i0, j0, k0 + 1) * tz;
  V c01 = at(i0, j0 + 1, k0) * (1 - tz) + at(i0, j0 + 1, k0 + 1) * tz;
  V c10 = at(i0 + 1, j0, k0) * (1 - tz) + at(i0 + 1, j0, k0 + 1) * tz;
  V c11 = at(i0 + 1, j0 + 1, k0) * (1 - tz) + at(i0 + 1, j0 + 1, k0 + 1) * tz;
  V c0 = c00 * (1 - ty) + c01 * ty;
  V c1 = c10 * (1 - ty) + c11 * ty;
  return c0 * (1 - tx) + c1 * tx;
}

}  // namespace

cplx interpolate(const Field3& u, double x, double y, double z) {
  return trilinear(u.grid, u.values, x, y, z);
}

double interpolate(const RealField3& u, double x, double y, double z) {
  return trilinear(u.grid, u.values, x, y, z);
}

Field3 scale_field(const Field3& u, const ScaleSpec& s, bool* support_warning) {
  if (!(s.lambda > 0.0)) throw std::invalid_argument("scale factor must be > 0");
  const double amp = std::pow(s.lambda, s.a);
  const double arg = std::pow(s.lambda, s.b);
  const Grid& g = u.grid;

  Field3 out;
  if (u.has_generator()) {
    auto base = u.generator;
    Generator gen = [base, amp, arg](double x, double y, double z) {
      return amp * (*base)(arg * x, arg * y, arg * z);
    };
    out = Field3::from_generator(g, std::move(gen));
  } else {
    out.grid = g;
    out.values.resize(g.size());
    std::size_t idx = 0;
    for (int i = 0; i < g.n; ++i) {
      const double x = arg * g.coord(i);
      for (int j = 0; j < g.n; ++j) {
        const double y = arg * g.coord(j);
        for (int k = 0; k < g.n; ++k, ++idx) {
          out.values[idx] = amp * interpolate(u, x, y, arg * g.coord(k));
        }
      }
    }
  }

  if (support_warning) {
    const double shell = 0.9 * g.box;
    double outer = 0.0, total = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < g.n; ++i) {
      const double x = std::abs(g.coord(i));
      for (int j = 0; j < g.n; ++j) {
        const double y = std::abs(g.coord(j));
        for (int k = 0; k < g.n; ++k, ++idx) {
          const double m = std::norm(out.values[idx]);
          total += m;
          if (std::max({x, y, std::abs(g.coord(k))}) >= shell) outer += m;
        }
      }
    }
    *support_warning = total > 0.0 && outer > 1e-8 * total;
  }
  return out;
}

// --- serialization ---------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'S', 'P', 'F', '3'};
constexpr std::uint32_t kFormatVersion = 1;

}  // namespace

void save_field(const Field3& u, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  char header[32] = {};
  std::memcpy(header, kMagic, 4);
  std::uint32_t ver = kFormatVersion;
  std::memcpy(header + 4, &ver, 4);
  std::uint64_t n = std::uint64_t(u.grid.n);
  std::memcpy(header + 8, &n, 8);
  double box = u.grid.box;
  std::memcpy(header + 16, &box, 8);
  os.write(header, sizeof header);
  // (re, im) pairs, row-major in (i, j, k); assumes little-endian host
  os.write(reinterpret_cast<const char*>(u.values.data()),
           std::streamsize(u.values.size() * sizeof(cplx)));
  if (!os) throw std::runtime_error("write failure on " + path);
  os.close();

  nlohmann::json meta;
  meta["schema"] = 1;
  meta["format"] = "complex128-le";
  meta["order"] = "row-major-ijk";
  meta["n"] = u.grid.n;
  meta["box_half_width"] = u.grid.box;
  meta["spacing"] = u.grid.h;
  meta["count"] = u.values.size();
  std::ofstream js(path + ".json");
  if (!js) throw std::runtime_error("cannot write sidecar for " + path);
  js << meta.dump(2) << "\n";
}

Field3 load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char header[32];
  is.read(header, sizeof header);
  if (!is || std::memcmp(header, kMagic, 4) != 0)
    throw std::runtime_error(path + ": not a field file");
  std::uint32_t ver;
  std::memcpy(&ver, header + 4, 4);
  if (ver != kFormatVersion)
    throw std::runtime_error(path + ": unsupported format version");
  std::uint64_t n;
  std::memcpy(&n, header + 8, 8);
  double box;
  std::memcpy(&box, header + 16, 8);
  Grid g = Grid::make(int(n), box);
  std::vector<cplx> vals(g.size());
  is.read(reinterpret_cast<char*>(vals.data()),
          std::streamsize(vals.size() * sizeof(cplx)));
  if (!is) throw std::runtime_error(path + ": truncated field data");
  return Field3::from_values(g, std::move(vals));
}

}  // namespace spn
