#include "sggl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "transforms.hpp"

namespace sggl {

using detail::axis_r2r;
using detail::R2R;

constexpr double kPi = std::numbers::pi;

SpectralField::SpectralField(std::size_t n1_, std::size_t n2_, double L1_, double L2_)
    : n1(n1_), n2(n2_), L1(L1_), L2(L2_), a(n1_ * n2_) {}

bool SpectralField::same_shape(const SpectralField& o) const {
  return n1 == o.n1 && n2 == o.n2 && L1 == o.L1 && L2 == o.L2;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (!same_shape(o)) throw std::invalid_argument("SpectralField shape mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (!same_shape(o)) throw std::invalid_argument("SpectralField shape mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
  return *this;
}

SpectralField& SpectralField::operator*=(cplx c) {
  for (auto& v : a) v *= c;
  return *this;
}

double SpectralField::mu(std::size_t j, std::size_t k) const {
  return laplacian_eigenvalue(j, k, L1, L2);
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(cplx c, SpectralField a) { return a *= c; }

cplx inner(const SpectralField& u, const SpectralField& v) {
  if (!u.same_shape(v)) throw std::invalid_argument("SpectralField shape mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.a.size(); ++i) s += u.a[i] * std::conj(v.a[i]);
  return s;
}

double inner_re(const SpectralField& u, const SpectralField& v) { return inner(u, v).real(); }

double laplacian_eigenvalue(std::size_t j, std::size_t k, double L1, double L2) {
  const double kx = double(j) * kPi / L1;
  const double ky = double(k) * kPi / L2;
  return kx * kx + ky * ky;
}

double laplacian_eigenvalue(std::size_t j, std::size_t k, const GLParams& p) {
  return laplacian_eigenvalue(j, k, p.L1, p.L2);
}

Norms norms(const SpectralField& u) {
  Norms r;
  for (std::size_t j = 1; j <= u.n1; ++j) {
    for (std::size_t k = 1; k <= u.n2; ++k) {
      const double m2 = std::norm(u(j, k));
      r.l2_sq += m2;
      r.h1_sq += u.mu(j, k) * m2;
    }
  }
  return r;
}

double laplacian_norm_sq(const SpectralField& u) {
  double s = 0.0;
  for (std::size_t j = 1; j <= u.n1; ++j) {
    for (std::size_t k = 1; k <= u.n2; ++k) {
      const double m = u.mu(j, k);
      s += m * m * std::norm(u(j, k));
    }
  }
  return s;
}

SpectralField resize(const SpectralField& u, std::size_t n1, std::size_t n2) {
  SpectralField r(n1, n2, u.L1, u.L2);
  for (std::size_t j = 1; j <= std::min(n1, u.n1); ++j) {
    for (std::size_t k = 1; k <= std::min(n2, u.n2); ++k) r(j, k) = u(j, k);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Grid sizing

namespace {

bool smooth(std::size_t m) {
  for (std::size_t p : {2, 3, 5, 7, 11, 13}) {
    while (m % p == 0) m /= p;
  }
  return m == 1;
}

std::size_t grid_size(std::size_t n, double pad) {
  std::size_t M = static_cast<std::size_t>(std::ceil(pad * double(n)));
  M = std::max<std::size_t>(M, 1);
  while (!smooth(2 * (M + 1))) ++M;
  return M;
}

}  // namespace

GridSpec make_grid(std::size_t n1, std::size_t n2, double sigma, double pad) {
  if (pad <= 0.0) pad = std::max(std::ceil(sigma + 1.0), 3.0);
  GridSpec g;
  g.pad = pad;
  g.dealias = true;
  g.M1 = grid_size(n1, pad);
  g.M2 = grid_size(n2, pad);
  return g;
}

void check_grid(const GridSpec& g, std::size_t n1, std::size_t n2) {
  if (g.M1 < n1 || g.M2 < n2) throw GridError("grid smaller than the mode count");
  if (g.dealias && (double(g.M1) < g.pad * double(n1) || double(g.M2) < g.pad * double(n2))) {
    throw GridError("grid too coarse for the requested padding");
  }
}

PhysicalGrid::PhysicalGrid(std::size_t M1_, std::size_t M2_, double L1_, double L2_)
    : M1(M1_), M2(M2_), L1(L1_), L2(L2_), values(M1_ * M2_) {}

// ---------------------------------------------------------------------------
// Direct summation tables

namespace {

// T[a][j] for a = 1..M (rows), j = 1..n (cols); optional extra scale.
std::vector<double> sin_table(std::size_t M, std::size_t n, double scale) {
  std::vector<double> t(M * n);
  for (std::size_t a = 1; a <= M; ++a) {
    for (std::size_t j = 1; j <= n; ++j) {
      t[(a - 1) * n + (j - 1)] = scale * std::sin(kPi * double(j * a) / double(M + 1));
    }
  }
  return t;
}

std::vector<double> dcos_table(std::size_t M, std::size_t n, double L, double scale) {
  std::vector<double> t(M * n);
  for (std::size_t a = 1; a <= M; ++a) {
    for (std::size_t j = 1; j <= n; ++j) {
      t[(a - 1) * n + (j - 1)] =
          scale * (double(j) * kPi / L) * std::cos(kPi * double(j * a) / double(M + 1));
    }
  }
  return t;
}

// out[a][b] = sum_j sum_k X[j][k] tx[a][j] ty[b][k]
void separable_synth(const std::vector<cplx>& X, std::size_t n1, std::size_t n2,
                     const std::vector<double>& tx, std::size_t M1, const std::vector<double>& ty,
                     std::size_t M2, std::vector<cplx>& out) {
  std::vector<cplx> tmp(n1 * M2);
  for (std::size_t j = 0; j < n1; ++j) {
    for (std::size_t b = 0; b < M2; ++b) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n2; ++k) s += X[j * n2 + k] * ty[b * n2 + k];
      tmp[j * M2 + b] = s;
    }
  }
  out.assign(M1 * M2, 0.0);
  for (std::size_t a = 0; a < M1; ++a) {
    for (std::size_t j = 0; j < n1; ++j) {
      const double w = tx[a * n1 + j];
      for (std::size_t b = 0; b < M2; ++b) out[a * M2 + b] += w * tmp[j * M2 + b];
    }
  }
}

// Coefficients c_m, m = 0..N, of the cosine series of f from its values at
// x_a = a L/N, a = 1..N-1 (f vanishes at both ends), direct DCT-I.
// rows: a index; cols: independent columns.
std::vector<cplx> dct1_direct(const std::vector<cplx>& f, std::size_t N, std::size_t cols) {
  std::vector<cplx> c((N + 1) * cols, 0.0);
  for (std::size_t m = 0; m <= N; ++m) {
    const double h = (m == 0 || m == N) ? 1.0 / double(N) : 2.0 / double(N);
    for (std::size_t a = 1; a < N; ++a) {
      const double w = h * std::cos(kPi * double(m * a) / double(N));
      for (std::size_t q = 0; q < cols; ++q) c[m * cols + q] += w * f[(a - 1) * cols + q];
    }
  }
  return c;
}

// P[j][q] = sqrt(2/L) sum_m c[m][q] int_0^L cos(m pi x/L) sin(j pi x/L) dx,
// j = 1..n.
std::vector<cplx> cos_to_sin(const std::vector<cplx>& c, std::size_t N, std::size_t cols,
                             std::size_t n, double L) {
  std::vector<cplx> P(n * cols, 0.0);
  const double norm = std::sqrt(2.0 / L) * L / kPi;
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t m = (j + 1) % 2; m <= N; m += 2) {
      // j + m odd
      const double jj = double(j), mm = double(m);
      const double s = norm * 2.0 * jj / (jj * jj - mm * mm);
      for (std::size_t q = 0; q < cols; ++q) P[(j - 1) * cols + q] += s * c[m * cols + q];
    }
  }
  return P;
}

}  // namespace

// ---------------------------------------------------------------------------

PhysicalGrid to_physical(const SpectralField& u, const GridSpec& g, bool with_grad,
                         Backend backend) {
  check_grid(g, u.n1, u.n2);
  const std::size_t n1 = u.n1, n2 = u.n2, M1 = g.M1, M2 = g.M2;
  PhysicalGrid out(M1, M2, u.L1, u.L2);
  const double sx = std::sqrt(2.0 / u.L1), sy = std::sqrt(2.0 / u.L2);

  if (backend == Backend::Direct) {
    const auto tx = sin_table(M1, n1, sx);
    const auto ty = sin_table(M2, n2, sy);
    separable_synth(u.a, n1, n2, tx, M1, ty, M2, out.values);
    if (with_grad) {
      separable_synth(u.a, n1, n2, dcos_table(M1, n1, u.L1, sx), M1, ty, M2, out.grad_x);
      separable_synth(u.a, n1, n2, tx, M1, dcos_table(M2, n2, u.L2, sy), M2, out.grad_y);
    }
    return out;
  }

  // RODFT00 returns twice the sine sum, hence the 1/2 per axis.
  {
    auto& buf = out.values;
    const double s = 0.25 * sx * sy;
    for (std::size_t j = 1; j <= n1; ++j)
      for (std::size_t k = 1; k <= n2; ++k) buf[(j - 1) * M2 + (k - 1)] = s * u(j, k);
    // rows past n1 are zero
    axis_r2r(buf.data(), n1, M2, 1, R2R::Dst1);
    axis_r2r(buf.data(), M1, M2, 0, R2R::Dst1);
  }
  if (!with_grad) return out;

  {
    // cosine in x: rows 0..M1+1 with zero end rows
    const std::size_t P1 = M1 + 2;
    std::vector<cplx> buf(P1 * M2, 0.0);
    const double s = 0.25 * sx * sy;
    for (std::size_t j = 1; j <= n1; ++j) {
      const double kx = double(j) * kPi / u.L1;
      for (std::size_t k = 1; k <= n2; ++k) buf[j * M2 + (k - 1)] = s * kx * u(j, k);
    }
    axis_r2r(buf.data() + M2, n1, M2, 1, R2R::Dst1);
    axis_r2r(buf.data(), P1, M2, 0, R2R::Dct1);
    out.grad_x.assign(buf.begin() + M2, buf.begin() + (M1 + 1) * M2);
  }
  {
    const std::size_t P2 = M2 + 2;
    std::vector<cplx> buf(M1 * P2, 0.0);
    const double s = 0.25 * sx * sy;
    for (std::size_t j = 1; j <= n1; ++j) {
      for (std::size_t k = 1; k <= n2; ++k) {
        buf[(j - 1) * P2 + k] = s * (double(k) * kPi / u.L2) * u(j, k);
      }
    }
    axis_r2r(buf.data() + 1, M1, n2, 0, R2R::Dst1, P2);
    axis_r2r(buf.data(), M1, P2, 1, R2R::Dct1);
    out.grad_y.resize(M1 * M2);
    for (std::size_t a = 0; a < M1; ++a)
      for (std::size_t b = 0; b < M2; ++b) out.grad_y[a * M2 + b] = buf[a * P2 + b + 1];
  }
  return out;
}

SpectralField to_spectral(const PhysicalGrid& grid, std::size_t n1, std::size_t n2,
                          Backend backend) {
  if (grid.M1 < n1 || grid.M2 < n2) throw GridError("to_spectral: grid smaller than mode count");
  if (grid.values.size() != grid.M1 * grid.M2) throw GridError("to_spectral: malformed grid");
  const std::size_t M1 = grid.M1, M2 = grid.M2;
  SpectralField u(n1, n2, grid.L1, grid.L2);
  const double sx = std::sqrt(2.0 / grid.L1), sy = std::sqrt(2.0 / grid.L2);
  const double hx = grid.L1 / double(M1 + 1), hy = grid.L2 / double(M2 + 1);

  if (backend == Backend::Direct) {
    const auto tx = sin_table(M1, n1, sx * hx);
    const auto ty = sin_table(M2, n2, sy * hy);
    std::vector<cplx> tmp(M1 * n2);
    for (std::size_t a = 0; a < M1; ++a)
      for (std::size_t k = 0; k < n2; ++k) {
        cplx s = 0.0;
        for (std::size_t b = 0; b < M2; ++b) s += grid.values[a * M2 + b] * ty[b * n2 + k];
        tmp[a * n2 + k] = s;
      }
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t k = 0; k < n2; ++k) {
        cplx s = 0.0;
        for (std::size_t a = 0; a < M1; ++a) s += tx[a * n1 + j] * tmp[a * n2 + k];
        u.a[j * n2 + k] = s;
      }
    return u;
  }

  std::vector<cplx> buf = grid.values;
  axis_r2r(buf.data(), M1, M2, 1, R2R::Dst1);
  axis_r2r(buf.data(), M1, n2, 0, R2R::Dst1, M2);  // only the kept columns
  const double s = 0.25 * sx * sy * hx * hy;
  for (std::size_t j = 1; j <= n1; ++j)
    for (std::size_t k = 1; k <= n2; ++k) u(j, k) = s * buf[(j - 1) * M2 + (k - 1)];
  return u;
}

SpectralField to_spectral_mixed(const std::vector<cplx>& values, std::size_t M1, std::size_t M2,
                                double L1, double L2, int cos_axis, std::size_t n1,
                                std::size_t n2, Backend backend) {
  if (M1 < n1 || M2 < n2) throw GridError("to_spectral_mixed: grid smaller than mode count");
  if (values.size() != M1 * M2) throw GridError("to_spectral_mixed: malformed grid");
  SpectralField u(n1, n2, L1, L2);

  // Work in (cosine axis, sine axis) orientation: rows follow the cosine axis.
  const std::size_t Mc = cos_axis == 0 ? M1 : M2;
  const std::size_t Ms = cos_axis == 0 ? M2 : M1;
  const std::size_t nc = cos_axis == 0 ? n1 : n2;
  const std::size_t ns = cos_axis == 0 ? n2 : n1;
  const double Lc = cos_axis == 0 ? L1 : L2;
  const double Ls = cos_axis == 0 ? L2 : L1;
  const std::size_t Nc = Mc + 1;
  auto val = [&](std::size_t r, std::size_t q) {  // r along cos axis, q along sine axis
    return cos_axis == 0 ? values[r * M2 + q] : values[q * M2 + r];
  };

  // Step 1: sine-axis quadrature, keeping ns modes. S[r][k], r = 0..Mc-1.
  const double ss = std::sqrt(2.0 / Ls) * Ls / double(Ms + 1);
  std::vector<cplx> S(Mc * ns);
  if (backend == Backend::Direct) {
    const auto t = sin_table(Ms, ns, ss);
    for (std::size_t r = 0; r < Mc; ++r)
      for (std::size_t k = 0; k < ns; ++k) {
        cplx acc = 0.0;
        for (std::size_t q = 0; q < Ms; ++q) acc += val(r, q) * t[q * ns + k];
        S[r * ns + k] = acc;
      }
  } else {
    std::vector<cplx> buf(Mc * Ms);
    for (std::size_t r = 0; r < Mc; ++r)
      for (std::size_t q = 0; q < Ms; ++q) buf[r * Ms + q] = val(r, q);
    axis_r2r(buf.data(), Mc, Ms, 1, R2R::Dst1);
    for (std::size_t r = 0; r < Mc; ++r)
      for (std::size_t k = 0; k < ns; ++k) S[r * ns + k] = 0.5 * ss * buf[r * Ms + k];
  }

  // Step 2: cosine coefficients along the remaining axis, m = 0..Nc.
  std::vector<cplx> c;
  if (backend == Backend::Direct) {
    c = dct1_direct(S, Nc, ns);
  } else {
    c.assign((Nc + 1) * ns, 0.0);
    for (std::size_t r = 0; r < Mc; ++r)
      for (std::size_t k = 0; k < ns; ++k) c[(r + 1) * ns + k] = S[r * ns + k];
    axis_r2r(c.data(), Nc + 1, ns, 0, R2R::Dct1);
    for (std::size_t m = 0; m <= Nc; ++m) {
      const double h = (m == 0 || m == Nc) ? 0.5 / double(Nc) : 1.0 / double(Nc);
      for (std::size_t k = 0; k < ns; ++k) c[m * ns + k] *= h;
    }
  }

  // Step 3: exact cosine -> sine coupling.
  const auto P = cos_to_sin(c, Nc, ns, nc, Lc);
  for (std::size_t j = 0; j < nc; ++j)
    for (std::size_t k = 0; k < ns; ++k) {
      if (cos_axis == 0) u.a[j * n2 + k] = P[j * ns + k];
      else u.a[k * n2 + j] = P[j * ns + k];
    }
  return u;
}

// ---------------------------------------------------------------------------

double lp_norm_pow(const PhysicalGrid& grid, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm_pow: p < 1");
  const double half = 0.5 * p;
  double s = 0.0;
  if (half == std::floor(half) && half <= 16) {
    const int e = static_cast<int>(half);
    for (const auto& v : grid.values) {
      const double m2 = std::norm(v);
      double t = 1.0;
      for (int i = 0; i < e; ++i) t *= m2;
      s += t;
    }
  } else {
    for (const auto& v : grid.values) s += std::pow(std::abs(v), p);
  }
  return s * grid.weight();
}

double mixed_term(const PhysicalGrid& grid, double sigma) {
  if (!grid.has_grad()) throw std::logic_error("mixed_term: gradients not populated");
  const bool integral = sigma == std::floor(sigma) && sigma >= 0.0 && sigma <= 16.0;
  const int e = integral ? static_cast<int>(sigma) : 0;
  double s = 0.0;
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    const double g2 = std::norm(grid.grad_x[i]) + std::norm(grid.grad_y[i]);
    const double m2 = std::norm(grid.values[i]);
    double w = 1.0;
    if (integral)
      for (int k = 0; k < e; ++k) w *= m2;
    else
      w = std::pow(m2, sigma);
    s += w * g2;
  }
  return s * grid.weight();
}

double grad_sq_quadrature(const SpectralField& u, const GridSpec& g) {
  // The gradient does not vanish on the boundary, so the interior rule is only
  // first order here. Use the trapezoid rule on the closed grid instead.
  const double c = 2.0 / std::sqrt(u.L1 * u.L2);
  auto axis = [&](std::size_t n, std::size_t M, double L, bool closed, bool cosine) {
    // table[node][mode] of (k pi/L) cos or sin at the nodes
    const std::size_t first = closed ? 0 : 1, last = closed ? M + 1 : M;
    std::vector<double> t((last - first + 1) * n);
    for (std::size_t a = first; a <= last; ++a)
      for (std::size_t k = 1; k <= n; ++k) {
        const double arg = double(k) * kPi * double(a) / double(M + 1);
        t[(a - first) * n + (k - 1)] = cosine ? double(k) * kPi / L * std::cos(arg) : std::sin(arg);
      }
    return t;
  };
  auto component = [&](bool x_dir) {
    const std::size_t nd = x_dir ? u.n1 : u.n2, no = x_dir ? u.n2 : u.n1;
    const std::size_t Md = x_dir ? g.M1 : g.M2, Mo = x_dir ? g.M2 : g.M1;
    const double Ld = x_dir ? u.L1 : u.L2, Lo = x_dir ? u.L2 : u.L1;
    const auto cd = axis(nd, Md, Ld, true, true);
    const auto so = axis(no, Mo, Lo, false, false);
    // T[jd][b] = sum over the other index of a * sin
    std::vector<cplx> T(nd * Mo);
    for (std::size_t jd = 1; jd <= nd; ++jd)
      for (std::size_t b = 0; b < Mo; ++b) {
        cplx s = 0.0;
        for (std::size_t jo = 1; jo <= no; ++jo)
          s += (x_dir ? u(jd, jo) : u(jo, jd)) * so[b * no + (jo - 1)];
        T[(jd - 1) * Mo + b] = s;
      }
    double sum = 0.0;
    for (std::size_t a = 0; a <= Md + 1; ++a) {
      const double w = (a == 0 || a == Md + 1) ? 0.5 : 1.0;
      for (std::size_t b = 0; b < Mo; ++b) {
        cplx v = 0.0;
        for (std::size_t jd = 1; jd <= nd; ++jd) v += cd[a * nd + (jd - 1)] * T[(jd - 1) * Mo + b];
        sum += w * std::norm(c * v);
      }
    }
    return sum;
  };
  const double weight = u.L1 * u.L2 / double((g.M1 + 1) * (g.M2 + 1));
  return (component(true) + component(false)) * weight;
}

}  // namespace sggl
