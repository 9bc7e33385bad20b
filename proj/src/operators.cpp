#include "sggl/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sggl {

namespace {

void require_grad(const PhysicalGrid& g, const char* who) {
  if (!g.has_grad()) throw std::logic_error(std::string(who) + ": gradients not populated");
}

bool is_zero(const CVec2& v) { return v[0] == 0.0 && v[1] == 0.0; }

PhysicalGrid like(const PhysicalGrid& g) { return PhysicalGrid(g.M1, g.M2, g.L1, g.L2); }

// |u|^{2 sigma}, exact multiplication for small integer sigma.
double mod_pow(double m2, double sigma) {
  if (sigma == 3.0) return m2 * m2 * m2;
  if (sigma == 2.0) return m2 * m2;
  if (sigma == 1.0) return m2;
  return std::pow(m2, sigma);
}

}  // namespace

SpectralField apply_A(const SpectralField& u, const GLParams& params) {
  SpectralField r = u;
  const cplx f(1.0, params.alpha);
  for (std::size_t j = 1; j <= u.n1; ++j)
    for (std::size_t k = 1; k <= u.n2; ++k) r(j, k) = -f * u.mu(j, k) * u(j, k);
  return r;
}

PhysicalGrid eval_T(const PhysicalGrid& grid, const GLParams& params) {
  PhysicalGrid out = like(grid);
  const cplx f(-1.0, params.beta);  // -(1 - i beta)
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    const cplx u = grid.values[i];
    out.values[i] = f * mod_pow(std::norm(u), params.sigma) * u;
  }
  return out;
}

FComponents eval_F_components(const PhysicalGrid& grid, const GLParams& params) {
  require_grad(grid, "eval_F");
  const auto& l1 = params.lambda1;
  const auto& l2 = params.lambda2;
  FComponents F;
  F.fx.resize(grid.values.size());
  F.fy.resize(grid.values.size());
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    const cplx u = grid.values[i];
    const double m2 = std::norm(u);
    const cplx u2 = u * u;
    const cplx gx = grid.grad_x[i], gy = grid.grad_y[i];
    F.fx[i] = l1[0] * (2.0 * m2 * gx + u2 * std::conj(gx)) + l2[0] * gx * m2;
    F.fy[i] = l1[1] * (2.0 * m2 * gy + u2 * std::conj(gy)) + l2[1] * gy * m2;
  }
  return F;
}

PhysicalGrid eval_F_direct(const PhysicalGrid& grid, const GLParams& params) {
  const auto F = eval_F_components(grid, params);
  PhysicalGrid out = like(grid);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = F.fx[i] + F.fy[i];
  return out;
}

PhysicalGrid eval_F_identity(const PhysicalGrid& grid, const GLParams& params, bool as_printed) {
  require_grad(grid, "eval_F_identity");
  const auto& l1 = params.lambda1;
  const CVec2 c{2.0 * l1[0] + params.lambda2[0], 2.0 * l1[1] + params.lambda2[1]};
  PhysicalGrid out = like(grid);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const cplx u = grid.values[i];
    const cplx gx = grid.grad_x[i], gy = grid.grad_y[i];
    const cplx hx = as_printed ? gx : std::conj(gx);
    const cplx hy = as_printed ? gy : std::conj(gy);
    out.values[i] = (c[0] * gx + c[1] * gy) * std::norm(u) + (l1[0] * hx + l1[1] * hy) * u * u;
  }
  return out;
}

SpectralField project_F(const PhysicalGrid& grid, const GLParams& params, std::size_t n1,
                        std::size_t n2) {
  SpectralField r(n1, n2, grid.L1, grid.L2);
  const bool x_on = !(params.lambda1[0] == 0.0 && params.lambda2[0] == 0.0);
  const bool y_on = !(params.lambda1[1] == 0.0 && params.lambda2[1] == 0.0);
  if (!x_on && !y_on) return r;
  const auto F = eval_F_components(grid, params);
  if (x_on) r += to_spectral_mixed(F.fx, grid.M1, grid.M2, grid.L1, grid.L2, 0, n1, n2);
  if (y_on) r += to_spectral_mixed(F.fy, grid.M1, grid.M2, grid.L1, grid.L2, 1, n1, n2);
  return r;
}

DriftDecomposition eval_G(const SpectralField& u, const PhysicalGrid& grid,
                          const GLParams& params) {
  DriftDecomposition d;
  d.a_part = apply_A(u, params);
  d.gamma_part = cplx(params.gamma) * u;
  d.t_part = to_spectral(eval_T(grid, params), u.n1, u.n2);
  if (is_zero(params.lambda1) && is_zero(params.lambda2)) {
    d.f_part = SpectralField(u.n1, u.n2, u.L1, u.L2);
  } else {
    d.f_part = project_F(grid, params, u.n1, u.n2);
  }
  d.total = d.a_part;
  d.total += d.t_part;
  d.total += d.gamma_part;
  d.total += d.f_part;
  return d;
}

DriftDecomposition eval_G(const SpectralField& u, const GLParams& params, const GridSpec& g) {
  return eval_G(u, to_physical(u, g, true), params);
}

Identity9Report identity9_check(const SpectralField& u, const GLParams& params,
                                const GridSpec& g) {
  const PhysicalGrid grid = to_physical(u, g, true);
  const auto Fd = eval_F_direct(grid, params);
  const auto Fi = eval_F_identity(grid, params, false);
  const auto Fp = eval_F_identity(grid, params, true);
  double scale = 0.0, dc = 0.0, dp = 0.0;
  for (std::size_t i = 0; i < Fd.values.size(); ++i) {
    scale = std::max(scale, std::abs(Fd.values[i]));
    dc = std::max(dc, std::abs(Fd.values[i] - Fi.values[i]));
    dp = std::max(dp, std::abs(Fd.values[i] - Fp.values[i]));
  }
  if (scale == 0.0) return {};
  return {dc / scale, dp / scale};
}

}  // namespace sggl
