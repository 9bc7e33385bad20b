#pragma once

// Dirichlet sine eigenbasis on (0,L1)x(0,L2), collocation grids and the
// transforms between them.
//
//   e_jk(x,y) = 2/sqrt(L1 L2) sin(j pi x/L1) sin(k pi y/L2),   j,k >= 1
//
// Grids are the interior nodes x_a = a L1/(M1+1), a = 1..M1 (likewise in y).
// The fast path uses FFTW real-to-real transforms; the direct path is a
// separable O(n M^2) summation kept as the reference implementation.

#include <cstddef>
#include <vector>

#include "sggl/core_types.hpp"

namespace sggl {

struct SpectralField {
  std::size_t n1 = 0, n2 = 0;
  double L1 = 0.0, L2 = 0.0;
  std::vector<cplx> a;  // a[(j-1)*n2 + (k-1)]

  SpectralField() = default;
  SpectralField(std::size_t n1_, std::size_t n2_, double L1_, double L2_);
  SpectralField(std::size_t n1_, std::size_t n2_, const GLParams& p)
      : SpectralField(n1_, n2_, p.L1, p.L2) {}

  // 1-based mode indices.
  cplx& operator()(std::size_t j, std::size_t k) { return a[(j - 1) * n2 + (k - 1)]; }
  const cplx& operator()(std::size_t j, std::size_t k) const { return a[(j - 1) * n2 + (k - 1)]; }

  std::size_t size() const { return a.size(); }
  bool same_shape(const SpectralField& o) const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(cplx c);
  double mu(std::size_t j, std::size_t k) const;  // Laplacian eigenvalue of mode (j,k)
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(cplx c, SpectralField a);

/// Re sum a_jk conj(b_jk), the real L2 inner product (u, v).
double inner_re(const SpectralField& u, const SpectralField& v);
/// sum a_jk conj(b_jk), the complex pairing <u, v>.
cplx inner(const SpectralField& u, const SpectralField& v);

double laplacian_eigenvalue(std::size_t j, std::size_t k, double L1, double L2);
double laplacian_eigenvalue(std::size_t j, std::size_t k, const GLParams& p);

struct Norms {
  double l2_sq = 0.0;
  double h1_sq = 0.0;
};
Norms norms(const SpectralField& u);
/// ||Lap u||^2 = sum mu^2 |a|^2.
double laplacian_norm_sq(const SpectralField& u);

/// Copy of u truncated or zero-extended to n1 x n2 modes.
SpectralField resize(const SpectralField& u, std::size_t n1, std::size_t n2);

// ---------------------------------------------------------------------------

struct GridSpec {
  std::size_t M1 = 0, M2 = 0;
  /// Minimum padding factor that must hold (M >= pad n) when dealias is set.
  double pad = 0.0;
  bool dealias = true;
};

/// Smallest grid with M >= pad * n on each axis and 2(M+1) FFT-friendly.
/// pad <= 0 selects the default ceil(sigma + 1), never below 3 so that the
/// cubic derivative term is resolved as well.
GridSpec make_grid(std::size_t n1, std::size_t n2, double sigma, double pad = 0.0);

/// Throws GridError when the spec is too coarse for n1 x n2 and dealias is set.
void check_grid(const GridSpec& g, std::size_t n1, std::size_t n2);

struct PhysicalGrid {
  std::size_t M1 = 0, M2 = 0;
  double L1 = 0.0, L2 = 0.0;
  std::vector<cplx> values;  // values[(a-1)*M2 + (b-1)]
  std::vector<cplx> grad_x, grad_y;  // empty unless requested

  PhysicalGrid() = default;
  PhysicalGrid(std::size_t M1_, std::size_t M2_, double L1_, double L2_);

  bool has_grad() const { return !grad_x.empty() && !grad_y.empty(); }
  double weight() const { return L1 * L2 / double((M1 + 1) * (M2 + 1)); }
  double x(std::size_t a) const { return double(a) * L1 / double(M1 + 1); }
  double y(std::size_t b) const { return double(b) * L2 / double(M2 + 1); }
  cplx& at(std::size_t a, std::size_t b) { return values[(a - 1) * M2 + (b - 1)]; }
  const cplx& at(std::size_t a, std::size_t b) const { return values[(a - 1) * M2 + (b - 1)]; }
};

enum class Backend { Fast, Direct };

PhysicalGrid to_physical(const SpectralField& u, const GridSpec& g, bool with_grad,
                         Backend backend = Backend::Fast);

/// Quadrature projection onto the first n1 x n2 modes. Exact when the grid
/// function is a sine polynomial whose alias images miss the retained band.
SpectralField to_spectral(const PhysicalGrid& grid, std::size_t n1, std::size_t n2,
                          Backend backend = Backend::Fast);

/// Exact projection of a field that is a cosine polynomial in x and a sine
/// polynomial in y (cos_axis = 0), or the reverse (cos_axis = 1), and
/// vanishes on the boundary. The derivative nonlinearity splits into two such
/// pieces, for which a plain sine quadrature is not exact.
SpectralField to_spectral_mixed(const std::vector<cplx>& values, std::size_t M1, std::size_t M2,
                                double L1, double L2, int cos_axis, std::size_t n1,
                                std::size_t n2, Backend backend = Backend::Fast);

/// Integral of |u|^p over the domain by the interior-node rule.
double lp_norm_pow(const PhysicalGrid& grid, double p);
/// Integral of |u|^{2 sigma} |grad u|^2. Throws std::logic_error without gradients.
double mixed_term(const PhysicalGrid& grid, double sigma);
/// Integral of |grad_x|^2 + |grad_y|^2 by the trapezoid rule on the closed grid
/// (the gradient does not vanish on the boundary, so boundary nodes count).
double grad_sq_quadrature(const SpectralField& u, const GridSpec& g);

}  // namespace sggl
