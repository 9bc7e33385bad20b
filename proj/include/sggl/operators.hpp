#pragma once

// Drift of the Galerkin system: A u = (1+i alpha) Lap u and
// B u = -(1 - i beta)|u|^{2 sigma} u + gamma u + F(u), with
// F(u) = lambda1 . grad(|u|^2 u) + (lambda2 . grad u)|u|^2.
// The dot products are bilinear (no conjugation of lambda).

#include <vector>

#include "sggl/core_types.hpp"
#include "sggl/spectral.hpp"

namespace sggl {

struct DriftDecomposition {
  SpectralField a_part;      // (1+i alpha) Lap u
  SpectralField t_part;      // P_n T(u)
  SpectralField gamma_part;  // gamma u
  SpectralField f_part;      // P_n F(u)
  SpectralField total;
};

SpectralField apply_A(const SpectralField& u, const GLParams& params);

/// Pointwise -(1 - i beta)|u|^{2 sigma} u. Gradients are not propagated.
PhysicalGrid eval_T(const PhysicalGrid& grid, const GLParams& params);

/// Product-rule route: lambda1 . (2|u|^2 grad u + u^2 grad conj(u)) + (lambda2 . grad u)|u|^2.
PhysicalGrid eval_F_direct(const PhysicalGrid& grid, const GLParams& params);

/// Identity route: ((2 lambda1 + lambda2) . grad u)|u|^2 + (lambda1 . grad conj(u)) u^2.
/// With as_printed the last factor uses grad u instead; that variant is wrong
/// for complex fields and exists only for the discrepancy report.
PhysicalGrid eval_F_identity(const PhysicalGrid& grid, const GLParams& params,
                             bool as_printed = false);

/// x- and y-parts of F. The x-part is a cosine series in x and a sine series
/// in y (the y-part the reverse), which is what makes exact projection possible.
struct FComponents {
  std::vector<cplx> fx, fy;
};
FComponents eval_F_components(const PhysicalGrid& grid, const GLParams& params);

/// Exact P_n F(u) from a grid carrying values and gradients.
SpectralField project_F(const PhysicalGrid& grid, const GLParams& params, std::size_t n1,
                        std::size_t n2);

/// Drift decomposition using an already synthesized grid (values + gradients) of u.
DriftDecomposition eval_G(const SpectralField& u, const PhysicalGrid& grid,
                          const GLParams& params);
DriftDecomposition eval_G(const SpectralField& u, const GLParams& params, const GridSpec& g);

struct Identity9Report {
  double corrected = 0.0;   // max |F_direct - F_identity| / max |F_direct|
  double as_printed = 0.0;  // same for the verbatim form
};
Identity9Report identity9_check(const SpectralField& u, const GLParams& params,
                                const GridSpec& g);

}  // namespace sggl
