#pragma once

// Independent reference evaluations used as test oracles. Nothing here calls
// the transform code under test.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "sggl/spectral.hpp"

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

/// u(x, y) by direct summation of the sine series.
inline cplx eval(const sggl::SpectralField& u, double x, double y) {
  const double c = 2.0 / std::sqrt(u.L1 * u.L2);
  cplx s = 0.0;
  for (std::size_t j = 1; j <= u.n1; ++j)
    for (std::size_t k = 1; k <= u.n2; ++k)
      s += u(j, k) * std::sin(double(j) * pi * x / u.L1) * std::sin(double(k) * pi * y / u.L2);
  return c * s;
}

/// (du/dx, du/dy) by direct summation.
inline std::pair<cplx, cplx> grad(const sggl::SpectralField& u, double x, double y) {
  const double c = 2.0 / std::sqrt(u.L1 * u.L2);
  cplx gx = 0.0, gy = 0.0;
  for (std::size_t j = 1; j <= u.n1; ++j)
    for (std::size_t k = 1; k <= u.n2; ++k) {
      const double kx = double(j) * pi / u.L1, ky = double(k) * pi / u.L2;
      gx += u(j, k) * kx * std::cos(kx * x) * std::sin(ky * y);
      gy += u(j, k) * ky * std::sin(kx * x) * std::cos(ky * y);
    }
  return {c * gx, c * gy};
}

/// Gauss-Legendre rule on [0, L1] x [0, L2] with `panels` panels of 8 nodes per axis.
inline double integrate(double L1, double L2, int panels,
                        const std::function<double(double, double)>& f) {
  static const double xg[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                               -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
  static const double wg[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                               0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};
  const double hx = L1 / panels, hy = L2 / panels;
  double s = 0.0;
  for (int px = 0; px < panels; ++px)
    for (int a = 0; a < 8; ++a) {
      const double x = hx * (px + 0.5 + 0.5 * xg[a]);
      for (int py = 0; py < panels; ++py)
        for (int b = 0; b < 8; ++b) {
          const double y = hy * (py + 0.5 + 0.5 * xg[b]);
          s += wg[a] * wg[b] * f(x, y);
        }
    }
  return s * 0.25 * hx * hy;
}

}  // namespace oracle
