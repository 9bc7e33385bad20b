#pragma once

// In-place real-to-real transforms along one axis of a row-major P1 x P2
// complex buffer with row stride ld (0: P2). Real and imaginary parts are
// transformed independently.
//
//   Dst1 (length P):  Y_k = 2 sum_{j=0}^{P-1} X_j sin(pi (j+1)(k+1) / (P+1))
//   Dct1 (length P):  Y_k = X_0 + (-1)^k X_{P-1} + 2 sum_{j=1}^{P-2} X_j cos(pi j k / (P-1))

#include <complex>
#include <cstddef>

namespace sggl::detail {

enum class R2R { Dst1, Dct1 };

void axis_r2r(std::complex<double>* data, std::size_t P1, std::size_t P2, int axis, R2R kind,
              std::size_t ld = 0);

}  // namespace sggl::detail
