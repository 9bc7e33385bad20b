#pragma once

// Model constants, noise constants and run configuration shared by every
// module. All types are plain values and immutable once built.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sggl {

using cplx = std::complex<double>;

/// Complex 2-vector (x and y components) for the derivative-term coefficients.
using CVec2 = std::array<cplx, 2>;

/// Euclidean norm sqrt(|v_x|^2 + |v_y|^2).
double norm(const CVec2& v);

// ---------------------------------------------------------------------------
// Errors

/// Bad user-supplied configuration. `key()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what);
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Physical grid too coarse for the requested operation.
class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An inequality check was asked to run outside the parameter regime in
/// which it is a theorem.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------

/// Constants of the generalized Ginzburg-Landau drift
///   (1+i alpha) Lap u - (1 - i beta)|u|^{2 sigma} u + gamma u + F(u)
/// on the rectangle (0,L1) x (0,L2).
///
/// Construction only rejects values for which the model is meaningless
/// (sigma <= 0, non-positive side lengths, negative gamma, non-finite input).
/// Whether the existence/uniqueness hypotheses hold is reported by
/// validate_regime(), so that out-of-regime parameters can still be probed.
struct GLParams {
  double alpha = 0.0;
  double beta = 0.5;
  double gamma = 0.1;
  double sigma = 3.0;
  CVec2 lambda1{};
  CVec2 lambda2{};
  double L1 = 3.141592653589793;
  double L2 = 3.141592653589793;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  /// sqrt(2 sigma + 1) / sigma, the upper bound on |beta|.
  double beta_threshold() const;

  /// True when sigma is an integer, so |u|^{2 sigma} u is a polynomial in u, conj(u).
  bool integer_sigma() const;
};

/// Growth/Lipschitz constants of the jump coefficient:
///   ||g(t,u)||^2_{L2(nu;H)}          <= k1 ||u||^2 + k2 ||grad u||^2
///   ||g(t,u) - g(t,v)||^2_{L2(nu;H)} <= k3 ||u-v||^2 + k4 ||grad(u-v)||^2
/// and the moment order p in [2, 2 sigma).
struct NoiseConstants {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
  double p = 2.0;

  void validate(double sigma) const;
};

struct RegimeReport {
  bool beta_ok = false;     // 0 < |beta| < sqrt(2 sigma + 1)/sigma
  bool sigma_ok = false;    // sigma > 2
  bool p_ok = false;        // 2 <= p < 2 sigma
  bool k_small_ok = false;  // advisory, see k2_smallness_bound()

  bool all() const { return beta_ok && sigma_ok && p_ok && k_small_ok; }
  bool operator==(const RegimeReport&) const = default;
};

/// Placeholder for the smallness requirement 3/2 - (2 C1^2 + 1) k2 > 0 of the
/// L^2 energy estimate. C1 is a martingale-inequality constant with no
/// computable value; we take C1 = 1, which gives k2 < 1/2.
inline constexpr double kAssumedBdgConstant = 1.0;
double k2_smallness_bound();

/// Pure; out-of-regime input is reported, never rejected.
RegimeReport validate_regime(const GLParams& params, const NoiseConstants& noise);

/// Simulation controls.
struct SimConfig {
  std::size_t n1 = 8;
  std::size_t n2 = 8;
  double dt = 1e-3;
  double t_end = 0.1;
  double blowup_radius = 1e6;
  std::uint64_t seed = 42;
  std::size_t n_paths = 1;
  /// Full state kept every `snap_every` grid steps (0: initial and final only).
  std::size_t snap_every = 0;
  /// Collocation padding factor; 0 selects ceil(sigma + 1).
  double pad = 0.0;

  void validate() const;
  std::size_t n_steps() const;
};

/// Small parameters of the monotonicity estimate together with the constants
/// derived from them (see derive_monotonicity_config in inequality_lab.hpp).
struct MonotonicityConfig {
  // Young-inequality splitting parameters, named by their index.
  double eps8 = 0.2, eps9 = 1e-3;
  double eps10 = 0.2, eps11 = 1e-3;
  double eps12 = 0.2, eps13 = 0.1;
  double eps14 = 0.2, eps15 = 0.1;

  // Derived; filled by derive_monotonicity_config().
  bool derived = false;
  double eps_tilde = 0.0;  // eps8 + eps10 + eps12 + eps14
  double eps_hat = 0.0;    // eps9 + eps11
  double pairing_weight = 0.0;  // |2 lambda1 + lambda2| + |lambda1|
  double c_8_9 = 0.0;
  double c_8_9_gamma = 0.0;  // c_8_9 + gamma
  double c_10_11 = 0.0;
  double c_12_13 = 0.0;
  double c_14_15 = 0.0;
  double K = 0.0;  // -(1 - sigma|beta|/sqrt(2 sigma+1)) 2^{-2 sigma} + eps_hat
  double gradient_margin = 0.0;  // -2 + 2 eps_tilde + k4
  bool contraction_valid = false;

  void validate_eps() const;
};

}  // namespace sggl
