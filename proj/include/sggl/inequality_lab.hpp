#pragma once

// Numerical checks of the inequalities behind the monotonicity argument.
// Every "<= 0" check reports a slack together with a scale (the largest
// individual term), and counts a violation when slack > tol * scale.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sggl/core_types.hpp"
#include "sggl/jump_noise.hpp"
#include "sggl/rng.hpp"
#include "sggl/spectral.hpp"

namespace sggl {

// ---------------------------------------------------------------------------
// Constants

/// Smallest Y with c A^alpha B^(1-alpha) <= eps A + Y B for all A, B >= 0,
/// 0 < alpha < 1: Y = (1-alpha) c^(1/(1-alpha)) (alpha/eps)^(alpha/(1-alpha)).
double young_constant(double c, double alpha, double eps);

/// G_q with ||u||_q <= G_q ||u||^(2/q) ||grad u||^(1-2/q) for every u in H^1_0
/// of a planar domain, q >= 2. G_q = 2^-(1/2-1/q) on [2,4]; above 4 the bound
/// G_q^q = (q^2/32) G_{q-2}^{q-2} is used. Derivation in docs/constants.md.
double gn_constant(double q);

struct GnEstimate {
  double q = 0.0;
  double best_ratio = 0.0;  // largest ||u||_q / (||u||^(2/q) ||grad u||^(1-2/q)) found
  double bound = 0.0;       // gn_constant(q)
};

/// Random search plus coordinate ascent over band-limited fields on the
/// rectangle. A cross-check: best_ratio must stay below bound.
GnEstimate gn_extremize(double q, const GLParams& params, std::size_t n, std::size_t samples,
                        std::uint64_t seed);

/// Young-chain constants for a pairing weight a (see docs/constants.md).
struct ChainConstants {
  double c_8_9 = 0.0, c_10_11 = 0.0, c_12_13 = 0.0, c_14_15 = 0.0;
};
ChainConstants chain_constants(double a, double sigma, const MonotonicityConfig& eps);

/// Fills the derived fields of `eps`. Throws RegimeError for sigma <= 2 and
/// ConfigError for non-positive splitting parameters.
MonotonicityConfig derive_monotonicity_config(MonotonicityConfig eps, const GLParams& params,
                                              const NoiseConstants& noise);

// ---------------------------------------------------------------------------
// Matrix M(beta, sigma)

struct MMatrix {
  double sigma = 0.0, beta = 0.0, lambda_beta = 0.0;
  /// Symmetric 2x2 real form [[2 sigma + 1, -sigma beta], [-sigma beta, 1]], row-major.
  std::array<double, 4> entries() const;
};

double lambda_beta(double sigma, double beta);
MMatrix make_mmatrix(double sigma, double beta);

// ---------------------------------------------------------------------------
// Pointwise and field checks

struct OkazawaYokota {
  double ratio = 0.0;  // |Im P| / Re P
  double bound = 0.0;  // |p-2| / (2 sqrt(p-1))
  double re = 0.0;     // Re P
};

/// P = <|z|^(p-2) z - |w|^(p-2) w, z - w> in C^d. Throws std::invalid_argument
/// when z = w or either vector is zero.
OkazawaYokota okazawa_yokota_ratio(const std::vector<cplx>& z, const std::vector<cplx>& w,
                                   double p);

struct Slack {
  double slack = 0.0;  // the checked quantity must satisfy slack <= tol * scale
  double scale = 0.0;
  bool violated(double tol) const { return slack > tol * scale; }
};

/// 2 Re (1 + i beta) int |u|^(2 sigma) conj(u) Lap u + 2 lambda_beta int |u|^(2 sigma) |grad u|^2.
Slack m_form_check(const SpectralField& u, double sigma, double beta, const GridSpec& g);

struct Lemma35Result {
  Slack bound;    // Re I + (1 - sigma|beta|/sqrt(2 sigma+1)) 2^(-2 sigma) ||w||^(2 sigma+2)
  Slack m_lower;  // 2^(-2 sigma) ||w||^(2 sigma+2) - m
  double re_I = 0.0, m = 0.0, n = 0.0, w_pow = 0.0;
};

/// Throws RegimeError unless 0 < |beta| < sqrt(2 sigma+1)/sigma (unless allow_any).
Lemma35Result lemma35_check(const SpectralField& u, const SpectralField& phi,
                            const GLParams& params, const GridSpec& g, bool allow_any = false);

enum class Pairing { J, K };

struct Lemma36Result {
  double re = 0.0;     // Re J (or Re K)
  double bound = 0.0;
  Slack slack;         // re - bound
};

/// Re J = (F1(u) - F1(phi), u - phi) with F1(v) = ((2 lambda1 + lambda2) . grad v)|v|^2, or
/// Re K with F2(v) = (lambda1 . grad conj(v)) v^2, against its Young-chain bound.
/// Throws std::logic_error if `cfg` has not been derived.
Lemma36Result lemma36_bound(const SpectralField& u, const SpectralField& phi,
                            const MonotonicityConfig& cfg, const GLParams& params,
                            const GridSpec& g, Pairing which = Pairing::J);

/// r'(s) for phi with ||phi||^2 = l2_sq and ||grad phi||^2 = h1_sq.
double r_prime(const MonotonicityConfig& cfg, double sigma, double l2_sq, double h1_sq,
               double k3);
/// r(t) by the trapezoid rule, r(0) = 0.
std::vector<double> r_function(const std::vector<double>& t, const std::vector<double>& l2_sq,
                               const std::vector<double>& h1_sq, const MonotonicityConfig& cfg,
                               double sigma, double k3);

struct Monotonicity34 {
  Slack slack;  // lhs of the combined bound
  double r_term = 0.0, drift_term = 0.0, noise_term = 0.0;
};

/// -r'(phi) ||w||^2 + 2 Re <P_n G(u1) - P_n G(u2), w> + sum nu ||P_n g(u1) - P_n g(u2)||^2
/// with phi = u2. Throws RegimeError unless cfg.contraction_valid (or allow_any).
Monotonicity34 monotonicity_34_check(const SpectralField& u1, const SpectralField& u2,
                                     const GLParams& params, const JumpModel& model,
                                     const MonotonicityConfig& cfg, const GridSpec& g,
                                     bool allow_any = false);

// ---------------------------------------------------------------------------
// Sampling

/// Band-limited field with complex Gaussian coefficients, std ~ (j^2+k^2)^(-decay/2),
/// normalized to ||u|| = amplitude.
SpectralField random_field(std::size_t n1, std::size_t n2, const GLParams& params, Rng& rng,
                           double decay, double amplitude);

/// Pair (u, phi) for which Re I > 0 at |beta| beyond the threshold:
/// u = A rho e^{i theta} v, phi = A v with a fixed real field v and (rho, theta)
/// chosen to push Im/Re of the nonlinear pairing towards its extreme.
std::pair<SpectralField, SpectralField> negative_control_pair(const GLParams& params,
                                                              std::size_t n, double amplitude);

struct CheckResult {
  std::string check;
  double sigma = 0.0, beta = 0.0;
  std::size_t samples = 0, violations = 0;
  double max_slack = 0.0;  // max of slack / scale (raw slack for count-type checks)
  double tolerance = 0.0;
  bool negative_control = false;
};

struct Witness {
  std::string check;
  SpectralField u, phi;
};

struct SuiteConfig {
  std::size_t samples = 1000;       // field-pair checks
  std::size_t oy_samples = 100000;  // Okazawa-Yokota draws
  std::size_t n = 6;                // modes per axis of sampled fields
  std::uint64_t seed = 7;
  std::size_t threads = 0;
  bool negative_control = false;
  std::size_t max_witnesses = 8;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  std::vector<Witness> witnesses;
  /// True when every in-regime check passed and every negative control found a violation.
  bool ok() const;
};

SuiteReport run_inequality_suite(const GLParams& params, const JumpModel& model,
                                 const MonotonicityConfig& eps, const SuiteConfig& cfg);

}  // namespace sggl
