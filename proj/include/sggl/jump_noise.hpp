#pragma once

// Finite-atom jump noise. Marks z_1..z_m carry intensities nu_i and weights
// h_i; jumps form a compound Poisson process of total rate Lambda = sum nu_i.
//
//   linear:     g(u, z_i) = c h_i u
//   quadratic:  g(u, z_i)(x) = h_i u(x) min(|u(x)|, cap) / 2
//
// A model with no marks is the noiseless system.

#include <cstdint>
#include <limits>
#include <vector>

#include "sggl/core_types.hpp"
#include "sggl/rng.hpp"
#include "sggl/spectral.hpp"

namespace sggl {

enum class NoiseFamily { Linear, Quadratic };

struct ConditionReport {
  bool c1 = false;  // linear growth in L2(nu; H)
  bool c2 = false;  // Lipschitz in L2(nu; H)
  bool c3 = false;  // |d_u g| <= h(z)|u| pointwise
};

struct JumpModel {
  std::vector<double> nu;
  std::vector<double> h;
  NoiseFamily family = NoiseFamily::Linear;
  double c = 0.1;
  double cap = std::numeric_limits<double>::infinity();
  double p = 2.0;  // moment order carried into NoiseConstants

  std::size_t marks() const { return nu.size(); }
  double total_rate() const;
  /// sum nu_i h_i
  double weighted_h() const;
  /// sum nu_i h_i^2
  double weighted_h2() const;
  /// c sum nu_i h_i for the linear family (its compensator is kappa u), 0 otherwise.
  double linear_kappa() const;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  /// Analytic constants of the family (infinite when a bound does not exist).
  NoiseConstants constants() const;
  ConditionReport conditions() const;
};

struct JumpEvent {
  double time = 0.0;
  std::size_t mark = 0;  // 0-based atom index
  bool operator==(const JumpEvent&) const = default;
};

/// Homogeneous Poisson arrival times of rate `rate` on [0, t_end].
std::vector<double> sample_jump_times(double rate, double t_end, Rng& rng);
/// Atom index with probability nu_i / Lambda.
std::size_t sample_mark(const JumpModel& model, Rng& rng);
/// Arrival times with marks, drawn alternately from one stream.
std::vector<JumpEvent> sample_events(const JumpModel& model, double t_end, Rng& rng);

/// P_n g(t, u, z_mark). The quadratic family is evaluated on the grid g.
SpectralField g_apply(const JumpModel& model, double t, const SpectralField& u, std::size_t mark,
                      const GridSpec& g);
/// sum_i nu_i P_n g(t, u, z_i).
SpectralField compensator(const JumpModel& model, double t, const SpectralField& u,
                          const GridSpec& g);

/// Deterministic step integrand xi(t, z): constant on [breaks[i], breaks[i+1]).
struct StepIntegrand {
  std::vector<double> breaks;
  std::vector<std::vector<SpectralField>> values;  // [interval][mark]

  const SpectralField& at(double t, std::size_t mark) const;
  /// sum_i nu_i int_0^T xi(t, z_i) dt
  SpectralField compensator_integral(const JumpModel& model) const;
  /// sum_i nu_i int_0^T ||xi(t, z_i)||^2 dt
  double isometry_rhs(const JumpModel& model) const;
};

struct IsometryResult {
  double lhs = 0.0;      // MC mean of ||int int xi d(eta - nu dt)||^2
  double rhs = 0.0;      // exact
  double lhs_se = 0.0;
  double rel_err = 0.0;  // (lhs - rhs) / rhs
  double rel_se = 0.0;   // lhs_se / rhs
  double mean_max_z = 0.0;  // max over coefficient components of |mean| / SE
  std::size_t n_paths = 0;
};

IsometryResult ito_isometry_test(const JumpModel& model, const StepIntegrand& xi, double t_end,
                                 std::size_t n_paths, std::uint64_t seed);

struct NoiseEstimate {
  double k1 = 0.0, k2 = 0.0, k3 = 0.0, k4 = 0.0;
};

/// Empirical least upper ratios over the sample. The L2 ratio is absorbed
/// first, so k2 and k4 are the largest residuals per unit of ||grad||^2.
/// Lipschitz ratios use consecutive sample pairs. Throws std::invalid_argument
/// when no nonzero field is supplied.
NoiseEstimate estimate_noise_constants(const JumpModel& model,
                                       const std::vector<SpectralField>& samples,
                                       const GridSpec& g);

}  // namespace sggl
