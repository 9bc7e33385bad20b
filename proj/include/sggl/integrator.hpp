#pragma once

// Exponential (Lawson) Euler for the Galerkin jump SDE
//
//   du = P_n G(u) dt + int_Z P_n g(u(t-), z) (eta - nu dt)(dz, dt)
//
// Between jumps: v = u + h (P_n B(u) - compensator(u)), then
// a_jk <- exp(-((1+i alpha) mu_jk + kappa) h) v_jk. For the linear noise
// family the compensator is kappa u and is folded into the exponential; for
// the quadratic family it is part of the explicit term. Jumps are applied at
// their exact sampled times.

#include <cstdint>
#include <optional>
#include <vector>

#include "sggl/core_types.hpp"
#include "sggl/jump_noise.hpp"
#include "sggl/spectral.hpp"

namespace sggl {

struct EnergyRecord {
  double t = 0.0;
  double l2_sq = 0.0;
  double h1_sq = 0.0;
  double l2s2_pow = 0.0;  // ||u||_{2 sigma + 2}^{2 sigma + 2}
  double mixed = 0.0;     // int |u|^{2 sigma} |grad u|^2
  double h2_sq = 0.0;     // ||Lap u||^2
};

enum class RecordKind : std::uint8_t { Grid, PreJump, PostJump };

struct Snapshot {
  std::size_t index = 0;  // position in Trajectory::times
  SpectralField u;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<RecordKind> kinds;
  std::vector<EnergyRecord> records;
  std::vector<Snapshot> snapshots;
  std::vector<JumpEvent> jump_log;  // jumps actually applied
  std::optional<double> stopped_at;
  bool non_finite = false;
  double dt = 0.0;
  bool linear_only = false;

  bool has_all_states() const { return snapshots.size() == times.size(); }
  const SpectralField& final_state() const { return snapshots.back().u; }
  /// Records at grid times only.
  std::vector<EnergyRecord> grid_records() const;
};

struct IntegratorOptions {
  /// Drop B entirely (linear problem (1+i alpha) Lap u plus noise).
  bool linear_only = false;
  /// Keep every state, including both sides of each jump. Overrides snap_every.
  bool keep_all_states = false;
};

/// One path with the given jump realization.
Trajectory simulate_path(const SimConfig& config, const GLParams& params, const JumpModel& model,
                         const SpectralField& u0, const std::vector<JumpEvent>& events,
                         const IntegratorOptions& opt = {});

/// One path; jump times and marks drawn from rng.
Trajectory simulate_path(const SimConfig& config, const GLParams& params, const JumpModel& model,
                         const SpectralField& u0, Rng& rng, const IntegratorOptions& opt = {});

/// Single exponential Euler step of length h (no jumps). Exposed for tests.
SpectralField drift_step(const SpectralField& u, double h, const GLParams& params,
                         const JumpModel& model, const GridSpec& g, bool linear_only = false);

/// u + P_n g(t, u, z_mark).
SpectralField apply_jump(const SpectralField& u, const JumpEvent& event, const JumpModel& model,
                         const GridSpec& g);

EnergyRecord energy_record(const SpectralField& u, double t, double sigma, const GridSpec& g);

/// max_t |lhs - rhs| / sup ||u||^2 of the discrete energy identity along the
/// realized path. Needs every state (IntegratorOptions::keep_all_states);
/// throws std::invalid_argument otherwise.
double ito_energy_residual(const Trajectory& traj, const GLParams& params, const JumpModel& model,
                           const GridSpec& g);

/// Grid used by the integrator for this configuration.
GridSpec integrator_grid(const SimConfig& config, const GLParams& params);

// ---------------------------------------------------------------------------
// Ensembles

struct InitialCondition {
  enum class Mode { Zero, Mode, Gaussian, Random };
  Mode mode = Mode::Random;
  double amplitude = 1.0;
  std::size_t j = 1, k = 1;  // Mode
  double width = 0.1;        // Gaussian, as a fraction of the side lengths
  std::size_t modes = 4;     // Random: modes per axis, independent of n
  double decay = 2.0;        // Random: coefficient std ~ (j^2 + k^2)^(-decay/2)
};

/// Initial field for path `path`. Random draws depend only on (seed, path) and
/// the settings, never on n1, n2.
SpectralField make_initial(const InitialCondition& ic, std::size_t n1, std::size_t n2,
                           const GLParams& params, std::uint64_t seed, std::uint64_t path);

struct SeriesStats {
  std::vector<double> mean;
  std::vector<double> var;
};

struct EnsembleStats {
  std::size_t n_paths = 0;
  std::vector<double> t;  // grid times
  SeriesStats l2_sq, h1_sq, l2s2_pow, mixed;
  double sup_l2_mean = 0.0, sup_l2_se = 0.0;  // sup over grid and jump times
  double blowup_fraction = 0.0;
};

struct Ensemble {
  std::vector<Trajectory> paths;  // snapshots reduced to initial and final state
  std::vector<Norms> u0_norms;
  EnsembleStats stats;
};

/// Paths run in parallel on `threads` workers (0: default), results are
/// independent of the worker count.
Ensemble simulate_ensemble(const SimConfig& config, const GLParams& params,
                           const JumpModel& model, const InitialCondition& ic,
                           std::size_t threads = 0, const IntegratorOptions& opt = {});

EnsembleStats reduce_stats(const std::vector<Trajectory>& paths);

/// Sum in a fixed pairwise tree over index order.
double pairwise_sum(const double* x, std::size_t n);

}  // namespace sggl
