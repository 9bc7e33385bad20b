#pragma once

// End-to-end studies: the shared-noise uniqueness contraction and the
// Galerkin self-convergence scan.

#include <cstdint>
#include <vector>

#include "sggl/diagnostics.hpp"
#include "sggl/inequality_lab.hpp"
#include "sggl/integrator.hpp"

namespace sggl {

struct Increase {
  double t = 0.0;
  double increment = 0.0;
};

/// Two solutions driven by the same jump realization. Series live on the grid
/// times; r is integrated along u2 over every record (grid and jump times).
struct ContractionRun {
  Trajectory u1_traj, u2_traj;
  std::vector<double> t, r, omega_l2_sq, contraction;  // contraction = e^{-r} ||u1 - u2||^2
  std::vector<Increase> violations;  // steps where contraction grew by more than tol
  bool inconclusive = false;         // a path stopped or the jump logs diverged
};

/// u2(0) = u0 + delta v / ||v|| with v drawn from the Perturbation stream of
/// (seed, path). Throws RegimeError unless cfg is contraction-valid.
ContractionRun uniqueness_experiment(const SimConfig& config, const GLParams& params,
                                     const JumpModel& model, const MonotonicityConfig& cfg,
                                     const SpectralField& u0, double delta, std::uint64_t path,
                                     double tol = 0.0);

struct ContractionSummary {
  std::size_t n_paths = 0, inconclusive = 0;
  double dt = 0.0;
  std::vector<double> t, r, omega_l2_sq, contraction;  // means over conclusive paths
  std::vector<Increase> violations;                    // of the mean contraction series
  double max_increment = 0.0;  // largest step increase of the mean series (0 if none)
  /// max_increment / (dt * contraction[0]); the per-step slack constant C.
  double slack_constant = 0.0;
  bool decreased = false;  // contraction(T) < contraction(0)
};

/// config.n_paths pairs in parallel; initial data from `ic`.
ContractionSummary uniqueness_ensemble(const SimConfig& config, const GLParams& params,
                                       const JumpModel& model, const MonotonicityConfig& cfg,
                                       const InitialCondition& ic, double delta,
                                       std::size_t threads = 0);

struct GalerkinRow {
  std::size_t n = 0;
  double discrepancy = 0.0;  // path mean of ||u_n(T) - u_2n(T)||
  LemmaStatistic l31, l32;
};

struct GalerkinScan {
  std::vector<GalerkinRow> rows;
  bool monotone = false;  // discrepancies strictly decrease over the levels
};

/// One ensemble per level and per doubled level, all with the same seed.
GalerkinScan galerkin_scan(const SimConfig& base, const GLParams& params, const JumpModel& model,
                           const InitialCondition& ic, const std::vector<std::size_t>& levels,
                           std::size_t threads = 0, const IntegratorOptions& opt = {});

}  // namespace sggl
