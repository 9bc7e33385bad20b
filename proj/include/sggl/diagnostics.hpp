#pragma once

// Monte-Carlo estimates of the energy-bound left-hand sides. Per path:
//
//   L31: sup ||u||^2 + int ||grad u||^2 + int ||u||_{2s+2}^{2s+2}
//   L32: sup ||grad u||^2 + int ||Lap u||^2 + int int |u|^{2s} |grad u|^2
//   L33: sup ||grad u||^p + int ||grad u||^{p-2} (||Lap u||^2 + int |u|^{2s}|grad u|^2)
//
// sup runs over grid and jump times; time integrals are trapezoid sums on
// all records (zero-width segments at jumps contribute nothing).

#include <string>
#include <vector>

#include "sggl/integrator.hpp"

namespace sggl {

enum class LemmaId { L31, L32, L33 };
std::string to_string(LemmaId id);

struct LemmaStatistic {
  LemmaId lemma = LemmaId::L31;
  double value = 0.0;
  double se = 0.0;
  std::size_t n1 = 0, n2 = 0;
  double rhs_scale = 1.0;
  double ratio = 0.0;
  double p = 2.0;  // L33 only
};

/// Per-path values, in path order.
std::vector<double> lemma31_per_path(const Ensemble& ens);
std::vector<double> lemma32_per_path(const Ensemble& ens);
std::vector<double> lemma33_per_path(const Ensemble& ens, double p);

/// All throw std::invalid_argument on an empty ensemble.
LemmaStatistic lemma31_statistic(const Ensemble& ens);
LemmaStatistic lemma32_statistic(const Ensemble& ens);
/// Throws std::domain_error unless 2 <= p < 2 sigma.
LemmaStatistic lemma33_statistic(const Ensemble& ens, double p, double sigma);

struct UniformityScan {
  std::vector<std::size_t> levels;
  std::vector<LemmaStatistic> rows;  // three per level (L31, L32, L33)
  /// max ratio / min ratio for each lemma across levels (1 when all ratios are 0).
  double spread31 = 1.0, spread32 = 1.0, spread33 = 1.0;
};

/// Runs one ensemble per level n (n1 = n2 = n) with the same seed, so initial
/// data and jump realizations are shared. Needs at least three levels.
UniformityScan uniformity_scan(const SimConfig& base, const GLParams& params,
                               const JumpModel& model, const InitialCondition& ic,
                               const std::vector<std::size_t>& levels, std::size_t threads = 0);

/// Trapezoid rule over (t, y) pairs.
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace sggl
