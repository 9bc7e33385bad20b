#pragma once

// CSV artifacts. Every number is printed with %.17g so values round-trip.

#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "sggl/diagnostics.hpp"
#include "sggl/experiments.hpp"
#include "sggl/inequality_lab.hpp"
#include "sggl/integrator.hpp"

namespace sggl {

std::string fmt_g17(double x);

class CsvWriter {
 public:
  using Cell = std::variant<double, std::size_t, std::string>;
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<Cell>& cells);

 private:
  std::ofstream os_;
  std::size_t width_;
};

/// t,l2_sq,h1_sq,l2s2_pow,mixed on grid times only.
void write_energy_csv(const std::string& path, const Trajectory& traj);
/// Same columns from ensemble means.
void write_energy_mean_csv(const std::string& path, const EnsembleStats& st);
void write_lemma_stats_csv(const std::string& path, const std::vector<LemmaStatistic>& rows);
void write_inequality_report(const std::string& path, const std::vector<CheckResult>& checks);
void write_contraction_csv(const std::string& path, const ContractionSummary& s);
void write_galerkin_csv(const std::string& path, const GalerkinScan& scan);

}  // namespace sggl
