#include "sggl/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace sggl {

std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : os_(path), width_(header.size()) {
  if (!os_) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != width_) throw std::logic_error("CsvWriter: row width differs from header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    std::visit(
        [this](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>)
            os_ << fmt_g17(v);
          else
            os_ << v;
        },
        cells[i]);
  }
  os_ << '\n';
}

void write_energy_csv(const std::string& path, const Trajectory& traj) {
  CsvWriter w(path, {"t", "l2_sq", "h1_sq", "l2s2_pow", "mixed"});
  for (const auto& r : traj.grid_records()) w.row({r.t, r.l2_sq, r.h1_sq, r.l2s2_pow, r.mixed});
}

void write_energy_mean_csv(const std::string& path, const EnsembleStats& st) {
  CsvWriter w(path, {"t", "l2_sq", "h1_sq", "l2s2_pow", "mixed"});
  for (std::size_t i = 0; i < st.t.size(); ++i)
    w.row({st.t[i], st.l2_sq.mean[i], st.h1_sq.mean[i], st.l2s2_pow.mean[i], st.mixed.mean[i]});
}

void write_lemma_stats_csv(const std::string& path, const std::vector<LemmaStatistic>& rows) {
  CsvWriter w(path, {"lemma", "n1", "n2", "value", "se", "rhs_scale", "ratio"});
  for (const auto& r : rows)
    w.row({to_string(r.lemma), r.n1, r.n2, r.value, r.se, r.rhs_scale, r.ratio});
}

void write_inequality_report(const std::string& path, const std::vector<CheckResult>& checks) {
  CsvWriter w(path, {"check", "sigma", "beta", "samples", "violations", "max_slack", "tolerance"});
  for (const auto& c : checks)
    w.row({c.check, c.sigma, c.beta, c.samples, c.violations, c.max_slack, c.tolerance});
}

void write_contraction_csv(const std::string& path, const ContractionSummary& s) {
  CsvWriter w(path, {"t", "r", "omega_l2_sq", "contraction"});
  for (std::size_t i = 0; i < s.t.size(); ++i)
    w.row({s.t[i], s.r[i], s.omega_l2_sq[i], s.contraction[i]});
}

void write_galerkin_csv(const std::string& path, const GalerkinScan& scan) {
  CsvWriter w(path, {"n", "discrepancy", "lemma31_ratio", "lemma32_ratio"});
  for (const auto& r : scan.rows) w.row({r.n, r.discrepancy, r.l31.ratio, r.l32.ratio});
}

}  // namespace sggl
