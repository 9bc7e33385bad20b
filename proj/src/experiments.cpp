#include "sggl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sggl/parallel.hpp"

namespace sggl {

namespace {

std::vector<Increase> increases(const std::vector<double>& t, const std::vector<double>& y,
                                double tol) {
  std::vector<Increase> out;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] - y[i - 1] > tol) out.push_back({t[i], y[i] - y[i - 1]});
  return out;
}

double noise_k3(const JumpModel& model) {
  return model.marks() > 0 ? model.constants().k3 : 0.0;
}

}  // namespace

ContractionRun uniqueness_experiment(const SimConfig& config, const GLParams& params,
                                     const JumpModel& model, const MonotonicityConfig& cfg,
                                     const SpectralField& u0, double delta, std::uint64_t path,
                                     double tol) {
  if (!cfg.derived || !cfg.contraction_valid)
    throw RegimeError("uniqueness_experiment: monotonicity config is not contraction-valid");
  if (!(delta >= 0.0)) throw std::invalid_argument("uniqueness_experiment: delta < 0");

  SpectralField u20 = u0;
  if (delta > 0.0) {
    Rng prng(config.seed, path, Stream::Perturbation);
    u20 += random_field(u0.n1, u0.n2, params, prng, 1.0, delta);
  }
  Rng jrng(config.seed, path, Stream::Jumps);
  const auto events = sample_events(model, double(config.n_steps()) * config.dt, jrng);
  IntegratorOptions opt;
  opt.keep_all_states = true;

  ContractionRun run;
  run.u1_traj = simulate_path(config, params, model, u0, events, opt);
  run.u2_traj = simulate_path(config, params, model, u20, events, opt);
  const auto& a = run.u1_traj;
  const auto& b = run.u2_traj;
  run.inconclusive = a.stopped_at.has_value() || b.stopped_at.has_value() ||
                     a.jump_log != b.jump_log || a.times != b.times;
  if (a.times != b.times) return run;

  std::vector<double> l2, h1;
  for (const auto& r : b.records) {
    l2.push_back(r.l2_sq);
    h1.push_back(r.h1_sq);
  }
  const auto r_all = r_function(b.times, l2, h1, cfg, params.sigma, noise_k3(model));
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    if (a.kinds[i] != RecordKind::Grid) continue;
    const double w = norms(a.snapshots[i].u - b.snapshots[i].u).l2_sq;
    run.t.push_back(a.times[i]);
    run.r.push_back(r_all[i]);
    run.omega_l2_sq.push_back(w);
    run.contraction.push_back(std::exp(-r_all[i]) * w);
  }
  run.violations = increases(run.t, run.contraction, tol);
  return run;
}

ContractionSummary uniqueness_ensemble(const SimConfig& config, const GLParams& params,
                                       const JumpModel& model, const MonotonicityConfig& cfg,
                                       const InitialCondition& ic, double delta,
                                       std::size_t threads) {
  config.validate();
  const std::size_t np = config.n_paths;
  struct Slim {
    std::vector<double> t, r, w, c;
    bool inconclusive = false;
  };
  std::vector<Slim> runs(np);
  parallel_for(np, threads, [&](std::size_t p) {
    const auto u0 = make_initial(ic, config.n1, config.n2, params, config.seed, p);
    auto run = uniqueness_experiment(config, params, model, cfg, u0, delta, p);
    runs[p] = {std::move(run.t), std::move(run.r), std::move(run.omega_l2_sq),
               std::move(run.contraction), run.inconclusive};
  });

  ContractionSummary s;
  s.n_paths = np;
  s.dt = config.dt;
  std::vector<const Slim*> ok;
  for (const auto& r : runs) {
    if (r.inconclusive)
      ++s.inconclusive;
    else
      ok.push_back(&r);
  }
  if (ok.empty()) return s;
  const std::size_t nt = ok.front()->t.size();
  s.t = ok.front()->t;
  s.r.resize(nt);
  s.omega_l2_sq.resize(nt);
  s.contraction.resize(nt);
  std::vector<double> buf(ok.size());
  auto mean = [&](std::size_t i, const std::vector<double> Slim::*f) {
    for (std::size_t p = 0; p < ok.size(); ++p) buf[p] = (ok[p]->*f)[i];
    return pairwise_sum(buf.data(), buf.size()) / double(buf.size());
  };
  for (std::size_t i = 0; i < nt; ++i) {
    s.r[i] = mean(i, &Slim::r);
    s.omega_l2_sq[i] = mean(i, &Slim::w);
    s.contraction[i] = mean(i, &Slim::c);
  }
  s.violations = increases(s.t, s.contraction, 0.0);
  for (const auto& v : s.violations) s.max_increment = std::max(s.max_increment, v.increment);
  if (s.contraction.front() > 0.0)
    s.slack_constant = s.max_increment / (s.dt * s.contraction.front());
  s.decreased = s.contraction.back() < s.contraction.front();
  return s;
}

GalerkinScan galerkin_scan(const SimConfig& base, const GLParams& params, const JumpModel& model,
                           const InitialCondition& ic, const std::vector<std::size_t>& levels,
                           std::size_t threads, const IntegratorOptions& opt) {
  if (levels.size() < 3) throw std::invalid_argument("galerkin_scan: need >= 3 levels");
  std::map<std::size_t, Ensemble> runs;
  auto ensemble = [&](std::size_t n) -> const Ensemble& {
    auto it = runs.find(n);
    if (it == runs.end()) {
      SimConfig c = base;
      c.n1 = c.n2 = n;
      it = runs.emplace(n, simulate_ensemble(c, params, model, ic, threads, opt)).first;
    }
    return it->second;
  };

  GalerkinScan scan;
  for (std::size_t n : levels) {
    const Ensemble& coarse = ensemble(n);
    const Ensemble& fine = ensemble(2 * n);
    GalerkinRow row;
    row.n = n;
    std::vector<double> d(coarse.paths.size());
    for (std::size_t p = 0; p < d.size(); ++p) {
      const auto& uf = fine.paths[p].final_state();
      const SpectralField diff = resize(coarse.paths[p].final_state(), uf.n1, uf.n2) - uf;
      d[p] = std::sqrt(norms(diff).l2_sq);
    }
    row.discrepancy = pairwise_sum(d.data(), d.size()) / double(d.size());
    row.l31 = lemma31_statistic(coarse);
    row.l32 = lemma32_statistic(coarse);
    scan.rows.push_back(row);
  }
  scan.monotone = true;
  for (std::size_t i = 1; i < scan.rows.size(); ++i)
    if (!(scan.rows[i].discrepancy < scan.rows[i - 1].discrepancy)) scan.monotone = false;
  return scan;
}

}  // namespace sggl
