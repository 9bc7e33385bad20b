#include "sggl/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sggl/operators.hpp"
#include "sggl/parallel.hpp"

namespace sggl {

namespace {

bool finite(const SpectralField& u) {
  for (const auto& v : u.a)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

// Explicit part of the drift, P_n B(u) minus the part of the compensator not
// folded into the exponential.
SpectralField explicit_part(const SpectralField& u, const PhysicalGrid& grid,
                            const GLParams& params, const JumpModel& model, const GridSpec& g,
                            bool linear_only) {
  SpectralField N(u.n1, u.n2, u.L1, u.L2);
  if (!linear_only) {
    const auto d = eval_G(u, grid, params);
    N = d.t_part;
    N += d.gamma_part;
    N += d.f_part;
  }
  if (model.marks() > 0 && model.family == NoiseFamily::Quadratic)
    N -= compensator(model, 0.0, u, g);
  return N;
}

void exp_update(SpectralField& u, const SpectralField& N, double h, const GLParams& params,
                double kappa) {
  for (std::size_t j = 1; j <= u.n1; ++j) {
    for (std::size_t k = 1; k <= u.n2; ++k) {
      const double mu = u.mu(j, k);
      const cplx e = std::exp(-cplx(mu + kappa, params.alpha * mu) * h);
      u(j, k) = e * (u(j, k) + h * N(j, k));
    }
  }
}

double kappa_of(const JumpModel& model) { return model.marks() > 0 ? model.linear_kappa() : 0.0; }

class Stepper {
 public:
  Stepper(const GLParams& params, const JumpModel& model, const GridSpec& g, bool linear_only,
          SpectralField u0)
      : u(std::move(u0)), params_(params), model_(model), g_(g), linear_only_(linear_only) {}

  EnergyRecord record(double t) {
    ensure_grid();
    EnergyRecord r;
    r.t = t;
    const auto n = norms(u);
    r.l2_sq = n.l2_sq;
    r.h1_sq = n.h1_sq;
    r.h2_sq = laplacian_norm_sq(u);
    r.l2s2_pow = lp_norm_pow(grid_, 2.0 * params_.sigma + 2.0);
    r.mixed = mixed_term(grid_, params_.sigma);
    return r;
  }

  // Returns false (state unchanged) when the step produced non-finite values.
  bool drift(double h) {
    if (!(h > 0.0)) return true;
    ensure_grid();
    const SpectralField N = explicit_part(u, grid_, params_, model_, g_, linear_only_);
    SpectralField next = u;
    exp_update(next, N, h, params_, kappa_of(model_));
    if (!finite(next)) return false;
    u = std::move(next);
    have_grid_ = false;
    return true;
  }

  bool jump(const JumpEvent& e) {
    SpectralField next = apply_jump(u, e, model_, g_);
    if (!finite(next)) return false;
    u = std::move(next);
    have_grid_ = false;
    return true;
  }

  SpectralField u;

 private:
  void ensure_grid() {
    if (!have_grid_) {
      grid_ = to_physical(u, g_, true);
      have_grid_ = true;
    }
  }

  const GLParams& params_;
  const JumpModel& model_;
  GridSpec g_;
  bool linear_only_;
  PhysicalGrid grid_;
  bool have_grid_ = false;
};

}  // namespace

std::vector<EnergyRecord> Trajectory::grid_records() const {
  std::vector<EnergyRecord> r;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (kinds[i] == RecordKind::Grid) r.push_back(records[i]);
  return r;
}

GridSpec integrator_grid(const SimConfig& config, const GLParams& params) {
  return make_grid(config.n1, config.n2, params.sigma, config.pad);
}

SpectralField drift_step(const SpectralField& u, double h, const GLParams& params,
                         const JumpModel& model, const GridSpec& g, bool linear_only) {
  if (!(h > 0.0)) throw std::invalid_argument("drift_step: step must be > 0");
  const PhysicalGrid grid = to_physical(u, g, true);
  const SpectralField N = explicit_part(u, grid, params, model, g, linear_only);
  SpectralField v = u;
  exp_update(v, N, h, params, kappa_of(model));
  return v;
}

SpectralField apply_jump(const SpectralField& u, const JumpEvent& event, const JumpModel& model,
                         const GridSpec& g) {
  return u + g_apply(model, event.time, u, event.mark, g);
}

EnergyRecord energy_record(const SpectralField& u, double t, double sigma, const GridSpec& g) {
  const PhysicalGrid grid = to_physical(u, g, true);
  EnergyRecord r;
  r.t = t;
  const auto n = norms(u);
  r.l2_sq = n.l2_sq;
  r.h1_sq = n.h1_sq;
  r.h2_sq = laplacian_norm_sq(u);
  r.l2s2_pow = lp_norm_pow(grid, 2.0 * sigma + 2.0);
  r.mixed = mixed_term(grid, sigma);
  return r;
}

Trajectory simulate_path(const SimConfig& config, const GLParams& params, const JumpModel& model,
                         const SpectralField& u0, const std::vector<JumpEvent>& events,
                         const IntegratorOptions& opt) {
  config.validate();
  if (u0.n1 != config.n1 || u0.n2 != config.n2)
    throw std::invalid_argument("simulate_path: u0 shape differs from config");
  const GridSpec g = integrator_grid(config, params);
  const std::size_t steps = config.n_steps();

  Trajectory tr;
  tr.dt = config.dt;
  tr.linear_only = opt.linear_only;
  Stepper st(params, model, g, opt.linear_only, u0);
  bool frozen = false;

  auto keep_state = [&](RecordKind kind, std::size_t grid_step) {
    if (opt.keep_all_states) return true;
    if (kind != RecordKind::Grid) return false;
    if (grid_step == 0 || grid_step == steps) return true;
    return config.snap_every > 0 && grid_step % config.snap_every == 0;
  };
  auto push = [&](double t, RecordKind kind, std::size_t grid_step) {
    const EnergyRecord r = st.record(t);
    tr.times.push_back(t);
    tr.kinds.push_back(kind);
    tr.records.push_back(r);
    if (keep_state(kind, grid_step)) tr.snapshots.push_back({tr.times.size() - 1, st.u});
    if (!frozen && r.l2_sq >= config.blowup_radius) {
      frozen = true;
      tr.stopped_at = t;
    }
  };
  auto fail = [&](double t) {
    frozen = true;
    tr.non_finite = true;
    tr.stopped_at = t;
  };

  push(0.0, RecordKind::Grid, 0);
  double cur = 0.0;
  std::size_t e = 0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double target = double(i) * config.dt;
    while (!frozen && e < events.size() && events[e].time <= target) {
      const JumpEvent ev = events[e++];
      if (ev.time < cur) continue;  // unsorted input guard
      if (!st.drift(ev.time - cur)) {
        fail(ev.time);
        break;
      }
      cur = ev.time;
      push(ev.time, RecordKind::PreJump, 0);
      if (frozen) break;
      if (!st.jump(ev)) {
        fail(ev.time);
        break;
      }
      tr.jump_log.push_back(ev);
      push(ev.time, RecordKind::PostJump, 0);
    }
    if (!frozen && !st.drift(target - cur)) fail(target);
    cur = target;
    push(target, RecordKind::Grid, i);
  }
  if (tr.snapshots.empty() || tr.snapshots.back().index != tr.times.size() - 1)
    tr.snapshots.push_back({tr.times.size() - 1, st.u});
  return tr;
}

Trajectory simulate_path(const SimConfig& config, const GLParams& params, const JumpModel& model,
                         const SpectralField& u0, Rng& rng, const IntegratorOptions& opt) {
  const auto events = sample_events(model, double(config.n_steps()) * config.dt, rng);
  return simulate_path(config, params, model, u0, events, opt);
}

// ---------------------------------------------------------------------------

double ito_energy_residual(const Trajectory& traj, const GLParams& params, const JumpModel& model,
                           const GridSpec& g) {
  if (!traj.has_all_states() || traj.times.empty())
    throw std::invalid_argument("ito_energy_residual: trajectory lacks per-time states");
  const double kappa = kappa_of(model);
  std::size_t last = traj.times.size() - 1;
  if (traj.stopped_at) {
    for (std::size_t i = 0; i < traj.times.size(); ++i)
      if (traj.times[i] >= *traj.stopped_at) {
        last = i;
        break;
      }
  }

  const auto& S = traj.snapshots;
  double rhs = traj.records[0].l2_sq;
  double sup = traj.records[0].l2_sq;
  double worst = 0.0;
  std::size_t jump_i = 0;
  for (std::size_t i = 0; i < last; ++i) {
    const SpectralField& u = S[i].u;
    const double h = traj.times[i + 1] - traj.times[i];
    if (traj.kinds[i] == RecordKind::PreJump && traj.kinds[i + 1] == RecordKind::PostJump) {
      const auto& ev = traj.jump_log.at(jump_i++);
      const SpectralField pg = g_apply(model, ev.time, u, ev.mark, g);
      rhs += norms(pg).l2_sq + 2.0 * inner_re(u, pg);
    } else if (h > 0.0) {
      // dissipation and the folded compensator, integrated exactly per mode
      for (std::size_t j = 1; j <= u.n1; ++j)
        for (std::size_t k = 1; k <= u.n2; ++k) {
          const double rho = u.mu(j, k) + kappa;
          const double W = rho > 0.0 ? -std::expm1(-2.0 * rho * h) / (2.0 * rho) : h;
          rhs -= 2.0 * rho * std::norm(u(j, k)) * W;
        }
      double expl = 0.0;
      if (!traj.linear_only) {
        const PhysicalGrid grid = to_physical(u, g, true);
        expl += params.gamma * traj.records[i].l2_sq - traj.records[i].l2s2_pow;
        expl += inner_re(project_F(grid, params, u.n1, u.n2), u);
      }
      if (model.marks() > 0 && model.family == NoiseFamily::Quadratic)
        expl -= inner_re(compensator(model, 0.0, u, g), u);
      rhs += 2.0 * h * expl;
    }
    sup = std::max(sup, traj.records[i + 1].l2_sq);
    worst = std::max(worst, std::abs(traj.records[i + 1].l2_sq - rhs));
  }
  return sup > 0.0 ? worst / sup : 0.0;
}

// ---------------------------------------------------------------------------

SpectralField make_initial(const InitialCondition& ic, std::size_t n1, std::size_t n2,
                           const GLParams& params, std::uint64_t seed, std::uint64_t path) {
  SpectralField u(n1, n2, params);
  switch (ic.mode) {
    case InitialCondition::Mode::Zero:
      break;
    case InitialCondition::Mode::Mode:
      if (ic.j >= 1 && ic.k >= 1 && ic.j <= n1 && ic.k <= n2) u(ic.j, ic.k) = ic.amplitude;
      break;
    case InitialCondition::Mode::Gaussian: {
      // projected on a fixed fine grid so coefficients do not depend on n
      constexpr std::size_t M = 255;
      PhysicalGrid grid(M, M, params.L1, params.L2);
      const double wx = ic.width * params.L1, wy = ic.width * params.L2;
      for (std::size_t a = 1; a <= M; ++a)
        for (std::size_t b = 1; b <= M; ++b) {
          const double dx = (grid.x(a) - 0.5 * params.L1) / wx;
          const double dy = (grid.y(b) - 0.5 * params.L2) / wy;
          grid.at(a, b) = ic.amplitude * std::exp(-0.5 * (dx * dx + dy * dy));
        }
      u = to_spectral(grid, std::min(n1, M), std::min(n2, M));
      u = resize(u, n1, n2);
      break;
    }
    case InitialCondition::Mode::Random: {
      Rng rng(seed, path, Stream::Initial);
      for (std::size_t j = 1; j <= ic.modes; ++j)
        for (std::size_t k = 1; k <= ic.modes; ++k) {
          const double sd = std::pow(double(j * j + k * k), -0.5 * ic.decay) * std::sqrt(0.5);
          const double re = rng.normal(), im = rng.normal();
          if (j <= n1 && k <= n2) u(j, k) = ic.amplitude * sd * cplx(re, im);
        }
      break;
    }
  }
  return u;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return x[0];
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

namespace {

SeriesStats series_stats(const std::vector<std::vector<EnergyRecord>>& rec,
                         double EnergyRecord::*field) {
  SeriesStats s;
  const std::size_t np = rec.size();
  const std::size_t nt = rec.front().size();
  s.mean.resize(nt);
  s.var.resize(nt);
  std::vector<double> buf(np);
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t p = 0; p < np; ++p) buf[p] = rec[p][t].*field;
    const double m = pairwise_sum(buf.data(), np) / double(np);
    for (std::size_t p = 0; p < np; ++p) buf[p] = (buf[p] - m) * (buf[p] - m);
    s.mean[t] = m;
    s.var[t] = np > 1 ? pairwise_sum(buf.data(), np) / double(np - 1) : 0.0;
  }
  return s;
}

}  // namespace

EnsembleStats reduce_stats(const std::vector<Trajectory>& paths) {
  EnsembleStats st;
  st.n_paths = paths.size();
  if (paths.empty()) return st;
  std::vector<std::vector<EnergyRecord>> rec;
  rec.reserve(paths.size());
  for (const auto& p : paths) rec.push_back(p.grid_records());
  for (const auto& r : rec)
    if (r.size() != rec.front().size())
      throw std::logic_error("reduce_stats: paths have different grids");
  for (const auto& r : rec.front()) st.t.push_back(r.t);
  st.l2_sq = series_stats(rec, &EnergyRecord::l2_sq);
  st.h1_sq = series_stats(rec, &EnergyRecord::h1_sq);
  st.l2s2_pow = series_stats(rec, &EnergyRecord::l2s2_pow);
  st.mixed = series_stats(rec, &EnergyRecord::mixed);

  const std::size_t np = paths.size();
  std::vector<double> sup(np), stopped(np);
  for (std::size_t p = 0; p < np; ++p) {
    double s = 0.0;
    for (const auto& r : paths[p].records) s = std::max(s, r.l2_sq);
    sup[p] = s;
    stopped[p] = paths[p].stopped_at ? 1.0 : 0.0;
  }
  st.sup_l2_mean = pairwise_sum(sup.data(), np) / double(np);
  if (np > 1) {
    for (auto& v : sup) v = (v - st.sup_l2_mean) * (v - st.sup_l2_mean);
    st.sup_l2_se = std::sqrt(pairwise_sum(sup.data(), np) / double(np - 1) / double(np));
  }
  st.blowup_fraction = pairwise_sum(stopped.data(), np) / double(np);
  return st;
}

Ensemble simulate_ensemble(const SimConfig& config, const GLParams& params,
                           const JumpModel& model, const InitialCondition& ic,
                           std::size_t threads, const IntegratorOptions& opt) {
  config.validate();
  Ensemble ens;
  ens.paths.resize(config.n_paths);
  ens.u0_norms.resize(config.n_paths);
  parallel_for(config.n_paths, threads, [&](std::size_t p) {
    const SpectralField u0 = make_initial(ic, config.n1, config.n2, params, config.seed, p);
    Rng rng(config.seed, p, Stream::Jumps);
    IntegratorOptions o = opt;
    o.keep_all_states = false;
    SimConfig c = config;
    c.snap_every = 0;
    ens.paths[p] = simulate_path(c, params, model, u0, rng, o);
    ens.u0_norms[p] = norms(u0);
  });
  ens.stats = reduce_stats(ens.paths);
  return ens;
}

}  // namespace sggl
