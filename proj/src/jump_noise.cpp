#include "sggl/jump_noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sggl {

double JumpModel::total_rate() const {
  double s = 0.0;
  for (double v : nu) s += v;
  return s;
}

double JumpModel::weighted_h() const {
  double s = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) s += nu[i] * h[i];
  return s;
}

double JumpModel::weighted_h2() const {
  double s = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) s += nu[i] * h[i] * h[i];
  return s;
}

double JumpModel::linear_kappa() const {
  return family == NoiseFamily::Linear ? c * weighted_h() : 0.0;
}

void JumpModel::validate() const {
  if (h.size() != nu.size()) throw ConfigError("noise.h", "length must equal noise.nu");
  for (double v : nu)
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("noise.nu", "entries must be > 0");
  for (double v : h)
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("noise.h", "entries must be >= 0");
  if (!std::isfinite(c)) throw ConfigError("noise.c", "must be finite");
  if (!(cap > 0.0)) throw ConfigError("noise.cap", "must be > 0 (or infinite)");
  if (!(p >= 2.0) || !std::isfinite(p)) throw ConfigError("noise.p", "must be >= 2");
}

NoiseConstants JumpModel::constants() const {
  NoiseConstants k;
  k.p = p;
  const double s = weighted_h2();
  if (family == NoiseFamily::Linear) {
    k.k1 = k.k3 = c * c * s;
  } else {
    // |u min(|u|,cap)/2| <= cap|u|/2 and the map is cap-Lipschitz on C.
    k.k1 = std::isfinite(cap) ? 0.25 * cap * cap * s : std::numeric_limits<double>::infinity();
    k.k3 = std::isfinite(cap) ? cap * cap * s : std::numeric_limits<double>::infinity();
    if (s == 0.0) k.k1 = k.k3 = 0.0;
  }
  return k;
}

ConditionReport JumpModel::conditions() const {
  ConditionReport r;
  const auto k = constants();
  r.c1 = std::isfinite(k.k1) && std::isfinite(k.k2);
  r.c2 = std::isfinite(k.k3) && std::isfinite(k.k4);
  // the linear family has |d_u g| = |c| h_i, which h_i|u| cannot bound near u = 0
  r.c3 = family == NoiseFamily::Quadratic || c == 0.0 || weighted_h2() == 0.0;
  return r;
}

// ---------------------------------------------------------------------------

std::vector<double> sample_jump_times(double rate, double t_end, Rng& rng) {
  std::vector<double> t;
  if (!(rate > 0.0)) return t;
  double s = rng.exponential(rate);
  while (s <= t_end) {
    t.push_back(s);
    s += rng.exponential(rate);
  }
  return t;
}

std::size_t sample_mark(const JumpModel& model, Rng& rng) {
  const std::size_t m = model.marks();
  if (m <= 1) return 0;
  const double target = rng.uniform() * model.total_rate();
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    acc += model.nu[i];
    if (target < acc) return i;
  }
  return m - 1;
}

std::vector<JumpEvent> sample_events(const JumpModel& model, double t_end, Rng& rng) {
  std::vector<JumpEvent> ev;
  const double rate = model.total_rate();
  if (!(rate > 0.0)) return ev;
  double s = rng.exponential(rate);
  while (s <= t_end) {
    ev.push_back({s, sample_mark(model, rng)});
    s += rng.exponential(rate);
  }
  return ev;
}

// ---------------------------------------------------------------------------

namespace {

// P_n [u min(|u|, cap) / 2]
SpectralField quadratic_base(const JumpModel& model, const SpectralField& u, const GridSpec& g) {
  PhysicalGrid grid = to_physical(u, g, false);
  for (auto& v : grid.values) v *= 0.5 * std::min(std::abs(v), model.cap);
  return to_spectral(grid, u.n1, u.n2);
}

}  // namespace

SpectralField g_apply(const JumpModel& model, double, const SpectralField& u, std::size_t mark,
                      const GridSpec& g) {
  if (mark >= model.marks()) throw std::out_of_range("g_apply: mark index");
  if (model.family == NoiseFamily::Linear) return cplx(model.c * model.h[mark]) * u;
  return cplx(model.h[mark]) * quadratic_base(model, u, g);
}

SpectralField compensator(const JumpModel& model, double, const SpectralField& u,
                          const GridSpec& g) {
  if (model.marks() == 0) return SpectralField(u.n1, u.n2, u.L1, u.L2);
  if (model.family == NoiseFamily::Linear) return cplx(model.linear_kappa()) * u;
  return cplx(model.weighted_h()) * quadratic_base(model, u, g);
}

// ---------------------------------------------------------------------------

const SpectralField& StepIntegrand::at(double t, std::size_t mark) const {
  if (values.empty() || breaks.size() != values.size() + 1)
    throw std::logic_error("StepIntegrand: malformed");
  auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
  std::size_t i = it == breaks.begin() ? 0 : std::size_t(it - breaks.begin()) - 1;
  i = std::min(i, values.size() - 1);
  return values[i].at(mark);
}

SpectralField StepIntegrand::compensator_integral(const JumpModel& model) const {
  SpectralField s = values.at(0).at(0);
  s *= 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double len = breaks[i + 1] - breaks[i];
    for (std::size_t m = 0; m < model.marks(); ++m) {
      SpectralField v = values[i][m];
      v *= model.nu[m] * len;
      s += v;
    }
  }
  return s;
}

double StepIntegrand::isometry_rhs(const JumpModel& model) const {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double len = breaks[i + 1] - breaks[i];
    for (std::size_t m = 0; m < model.marks(); ++m)
      s += model.nu[m] * len * norms(values[i][m]).l2_sq;
  }
  return s;
}

IsometryResult ito_isometry_test(const JumpModel& model, const StepIntegrand& xi, double t_end,
                                 std::size_t n_paths, std::uint64_t seed) {
  IsometryResult r;
  r.n_paths = n_paths;
  r.rhs = xi.isometry_rhs(model);
  const SpectralField comp = xi.compensator_integral(model);
  const std::size_t dim = comp.size();

  // Welford accumulators for ||X||^2 and for each real component of X.
  double mean = 0.0, m2 = 0.0;
  std::vector<double> cm(2 * dim, 0.0), cv(2 * dim, 0.0);
  for (std::size_t p = 0; p < n_paths; ++p) {
    Rng rng(seed, p, Stream::Isometry);
    SpectralField X = comp;
    X *= -1.0;
    for (const auto& e : sample_events(model, t_end, rng)) X += xi.at(e.time, e.mark);
    const double v = norms(X).l2_sq;
    const double n = double(p + 1);
    const double d = v - mean;
    mean += d / n;
    m2 += d * (v - mean);
    for (std::size_t i = 0; i < dim; ++i) {
      for (int part = 0; part < 2; ++part) {
        const double x = part == 0 ? X.a[i].real() : X.a[i].imag();
        double& mu = cm[2 * i + part];
        const double dd = x - mu;
        mu += dd / n;
        cv[2 * i + part] += dd * (x - mu);
      }
    }
  }
  r.lhs = mean;
  if (n_paths > 1) r.lhs_se = std::sqrt(m2 / double(n_paths - 1) / double(n_paths));
  if (r.rhs > 0.0) {
    r.rel_err = (r.lhs - r.rhs) / r.rhs;
    r.rel_se = r.lhs_se / r.rhs;
  }
  for (std::size_t i = 0; i < 2 * dim; ++i) {
    if (n_paths < 2 || cv[i] <= 0.0) continue;
    const double se = std::sqrt(cv[i] / double(n_paths - 1) / double(n_paths));
    if (se > 1e-300) r.mean_max_z = std::max(r.mean_max_z, std::abs(cm[i]) / se);
  }
  return r;
}

// ---------------------------------------------------------------------------

NoiseEstimate estimate_noise_constants(const JumpModel& model,
                                       const std::vector<SpectralField>& samples,
                                       const GridSpec& g) {
  std::vector<const SpectralField*> use;
  for (const auto& s : samples)
    if (norms(s).l2_sq > 0.0) use.push_back(&s);
  if (use.empty()) throw std::invalid_argument("estimate_noise_constants: empty sample");

  auto g_norm_sq = [&](const SpectralField& u) {
    double s = 0.0;
    for (std::size_t m = 0; m < model.marks(); ++m)
      s += model.nu[m] * norms(g_apply(model, 0.0, u, m, g)).l2_sq;
    return s;
  };
  auto g_diff_sq = [&](const SpectralField& u, const SpectralField& v) {
    double s = 0.0;
    for (std::size_t m = 0; m < model.marks(); ++m)
      s += model.nu[m] * norms(g_apply(model, 0.0, u, m, g) - g_apply(model, 0.0, v, m, g)).l2_sq;
    return s;
  };

  NoiseEstimate e;
  std::vector<double> gs(use.size());
  for (std::size_t i = 0; i < use.size(); ++i) {
    gs[i] = g_norm_sq(*use[i]);
    e.k1 = std::max(e.k1, gs[i] / norms(*use[i]).l2_sq);
  }
  for (std::size_t i = 0; i < use.size(); ++i) {
    const auto n = norms(*use[i]);
    e.k2 = std::max(e.k2, (gs[i] - e.k1 * n.l2_sq) / n.h1_sq);
  }

  std::vector<std::pair<double, Norms>> diffs;
  for (std::size_t i = 0; i + 1 < use.size(); ++i) {
    const SpectralField d = *use[i] - *use[i + 1];
    const auto n = norms(d);
    if (n.l2_sq == 0.0) continue;
    diffs.push_back({g_diff_sq(*use[i], *use[i + 1]), n});
    e.k3 = std::max(e.k3, diffs.back().first / n.l2_sq);
  }
  for (const auto& [gd, n] : diffs) e.k4 = std::max(e.k4, (gd - e.k3 * n.l2_sq) / n.h1_sq);
  e.k2 = std::max(e.k2, 0.0);
  e.k4 = std::max(e.k4, 0.0);
  return e;
}

}  // namespace sggl
