#include "sggl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace sggl {

std::string to_string(LemmaId id) {
  switch (id) {
    case LemmaId::L31: return "L31";
    case LemmaId::L32: return "L32";
    case LemmaId::L33: return "L33";
  }
  return "?";
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) s += 0.5 * (t[i + 1] - t[i]) * (y[i] + y[i + 1]);
  return s;
}

namespace {

using RecFn = std::function<double(const EnergyRecord&)>;

double path_value(const Trajectory& tr, const RecFn& sup_of, const RecFn& a, const RecFn& b) {
  std::vector<double> t, ya, yb;
  double sup = 0.0;
  for (const auto& r : tr.records) {
    t.push_back(r.t);
    ya.push_back(a(r));
    yb.push_back(b(r));
    sup = std::max(sup, sup_of(r));
  }
  return sup + trapezoid(t, ya) + trapezoid(t, yb);
}

std::vector<double> per_path(const Ensemble& ens, const RecFn& s, const RecFn& a,
                             const RecFn& b) {
  if (ens.paths.empty()) throw std::invalid_argument("lemma statistic: empty ensemble");
  std::vector<double> v(ens.paths.size());
  for (std::size_t p = 0; p < v.size(); ++p) v[p] = path_value(ens.paths[p], s, a, b);
  return v;
}

LemmaStatistic finish(LemmaId id, const Ensemble& ens, std::vector<double> v, double rhs_scale) {
  LemmaStatistic st;
  st.lemma = id;
  const std::size_t n = v.size();
  st.value = pairwise_sum(v.data(), n) / double(n);
  if (n > 1) {
    for (auto& x : v) x = (x - st.value) * (x - st.value);
    st.se = std::sqrt(pairwise_sum(v.data(), n) / double(n - 1) / double(n));
  }
  const auto& u = ens.paths.front().final_state();
  st.n1 = u.n1;
  st.n2 = u.n2;
  st.rhs_scale = rhs_scale;
  st.ratio = st.value / rhs_scale;
  return st;
}

double mean_of(const Ensemble& ens, const std::function<double(const Norms&)>& f) {
  std::vector<double> v;
  for (const auto& n : ens.u0_norms) v.push_back(f(n));
  return v.empty() ? 0.0 : pairwise_sum(v.data(), v.size()) / double(v.size());
}

// ||grad u||^q from ||grad u||^2 without losing exactness at q = 2.
double hpow(double h1_sq, double q) { return q == 2.0 ? h1_sq : std::pow(h1_sq, 0.5 * q); }

}  // namespace

std::vector<double> lemma31_per_path(const Ensemble& ens) {
  return per_path(
      ens, [](const EnergyRecord& r) { return r.l2_sq; },
      [](const EnergyRecord& r) { return r.h1_sq; },
      [](const EnergyRecord& r) { return r.l2s2_pow; });
}

std::vector<double> lemma32_per_path(const Ensemble& ens) {
  return per_path(
      ens, [](const EnergyRecord& r) { return r.h1_sq; },
      [](const EnergyRecord& r) { return r.h2_sq; },
      [](const EnergyRecord& r) { return r.mixed; });
}

std::vector<double> lemma33_per_path(const Ensemble& ens, double p) {
  const double q = p - 2.0;
  auto w = [q](const EnergyRecord& r) { return q == 0.0 ? 1.0 : hpow(r.h1_sq, q); };
  return per_path(
      ens, [p](const EnergyRecord& r) { return hpow(r.h1_sq, p); },
      [w](const EnergyRecord& r) { return w(r) * r.h2_sq; },
      [w](const EnergyRecord& r) { return w(r) * r.mixed; });
}

LemmaStatistic lemma31_statistic(const Ensemble& ens) {
  auto v = lemma31_per_path(ens);
  return finish(LemmaId::L31, ens, std::move(v),
                mean_of(ens, [](const Norms& n) { return n.l2_sq; }) + 1.0);
}

LemmaStatistic lemma32_statistic(const Ensemble& ens) {
  auto v = lemma32_per_path(ens);
  return finish(LemmaId::L32, ens, std::move(v),
                mean_of(ens, [](const Norms& n) { return n.h1_sq; }) + 1.0);
}

LemmaStatistic lemma33_statistic(const Ensemble& ens, double p, double sigma) {
  if (!(p >= 2.0) || !(p < 2.0 * sigma)) throw std::domain_error("lemma33: need 2 <= p < 2 sigma");
  auto v = lemma33_per_path(ens, p);
  auto st = finish(LemmaId::L33, ens, std::move(v),
                   mean_of(ens, [p](const Norms& n) { return hpow(n.h1_sq, p); }) + 1.0);
  st.p = p;
  return st;
}

UniformityScan uniformity_scan(const SimConfig& base, const GLParams& params,
                               const JumpModel& model, const InitialCondition& ic,
                               const std::vector<std::size_t>& levels, std::size_t threads) {
  if (levels.size() < 3) throw std::invalid_argument("uniformity_scan: need >= 3 levels");
  UniformityScan scan;
  scan.levels = levels;
  std::vector<double> r31, r32, r33;
  for (std::size_t n : levels) {
    SimConfig c = base;
    c.n1 = c.n2 = n;
    const Ensemble ens = simulate_ensemble(c, params, model, ic, threads);
    scan.rows.push_back(lemma31_statistic(ens));
    scan.rows.push_back(lemma32_statistic(ens));
    scan.rows.push_back(lemma33_statistic(ens, model.p, params.sigma));
    r31.push_back(scan.rows[scan.rows.size() - 3].ratio);
    r32.push_back(scan.rows[scan.rows.size() - 2].ratio);
    r33.push_back(scan.rows.back().ratio);
  }
  auto spread = [](const std::vector<double>& r) {
    const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    if (*hi == 0.0) return 1.0;
    if (*lo == 0.0) return std::numeric_limits<double>::infinity();
    return *hi / *lo;
  };
  scan.spread31 = spread(r31);
  scan.spread32 = spread(r32);
  scan.spread33 = spread(r33);
  return scan;
}

}  // namespace sggl
