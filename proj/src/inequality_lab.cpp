#include "sggl/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "sggl/operators.hpp"
#include "sggl/parallel.hpp"

namespace sggl {

namespace {

constexpr double kFieldTol = 1e-8;
constexpr double kOyTol = 1e-10;
constexpr double kIdentityTol = 1e-10;

double mod_pow(double m2, double sigma) {
  if (sigma == 3.0) return m2 * m2 * m2;
  if (sigma == 2.0) return m2 * m2;
  return std::pow(m2, sigma);
}

double max_abs(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

OkazawaYokota okazawa_yokota_ratio(const std::vector<cplx>& z, const std::vector<cplx>& w,
                                   double p) {
  if (z.size() != w.size() || z.empty()) throw std::invalid_argument("okazawa_yokota: dimension");
  if (!(p > 1.0)) throw std::invalid_argument("okazawa_yokota: p <= 1");
  double nz = 0.0, nw = 0.0, nd = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    nz += std::norm(z[i]);
    nw += std::norm(w[i]);
    nd += std::norm(z[i] - w[i]);
  }
  if (nz == 0.0 || nw == 0.0 || nd == 0.0)
    throw std::invalid_argument("okazawa_yokota: degenerate pair");
  const double fz = std::pow(nz, 0.5 * (p - 2.0)), fw = std::pow(nw, 0.5 * (p - 2.0));
  cplx P = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) P += (fz * z[i] - fw * w[i]) * std::conj(z[i] - w[i]);
  OkazawaYokota r;
  r.re = P.real();
  r.bound = std::abs(p - 2.0) / (2.0 * std::sqrt(p - 1.0));
  r.ratio = r.re > 0.0 ? std::abs(P.imag()) / r.re : std::numeric_limits<double>::infinity();
  return r;
}

Slack m_form_check(const SpectralField& u, double sigma, double beta, const GridSpec& g) {
  const PhysicalGrid grid = to_physical(u, g, true);
  SpectralField lap = u;
  for (std::size_t j = 1; j <= u.n1; ++j)
    for (std::size_t k = 1; k <= u.n2; ++k) lap(j, k) *= -u.mu(j, k);
  const PhysicalGrid lg = to_physical(lap, g, false);
  cplx X = 0.0;
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    const cplx v = grid.values[i];
    X += mod_pow(std::norm(v), sigma) * std::conj(v) * lg.values[i];
  }
  X *= grid.weight();
  const double t1 = 2.0 * (cplx(1.0, beta) * X).real();
  const double t2 = 2.0 * lambda_beta(sigma, beta) * mixed_term(grid, sigma);
  return {t1 + t2, max_abs({t1, t2})};
}

Lemma35Result lemma35_check(const SpectralField& u, const SpectralField& phi,
                            const GLParams& params, const GridSpec& g, bool allow_any) {
  const double s = params.sigma, b = params.beta;
  if (!allow_any && !(std::abs(b) > 0.0 && std::abs(b) < params.beta_threshold()))
    throw RegimeError("lemma35_check: |beta| outside (0, sqrt(2 sigma+1)/sigma)");
  const PhysicalGrid gu = to_physical(u, g, false);
  const PhysicalGrid gp = to_physical(phi, g, false);
  cplx P = 0.0;
  double wpow = 0.0;
  for (std::size_t i = 0; i < gu.values.size(); ++i) {
    const cplx a = gu.values[i], c = gp.values[i];
    const cplx d = a - c;
    P += (mod_pow(std::norm(a), s) * a - mod_pow(std::norm(c), s) * c) * std::conj(d);
    wpow += mod_pow(std::norm(d), s + 1.0);
  }
  P *= gu.weight();
  wpow *= gu.weight();

  Lemma35Result r;
  r.m = P.real();
  r.n = P.imag();
  r.re_I = -r.m - b * r.n;
  r.w_pow = wpow;
  const double lower = std::pow(2.0, -2.0 * s) * wpow;
  const double coef = 1.0 - s * std::abs(b) / std::sqrt(2.0 * s + 1.0);
  r.bound = {r.re_I + coef * lower, max_abs({r.re_I, r.m, b * r.n, coef * lower})};
  r.m_lower = {lower - r.m, max_abs({lower, r.m})};
  return r;
}

Lemma36Result lemma36_bound(const SpectralField& u, const SpectralField& phi,
                            const MonotonicityConfig& cfg, const GLParams& params,
                            const GridSpec& g, Pairing which) {
  if (!cfg.derived) throw std::logic_error("lemma36_bound: monotonicity config not derived");
  const double s = params.sigma;
  const auto& l1 = params.lambda1;
  const CVec2 c1{2.0 * l1[0] + params.lambda2[0], 2.0 * l1[1] + params.lambda2[1]};
  const double a = which == Pairing::J ? norm(c1) : norm(l1);

  const PhysicalGrid gu = to_physical(u, g, true);
  const PhysicalGrid gp = to_physical(phi, g, true);
  const std::size_t N = gu.values.size();
  std::vector<cplx> fx(N), fy(N);
  for (std::size_t i = 0; i < N; ++i) {
    const cplx U = gu.values[i], V = gp.values[i];
    if (which == Pairing::J) {
      fx[i] = c1[0] * (gu.grad_x[i] * std::norm(U) - gp.grad_x[i] * std::norm(V));
      fy[i] = c1[1] * (gu.grad_y[i] * std::norm(U) - gp.grad_y[i] * std::norm(V));
    } else {
      fx[i] = l1[0] * (std::conj(gu.grad_x[i]) * U * U - std::conj(gp.grad_x[i]) * V * V);
      fy[i] = l1[1] * (std::conj(gu.grad_y[i]) * U * U - std::conj(gp.grad_y[i]) * V * V);
    }
  }
  SpectralField pf = to_spectral_mixed(fx, gu.M1, gu.M2, gu.L1, gu.L2, 0, u.n1, u.n2);
  pf += to_spectral_mixed(fy, gu.M1, gu.M2, gu.L1, gu.L2, 1, u.n1, u.n2);
  const SpectralField w = u - phi;

  Lemma36Result r;
  r.re = inner_re(pf, w);

  const auto cc = chain_constants(a, s, cfg);
  const auto nw = norms(w);
  const auto np = norms(phi);
  const double g_phi = std::sqrt(np.h1_sq);
  auto gp_pow = [g_phi](double e) { return g_phi == 0.0 ? 0.0 : std::pow(g_phi, e); };
  const PhysicalGrid gw = to_physical(w, g, false);
  const double wpow = lp_norm_pow(gw, 2.0 * s + 2.0);
  const double eps_tilde = cfg.eps8 + cfg.eps10 + cfg.eps12 + cfg.eps14;
  const double eps_hat = cfg.eps9 + cfg.eps11;
  const double coef = cc.c_8_9 + (cfg.eps13 + cfg.eps15) * np.l2_sq +
                      cc.c_10_11 * gp_pow(2.0 * s / (s - 1.0)) +
                      cc.c_12_13 * gp_pow((7.0 * s - 2.0) / (s + 1.0)) +
                      cc.c_14_15 * gp_pow((10.0 * s + 4.0) / (s + 4.0));
  const double b1 = eps_tilde * nw.h1_sq, b2 = eps_hat * wpow, b3 = coef * nw.l2_sq;
  r.bound = b1 + b2 + b3;
  r.slack = {r.re - r.bound, max_abs({r.re, b1, b2, b3})};
  return r;
}

Monotonicity34 monotonicity_34_check(const SpectralField& u1, const SpectralField& u2,
                                     const GLParams& params, const JumpModel& model,
                                     const MonotonicityConfig& cfg, const GridSpec& g,
                                     bool allow_any) {
  if (!cfg.derived) throw std::logic_error("monotonicity_34_check: config not derived");
  if (!allow_any && !cfg.contraction_valid)
    throw RegimeError("monotonicity_34_check: contraction flags not satisfied");
  const SpectralField w = u1 - u2;
  const auto nw = norms(w);
  const auto np = norms(u2);
  const double k3 = model.marks() > 0 ? model.constants().k3 : 0.0;

  Monotonicity34 r;
  r.r_term = -r_prime(cfg, params.sigma, np.l2_sq, np.h1_sq, k3) * nw.l2_sq;

  const auto d1 = eval_G(u1, params, g);
  const auto d2 = eval_G(u2, params, g);
  const double ta = 2.0 * inner_re(d1.a_part - d2.a_part, w);
  const double tt = 2.0 * inner_re(d1.t_part - d2.t_part, w);
  const double tg = 2.0 * inner_re(d1.gamma_part - d2.gamma_part, w);
  const double tf = 2.0 * inner_re(d1.f_part - d2.f_part, w);
  r.drift_term = ta + tt + tg + tf;

  for (std::size_t m = 0; m < model.marks(); ++m) {
    const SpectralField dg = g_apply(model, 0.0, u1, m, g) - g_apply(model, 0.0, u2, m, g);
    r.noise_term += model.nu[m] * norms(dg).l2_sq;
  }
  r.slack = {r.r_term + r.drift_term + r.noise_term,
             max_abs({r.r_term, ta, tt, tg, tf, r.noise_term})};
  return r;
}

// ---------------------------------------------------------------------------

SpectralField random_field(std::size_t n1, std::size_t n2, const GLParams& params, Rng& rng,
                           double decay, double amplitude) {
  SpectralField u(n1, n2, params);
  for (std::size_t j = 1; j <= n1; ++j)
    for (std::size_t k = 1; k <= n2; ++k) {
      const double sd = std::pow(double(j * j + k * k), -0.5 * decay);
      const double re = rng.normal(), im = rng.normal();
      u(j, k) = sd * cplx(re, im);
    }
  const double l2 = std::sqrt(norms(u).l2_sq);
  if (l2 > 0.0) u *= amplitude / l2;
  return u;
}

std::pair<SpectralField, SpectralField> negative_control_pair(const GLParams& params,
                                                              std::size_t n, double amplitude) {
  // z(rho, theta) = (rho^{2s+1} e^{i theta} - 1)(rho e^{-i theta} - 1) is the pointwise
  // pairing for u = rho e^{i theta} v, phi = v; maximize -beta Im z / Re z.
  const double s = params.sigma;
  const double b = params.beta == 0.0 ? 1.0 : params.beta;
  double best = -1e300, best_rho = 1.0, best_th = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double rho = std::pow(10.0, -2.0 + 4.0 * i / 400.0);
    for (int k = -360; k <= 360; ++k) {
      const double th = std::numbers::pi * k / 360.0;
      const cplx z = (std::pow(rho, 2.0 * s + 1.0) * std::polar(1.0, th) - 1.0) *
                     (rho * std::polar(1.0, -th) - 1.0);
      if (z.real() <= 0.0) continue;
      const double v = -b * z.imag() / z.real();
      if (v > best) {
        best = v;
        best_rho = rho;
        best_th = th;
      }
    }
  }
  SpectralField v(n, n, params);
  v(1, 1) = 1.0;
  if (n >= 2) v(1, 2) = 0.4;
  if (n >= 2) v(2, 1) = -0.3;
  v *= amplitude;
  SpectralField u = std::polar(best_rho, best_th) * v;
  return {u, v};
}

// ---------------------------------------------------------------------------

bool SuiteReport::ok() const {
  for (const auto& c : checks) {
    if (c.negative_control) {
      if (c.violations == 0) return false;
    } else if (c.violations > 0) {
      return false;
    }
  }
  return true;
}

namespace {

struct PairSample {
  SpectralField u, phi;
};

// Pair with amplitudes spread over decades; a quarter have phi = 0 and a
// quarter have phi close to u.
PairSample sample_pair(const GLParams& params, std::size_t n, std::uint64_t seed, std::size_t i) {
  Rng rng(seed, i, Stream::Sampler);
  const double decay = 0.5 + 2.5 * rng.uniform();
  const double amp_u = std::pow(10.0, -1.5 + 2.5 * rng.uniform());
  const double mode = rng.uniform();
  PairSample p;
  p.u = random_field(n, n, params, rng, decay, amp_u);
  if (mode < 0.25) {
    p.phi = SpectralField(n, n, params);
  } else if (mode < 0.5) {
    const double eps = std::pow(10.0, -3.0 + 2.0 * rng.uniform()) * amp_u;
    p.phi = p.u + random_field(n, n, params, rng, decay, eps);
  } else {
    const double amp_p = std::pow(10.0, -1.5 + 2.5 * rng.uniform());
    p.phi = random_field(n, n, params, rng, 0.5 + 2.5 * rng.uniform(), amp_p);
  }
  return p;
}

class Tally {
 public:
  Tally(std::string check, const GLParams& p, std::size_t samples, double tol, bool neg = false) {
    r_.check = std::move(check);
    r_.sigma = p.sigma;
    r_.beta = p.beta;
    r_.samples = samples;
    r_.tolerance = tol;
    r_.negative_control = neg;
    r_.max_slack = -std::numeric_limits<double>::infinity();
  }
  // Returns true when the sample is a violation.
  bool add(const Slack& s) {
    const double rel = s.scale > 0.0 ? s.slack / s.scale : s.slack;
    std::lock_guard<std::mutex> lock(mu_);
    r_.max_slack = std::max(r_.max_slack, rel);
    const bool v = s.violated(r_.tolerance);
    if (v) ++r_.violations;
    return v;
  }
  CheckResult result() const {
    CheckResult r = r_;
    if (r.samples == 0 || !std::isfinite(r.max_slack)) r.max_slack = 0.0;
    return r;
  }

 private:
  CheckResult r_;
  std::mutex mu_;
};

}  // namespace

SuiteReport run_inequality_suite(const GLParams& params, const JumpModel& model,
                                 const MonotonicityConfig& eps, const SuiteConfig& sc) {
  SuiteReport rep;
  std::mutex wmu;
  auto witness = [&](const std::string& check, const SpectralField& u, const SpectralField& phi) {
    std::lock_guard<std::mutex> lock(wmu);
    if (rep.witnesses.size() < sc.max_witnesses) rep.witnesses.push_back({check, u, phi});
  };
  const std::size_t n = sc.n;
  const GridSpec g = make_grid(n, n, params.sigma);
  const NoiseConstants kc = model.marks() > 0 ? model.constants() : NoiseConstants{};

  // Okazawa-Yokota on C^d
  {
    Tally t("okazawa_yokota", params, sc.oy_samples, kOyTol);
    parallel_for(sc.oy_samples, sc.threads, [&](std::size_t i) {
      Rng rng(sc.seed, i, Stream::Isometry);
      const double p = 1.1 + (12.0 - 1.1) * rng.uniform();
      const std::size_t d = 1 + std::size_t(rng.uniform() * 8.0) % 8;
      const double sz = std::pow(10.0, -3.0 + 6.0 * rng.uniform());
      const double sw = std::pow(10.0, -3.0 + 6.0 * rng.uniform());
      std::vector<cplx> z(d), w(d);
      for (std::size_t k = 0; k < d; ++k) {
        z[k] = sz * cplx(rng.normal(), rng.normal());
        w[k] = sw * cplx(rng.normal(), rng.normal());
      }
      const auto r = okazawa_yokota_ratio(z, w, p);
      t.add({r.ratio - r.bound, 1.0});
    });
    rep.checks.push_back(t.result());
  }

  // sign of lambda_beta against the threshold
  {
    const double sigmas[] = {2.5, 3.0, 4.0};
    Tally t("lambda_beta_sign", params, 3000, 0.0);
    for (double s : sigmas) {
      const double thr = std::sqrt(2.0 * s + 1.0) / s;
      for (int i = 0; i < 1000; ++i) {
        const double b = 2.0 * thr * (i + 0.5) / 1000.0;
        const bool pos = lambda_beta(s, b) > 0.0;
        const bool in = std::abs(b) < thr;
        t.add({pos == in ? -1.0 : 1.0, 0.0});
      }
    }
    rep.checks.push_back(t.result());
  }

  // identity route equivalence
  {
    Tally tc("identity9", params, sc.samples, kIdentityTol);
    Tally tp("identity9_as_printed", params, sc.samples, kIdentityTol, true);
    parallel_for(sc.samples, sc.threads, [&](std::size_t i) {
      Rng rng(sc.seed ^ 0x9e37u, i, Stream::Sampler);
      GLParams q = params;
      // exercise the identity even when the model itself has lambda = 0
      if (norm(q.lambda1) == 0.0 && norm(q.lambda2) == 0.0) {
        q.lambda1 = {cplx(0.3, -0.1), cplx(-0.2, 0.25)};
        q.lambda2 = {cplx(0.1, 0.2), cplx(0.15, 0.0)};
      }
      const auto u = random_field(n, n, q, rng, 1.0 + rng.uniform(), 1.0);
      const auto r = identity9_check(u, q, g);
      if (tc.add({r.corrected, 1.0})) witness("identity9", u, u);
      tp.add({r.as_printed, 1.0});
    });
    rep.checks.push_back(tc.result());
    rep.checks.push_back(tp.result());
  }

  const bool beta_ok = std::abs(params.beta) > 0.0 && std::abs(params.beta) < params.beta_threshold();

  if (lambda_beta(params.sigma, params.beta) > 0.0) {
    Tally t("m_form", params, sc.samples, kFieldTol);
    parallel_for(sc.samples, sc.threads, [&](std::size_t i) {
      const auto p = sample_pair(params, n, sc.seed, i);
      if (t.add(m_form_check(p.u, params.sigma, params.beta, g))) witness("m_form", p.u, p.phi);
    });
    rep.checks.push_back(t.result());
  }

  {
    Tally tm("lemma35_m_lower", params, sc.samples, kFieldTol);
    Tally tb("lemma35", params, beta_ok ? sc.samples : 0, kFieldTol);
    parallel_for(sc.samples, sc.threads, [&](std::size_t i) {
      const auto p = sample_pair(params, n, sc.seed, i);
      const auto r = lemma35_check(p.u, p.phi, params, g, true);
      if (tm.add(r.m_lower)) witness("lemma35_m_lower", p.u, p.phi);
      if (beta_ok && tb.add(r.bound)) witness("lemma35", p.u, p.phi);
    });
    rep.checks.push_back(tm.result());
    if (beta_ok) rep.checks.push_back(tb.result());
  }

  if (params.sigma > 2.0) {
    const auto cfg = derive_monotonicity_config(eps, params, kc);
    Tally tj("lemma36_J", params, sc.samples, kFieldTol);
    Tally tk("lemma36_K", params, sc.samples, kFieldTol);
    parallel_for(sc.samples, sc.threads, [&](std::size_t i) {
      const auto p = sample_pair(params, n, sc.seed, i);
      if (tj.add(lemma36_bound(p.u, p.phi, cfg, params, g, Pairing::J).slack))
        witness("lemma36_J", p.u, p.phi);
      if (tk.add(lemma36_bound(p.u, p.phi, cfg, params, g, Pairing::K).slack))
        witness("lemma36_K", p.u, p.phi);
    });
    rep.checks.push_back(tj.result());
    rep.checks.push_back(tk.result());

    if (cfg.contraction_valid) {
      Tally t("monotonicity34", params, sc.samples, kFieldTol);
      parallel_for(sc.samples, sc.threads, [&](std::size_t i) {
        const auto p = sample_pair(params, n, sc.seed, i);
        if (t.add(monotonicity_34_check(p.u, p.phi, params, model, cfg, g).slack))
          witness("monotonicity34", p.u, p.phi);
      });
      rep.checks.push_back(t.result());
    }

    if (sc.negative_control) {
      GLParams bad = params;
      bad.beta = 1.5 * params.beta_threshold() * (params.beta < 0.0 ? -1.0 : 1.0);
      const auto bcfg = derive_monotonicity_config(eps, bad, kc);
      Tally t("monotonicity34_negative", bad, sc.samples + 1, kFieldTol, true);
      parallel_for(sc.samples, sc.threads, [&](std::size_t i) {
        const auto p = sample_pair(bad, n, sc.seed, i);
        if (t.add(monotonicity_34_check(p.u, p.phi, bad, model, bcfg, g, true).slack))
          witness("monotonicity34_negative", p.u, p.phi);
      });
      // constructed pair, amplitude raised until the nonlinear term dominates
      for (double amp = 1.0; amp <= 1e6; amp *= 10.0) {
        const auto [u, phi] = negative_control_pair(bad, n, amp);
        const auto r = monotonicity_34_check(u, phi, bad, model, bcfg, g, true);
        if (r.slack.violated(kFieldTol) || amp >= 1e6) {
          if (t.add(r.slack)) witness("monotonicity34_negative", u, phi);
          break;
        }
      }
      rep.checks.push_back(t.result());
    }
  }

  // GN constants: numerical extremization must not exceed the analytic bound
  {
    const double qs[] = {3.0, 4.0, 6.0, 2.0 * params.sigma + 2.0};
    Tally t("gn_constant", params, 4, 0.0);
    for (std::size_t i = 0; i < 4; ++i) {
      const auto e = gn_extremize(qs[i], params, std::min<std::size_t>(n, 6),
                                  std::max<std::size_t>(sc.samples / 10, 20), sc.seed + i);
      t.add({e.best_ratio - e.bound, e.bound});
    }
    rep.checks.push_back(t.result());
  }
  return rep;
}

GnEstimate gn_extremize(double q, const GLParams& params, std::size_t n, std::size_t samples,
                        std::uint64_t seed) {
  GnEstimate e;
  e.q = q;
  e.bound = gn_constant(q);
  const GridSpec g = make_grid(n, n, std::max(1.0, 0.5 * q));
  auto ratio = [&](const SpectralField& u) {
    const auto nn = norms(u);
    const double lq = std::pow(lp_norm_pow(to_physical(u, g, false), q), 1.0 / q);
    return lq / (std::pow(nn.l2_sq, 1.0 / q) * std::pow(nn.h1_sq, 0.5 - 1.0 / q));
  };
  Rng rng(seed, 0, Stream::Sampler);
  SpectralField best;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto u = random_field(n, n, params, rng, 0.5 + 3.0 * rng.uniform(), 1.0);
    const double r = ratio(u);
    if (r > e.best_ratio) {
      e.best_ratio = r;
      best = u;
    }
  }
  // hill climbing with shrinking steps
  double step = 0.3;
  for (int it = 0; it < 400; ++it) {
    SpectralField c = best;
    const std::size_t j = 1 + std::size_t(rng.uniform() * double(n)) % n;
    const std::size_t k = 1 + std::size_t(rng.uniform() * double(n)) % n;
    c(j, k) += step * cplx(rng.normal(), rng.normal());
    if (norms(c).l2_sq == 0.0) continue;
    const double r = ratio(c);
    if (r > e.best_ratio) {
      e.best_ratio = r;
      best = c;
    } else if (it % 50 == 49) {
      step *= 0.5;
    }
  }
  return e;
}

}  // namespace sggl
