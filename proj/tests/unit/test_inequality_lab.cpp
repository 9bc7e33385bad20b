#include "doctest.h"
#include "oracles.hpp"
#include "sggl/inequality_lab.hpp"

#include <cmath>

using namespace sggl;
using oracle::pi;

namespace {

GLParams lab_params(double beta = 0.5) {
  GLParams p;
  p.alpha = 0.3;
  p.beta = beta;
  p.gamma = 0.1;
  p.sigma = 3.0;
  p.lambda1 = {cplx(0.05, 0.02), cplx(-0.03, 0.04)};
  p.lambda2 = {cplx(0.02, -0.01), cplx(0.03, 0.0)};
  return p;
}

JumpModel lin_noise() {
  JumpModel m;
  m.nu = {1.0, 0.5};
  m.h = {0.5, 1.0};
  m.c = 0.1;
  return m;
}

MonotonicityConfig derived(const GLParams& p, const JumpModel& m = lin_noise()) {
  return derive_monotonicity_config(MonotonicityConfig{}, p, m.constants());
}

SpectralField field(const GLParams& p, Rng& r, double amp, std::size_t n = 6) {
  return random_field(n, n, p, r, 2.0, amp);
}

double log_amp(Rng& r) { return std::pow(10.0, -1.5 + 2.5 * r.uniform()); }

}  // namespace

TEST_CASE("Okazawa-Yokota ratio") {
  const std::vector<cplx> z{cplx(1.0, 2.0), cplx(-0.5, 0.1)}, w{cplx(0.3, -1.0), cplx(0.2, 0.2)};
  const auto r2 = okazawa_yokota_ratio(z, w, 2.0);
  CHECK(r2.bound == 0.0);
  CHECK(r2.ratio < 1e-15);
  CHECK(okazawa_yokota_ratio(z, w, 4.0).bound == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(okazawa_yokota_ratio(z, w, 6.0).bound == doctest::Approx(2.0 / std::sqrt(5.0)));
  CHECK_THROWS_AS(okazawa_yokota_ratio(z, z, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(okazawa_yokota_ratio({cplx(0.0), cplx(0.0)}, w, 3.0), std::invalid_argument);

  Rng r(1, 0, Stream::Sampler);
  std::size_t bad = 0;
  for (int i = 0; i < 20000; ++i) {
    const std::size_t d = 1 + std::size_t(r.uniform() * 8.0);
    std::vector<cplx> a(d), b(d);
    for (auto& x : a) x = cplx(r.normal(), r.normal());
    for (auto& x : b) x = cplx(r.normal(), r.normal());
    const double p = 1.1 + 10.9 * r.uniform();
    const auto o = okazawa_yokota_ratio(a, b, p);
    bad += !(o.re > 0.0) || o.ratio > o.bound + 1e-10;
  }
  CHECK(bad == 0);
}

TEST_CASE("lambda_beta and M") {
  CHECK(lambda_beta(2.0, 0.0) == 1.0);
  CHECK(std::abs(lambda_beta(3.0, std::sqrt(7.0) / 3.0)) < 1e-15);
  CHECK(lambda_beta(2.0, 2.0) == doctest::Approx(3.0 - 2.0 * std::sqrt(5.0)));

  // smallest eigenvalue of the symmetric 2x2 form
  for (double s : {2.5, 3.0, 4.0})
    for (double b : {0.0, 0.3, 1.0, 2.0}) {
      const auto e = make_mmatrix(s, b).entries();
      const double tr = e[0] + e[3], det = e[0] * e[3] - e[1] * e[2];
      CHECK(make_mmatrix(s, b).lambda_beta ==
            doctest::Approx((tr - std::sqrt(tr * tr - 4.0 * det)) / 2.0).epsilon(1e-12));
    }

  std::size_t disagree = 0;
  for (double s : {2.5, 3.0, 4.0})
    for (int i = 0; i < 1000; ++i) {
      const double b = -3.0 + 6.0 * (i + 0.5) / 1000.0;
      disagree += (lambda_beta(s, b) > 0.0) != (std::abs(b) < std::sqrt(2.0 * s + 1.0) / s);
    }
  CHECK(disagree == 0);
}

TEST_CASE("m form") {
  const auto g = make_grid(6, 6, 3.0);
  const GLParams p = lab_params();
  const auto z = m_form_check(SpectralField(6, 6, p), 3.0, 0.5, g);
  CHECK(z.slack == 0.0);

  // real u, beta = 0: lhs = -4 sigma int |u|^{2 sigma} |grad u|^2
  SpectralField u(6, 6, p);
  u(1, 1) = 0.8;
  u(2, 1) = 0.3;
  u(1, 3) = -0.2;
  const double X = oracle::integrate(pi, pi, 6, [&](double x, double y) {
    const double v = oracle::eval(u, x, y).real();
    const auto [gx, gy] = oracle::grad(u, x, y);
    return std::pow(v, 6) * (std::norm(gx) + std::norm(gy));
  });
  CHECK(m_form_check(u, 3.0, 0.0, g).slack == doctest::Approx(-12.0 * X).epsilon(1e-10));

  Rng r(2, 0, Stream::Sampler);
  std::size_t bad = 0;
  for (int i = 0; i < 300; ++i) bad += m_form_check(field(p, r, log_amp(r)), 3.0, 0.5, g).violated(1e-8);
  CHECK(bad == 0);
}

TEST_CASE("Re I dissipativity bound") {
  GLParams p = lab_params(0.9);
  p.sigma = 2.0;
  const auto g = make_grid(6, 6, p.sigma);
  Rng r(3, 0, Stream::Sampler);
  const auto u = field(p, r, 1.0);
  const auto same = lemma35_check(u, u, p, g);
  CHECK(same.re_I == 0.0);
  CHECK(same.w_pow == 0.0);
  CHECK(same.bound.slack == 0.0);

  const auto z = lemma35_check(u, SpectralField(6, 6, p), p, g);
  CHECK(z.m == doctest::Approx(z.w_pow).epsilon(1e-12));
  CHECK(z.bound.slack < 0.0);

  std::size_t bad = 0, bad_m = 0;
  for (int i = 0; i < 300; ++i) {
    const auto a = field(p, r, log_amp(r)), b = field(p, r, log_amp(r));
    const auto res = lemma35_check(a, b, p, g);
    bad += res.bound.violated(1e-8);
    bad_m += res.m_lower.violated(1e-8);
    if (res.m < 0.0) ++bad_m;
  }
  CHECK(bad == 0);
  CHECK(bad_m == 0);

  GLParams out = p;
  out.beta = 2.0;
  CHECK_THROWS_AS(lemma35_check(u, u, out, g), RegimeError);
  out.beta = 0.0;
  CHECK_THROWS_AS(lemma35_check(u, u, out, g), RegimeError);
}

TEST_CASE("J and K pairing bounds") {
  const auto p = lab_params();
  const auto cfg = derived(p);
  const auto g = make_grid(6, 6, p.sigma);
  Rng r(4, 0, Stream::Sampler);
  const auto u = field(p, r, 1.0);
  for (auto which : {Pairing::J, Pairing::K}) {
    const auto same = lemma36_bound(u, u, cfg, p, g, which);
    CHECK(same.re == 0.0);
    CHECK(same.bound == 0.0);
  }
  CHECK_THROWS_AS(lemma36_bound(u, u, MonotonicityConfig{}, p, g), std::logic_error);

  std::size_t bad = 0, bad_zero = 0, bad_scaled = 0;
  for (int i = 0; i < 300; ++i) {
    const auto a = field(p, r, log_amp(r)), b = field(p, r, log_amp(r));
    for (auto which : {Pairing::J, Pairing::K}) {
      bad += lemma36_bound(a, b, cfg, p, g, which).slack.violated(1e-8);
      bad_zero += lemma36_bound(a, SpectralField(6, 6, p), cfg, p, g, which).slack.violated(1e-8);
      for (double c : {0.5, 2.0})
        bad_scaled += lemma36_bound(c * a, c * b, cfg, p, g, which).slack.violated(1e-8);
    }
  }
  CHECK(bad == 0);
  CHECK(bad_zero == 0);
  CHECK(bad_scaled == 0);
}

TEST_CASE("r function") {
  const auto p = lab_params();
  const auto cfg = derived(p);
  const std::vector<double> t{0.0, 0.1, 0.25, 0.5};
  const std::vector<double> zero(4, 0.0);
  const auto r = r_function(t, zero, zero, cfg, p.sigma, 0.3);
  for (std::size_t i = 0; i < t.size(); ++i)
    CHECK(r[i] == doctest::Approx((2.0 * cfg.c_8_9_gamma + 0.3) * t[i]).epsilon(1e-14));

  const std::vector<double> l2{1.0, 3.0, 0.5, 2.0}, h1{4.0, 0.1, 9.0, 2.0};
  const auto a = r_function(t, l2, h1, cfg, p.sigma, 0.2);
  const auto b = r_function(t, l2, h1, cfg, p.sigma, 0.4);
  CHECK(a[0] == 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(a[i] >= a[i - 1]);
    CHECK(b[i] - a[i] == doctest::Approx(0.2 * t[i]).epsilon(1e-10));
  }
  CHECK_THROWS_AS(r_prime(MonotonicityConfig{}, 3.0, 1.0, 1.0, 0.0), std::logic_error);
}

TEST_CASE("combined monotonicity bound") {
  const auto p = lab_params();
  const auto m = lin_noise();
  const auto cfg = derived(p, m);
  REQUIRE(cfg.contraction_valid);
  const auto g = make_grid(6, 6, p.sigma);
  Rng r(5, 0, Stream::Sampler);
  const auto u = field(p, r, 1.0);
  const auto same = monotonicity_34_check(u, u, p, m, cfg, g);
  CHECK(same.slack.slack == 0.0);

  std::size_t bad = 0, bad_zero = 0;
  for (int i = 0; i < 300; ++i) {
    const auto a = field(p, r, log_amp(r)), b = field(p, r, log_amp(r));
    bad += monotonicity_34_check(a, b, p, m, cfg, g).slack.violated(1e-8);
    const auto z = monotonicity_34_check(a, SpectralField(6, 6, p), p, m, cfg, g);
    bad_zero += z.slack.violated(1e-8);
    // with phi = 0 the noise term is k3 ||u1||^2 for the linear family
    if (std::abs(z.noise_term - m.constants().k3 * norms(a).l2_sq) > 1e-12 * z.slack.scale) ++bad_zero;
  }
  CHECK(bad == 0);
  CHECK(bad_zero == 0);

  MonotonicityConfig invalid = cfg;
  invalid.contraction_valid = false;
  CHECK_THROWS_AS(monotonicity_34_check(u, u, p, m, invalid, g), RegimeError);
}

TEST_CASE("negative control pair breaks the bound outside the regime") {
  GLParams p = lab_params();
  p.beta = 1.5 * p.beta_threshold();
  const auto g = make_grid(6, 6, p.sigma);
  bool found = false;
  for (double amp = 1.0; amp <= 1e6 && !found; amp *= 10.0) {
    const auto [u, phi] = negative_control_pair(p, 6, amp);
    found = lemma35_check(u, phi, p, g, true).re_I > 0.0;
  }
  CHECK(found);
}

TEST_CASE("derived constants") {
  const auto p = lab_params();
  const auto cfg = derived(p);
  CHECK(cfg.derived);
  CHECK(cfg.eps_tilde == doctest::Approx(0.8));
  CHECK(cfg.eps_hat == doctest::Approx(2e-3));
  const double s = p.sigma;
  CHECK(cfg.K == doctest::Approx(-(1.0 - s * 0.5 / std::sqrt(7.0)) / 64.0 + 2e-3));
  CHECK(cfg.gradient_margin == doctest::Approx(-0.4));
  CHECK(cfg.c_8_9_gamma == doctest::Approx(cfg.c_8_9 + 0.1));

  GLParams low = p;
  low.sigma = 2.0;
  CHECK_THROWS_AS(derived(low), RegimeError);
  MonotonicityConfig bad;
  bad.eps12 = 0.0;
  CHECK_THROWS_AS(derive_monotonicity_config(bad, p, lin_noise().constants()), ConfigError);

  // large eps_hat kills K < 0
  MonotonicityConfig big;
  big.eps9 = big.eps11 = 0.1;
  CHECK_FALSE(derive_monotonicity_config(big, p, lin_noise().constants()).contraction_valid);

  const auto zero = chain_constants(0.0, 3.0, MonotonicityConfig{});
  CHECK(zero.c_8_9 == 0.0);
  CHECK(zero.c_14_15 == 0.0);
  const auto a1 = chain_constants(0.1, 3.0, MonotonicityConfig{});
  const auto a2 = chain_constants(0.2, 3.0, MonotonicityConfig{});
  CHECK(a2.c_8_9 > a1.c_8_9);
  CHECK(a2.c_10_11 > a1.c_10_11);
  CHECK(a2.c_12_13 > a1.c_12_13);
  CHECK(a2.c_14_15 > a1.c_14_15);
}

TEST_CASE("Young constant is the smallest one") {
  for (double alpha : {0.2, 0.5, 0.8})
    for (double eps : {0.01, 1.0}) {
      const double c = 1.7;
      const double Y = young_constant(c, alpha, eps);
      // sup_A c A^alpha - eps A with B = 1
      double best = 0.0;
      for (int i = -4000; i <= 8000; ++i) {
        const double A = std::pow(10.0, i / 500.0);
        best = std::max(best, c * std::pow(A, alpha) - eps * A);
      }
      CHECK(best <= Y * (1.0 + 1e-12));
      CHECK(best >= Y * (1.0 - 1e-4));
    }
  CHECK(young_constant(0.0, 0.5, 1.0) == 0.0);
  CHECK_THROWS_AS(young_constant(1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(young_constant(1.0, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("Gagliardo-Nirenberg constants") {
  CHECK(gn_constant(2.0) == 1.0);
  CHECK(gn_constant(4.0) == doctest::Approx(std::pow(2.0, -0.25)));
  CHECK(std::pow(gn_constant(6.0), 6.0) == doctest::Approx(36.0 / 32.0 * 0.5));
  CHECK_THROWS_AS(gn_constant(1.5), std::invalid_argument);
  const auto p = lab_params();
  for (double q : {3.0, 4.0, 6.0, 8.0}) {
    const auto e = gn_extremize(q, p, 6, 200, 9);
    CHECK(e.best_ratio > 0.0);
    CHECK(e.best_ratio <= e.bound);
  }
}

TEST_CASE("suite report") {
  SuiteConfig sc;
  sc.samples = 60;
  sc.oy_samples = 2000;
  sc.n = 5;
  sc.negative_control = true;
  const auto rep = run_inequality_suite(lab_params(), lin_noise(), MonotonicityConfig{}, sc);
  CHECK(rep.ok());
  bool neg = false;
  for (const auto& c : rep.checks) {
    if (c.negative_control) {
      neg = true;
      CHECK(c.violations > 0);
    } else {
      CHECK(c.violations == 0);
    }
    CHECK(c.samples > 0);
  }
  CHECK(neg);
  CHECK(rep.witnesses.size() <= sc.max_witnesses);
  for (const auto& w : rep.witnesses) CHECK(!w.check.empty());

  // determinism over thread counts
  sc.threads = 1;
  const auto a = run_inequality_suite(lab_params(), lin_noise(), MonotonicityConfig{}, sc);
  sc.threads = 4;
  const auto b = run_inequality_suite(lab_params(), lin_noise(), MonotonicityConfig{}, sc);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].violations == b.checks[i].violations);
    CHECK(a.checks[i].max_slack == b.checks[i].max_slack);
  }
}
