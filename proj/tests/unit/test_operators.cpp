#include "doctest.h"
#include "oracles.hpp"
#include "sggl/operators.hpp"
#include "sggl/rng.hpp"

#include <cmath>

using namespace sggl;
using oracle::pi;

namespace {

GLParams model_params() {
  GLParams p;
  p.alpha = 0.3;
  p.beta = 0.5;
  p.gamma = 0.1;
  p.sigma = 3.0;
  p.lambda1 = {cplx(0.2, -0.1), cplx(0.05, 0.3)};
  p.lambda2 = {cplx(-0.1, 0.2), cplx(0.4, 0.0)};
  return p;
}

SpectralField random_field(std::size_t n, const GLParams& p, std::uint64_t seed, bool real = false) {
  SpectralField u(n, n, p);
  Rng rng(seed, 0, Stream::Sampler);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = 1; k <= n; ++k) {
      const double s = 1.0 / double(j * j + k * k);
      u(j, k) = s * cplx(rng.normal(), real ? 0.0 : rng.normal());
    }
  return u;
}

PhysicalGrid point(cplx v, cplx gx = 0.0, cplx gy = 0.0) {
  PhysicalGrid g(1, 1, pi, pi);
  g.values = {v};
  g.grad_x = {gx};
  g.grad_y = {gy};
  return g;
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (auto x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("apply_A") {
  GLParams p;
  p.alpha = 0.0;
  SpectralField u(3, 3, p);
  u(1, 1) = cplx(0.4, 0.7);
  CHECK(std::abs(apply_A(u, p)(1, 1) + 2.0 * u(1, 1)) < 1e-15);
  p.alpha = 1.0;
  CHECK(std::abs(apply_A(u, p)(1, 1) + cplx(1.0, 1.0) * 2.0 * u(1, 1)) < 1e-15);
  CHECK(norms(apply_A(SpectralField(3, 3, p), p)).l2_sq == 0.0);

  // linearity and dissipativity
  const auto P = model_params();
  const auto a = random_field(5, P, 1), b = random_field(5, P, 2);
  const cplx c(0.3, -1.2);
  const auto lhs = apply_A(c * a + b, P);
  const auto rhs = c * apply_A(a, P) + apply_A(b, P);
  CHECK(norms(lhs - rhs).l2_sq < 1e-28 * norms(lhs).l2_sq);
  CHECK(inner_re(apply_A(a, P), a) == doctest::Approx(-norms(a).h1_sq).epsilon(1e-14));
}

TEST_CASE("eval_T pointwise") {
  GLParams p;
  p.sigma = 3.0;
  p.beta = 0.0;
  CHECK(std::abs(eval_T(point(1.0), p).values[0] + 1.0) < 1e-15);
  p.sigma = 2.0;
  p.beta = 1.0;
  // -(1 - i) 16 (2i) = -32 i - 32
  CHECK(std::abs(eval_T(point(cplx(0.0, 2.0)), p).values[0] - cplx(-32.0, -32.0)) < 1e-13);
  CHECK(eval_T(point(0.0), p).values[0] == cplx(0.0));
  // degree 2 sigma + 1 for real c > 0
  p.sigma = 3.0;
  const cplx v(0.3, -0.8);
  CHECK(std::abs(eval_T(point(1.5 * v), p).values[0] - std::pow(1.5, 7) * eval_T(point(v), p).values[0]) <
        1e-13);
}

TEST_CASE("eval_F_direct") {
  const auto p = model_params();
  CHECK(eval_F_direct(point(0.0), p).values[0] == cplx(0.0));
  // real u: F = (3 lambda1 + lambda2) . grad u u^2
  const double u = 0.7, gx = -0.4, gy = 1.3;
  const cplx expect = ((3.0 * p.lambda1[0] + p.lambda2[0]) * gx + (3.0 * p.lambda1[1] + p.lambda2[1]) * gy) * u * u;
  CHECK(std::abs(eval_F_direct(point(u, gx, gy), p).values[0] - expect) < 1e-15);
  // cubic homogeneity
  const cplx v(0.2, 0.5), ax(0.1, -0.3), ay(0.7, 0.2);
  const cplx f1 = eval_F_direct(point(v, ax, ay), p).values[0];
  const cplx f2 = eval_F_direct(point(2.0 * v, 2.0 * ax, 2.0 * ay), p).values[0];
  CHECK(std::abs(f2 - 8.0 * f1) < 1e-14);
  PhysicalGrid nog(1, 1, pi, pi);
  nog.values = {1.0};
  CHECK_THROWS_AS(eval_F_direct(nog, p), std::logic_error);
}

TEST_CASE("identity route equivalence") {
  const auto p = model_params();
  const auto g = make_grid(6, 6, p.sigma);
  const auto u = random_field(6, p, 3);
  const auto r = identity9_check(u, p, g);
  CHECK(r.corrected < 1e-12);
  CHECK(r.as_printed > 1e-3);  // O(1) for complex fields

  const auto ur = random_field(6, p, 4, true);
  const auto rr = identity9_check(ur, p, g);
  CHECK(rr.corrected < 1e-12);
  CHECK(rr.as_printed < 1e-12);

  const auto z = identity9_check(SpectralField(6, 6, p), p, g);
  CHECK(z.corrected == 0.0);
  CHECK(z.as_printed == 0.0);

  GLParams q = p;
  q.lambda1 = {};
  const auto grid = to_physical(u, g, true);
  const auto d = eval_F_direct(grid, q), i = eval_F_identity(grid, q);
  for (std::size_t k = 0; k < d.values.size(); ++k) CHECK(std::abs(d.values[k] - i.values[k]) < 1e-15);
}

TEST_CASE("drift decomposition") {
  const auto p = model_params();
  const auto g = make_grid(5, 5, p.sigma);
  const auto u = random_field(5, p, 5);
  const auto d = eval_G(u, p, g);
  const auto sum = d.a_part + d.t_part + d.gamma_part + d.f_part;
  for (std::size_t i = 0; i < sum.size(); ++i) CHECK(sum.a[i] == d.total.a[i]);

  const auto z = eval_G(SpectralField(5, 5, p), p, g);
  CHECK(norms(z.total).l2_sq == 0.0);
}

TEST_CASE("energy identities of the drift pieces") {
  const auto p = model_params();
  const auto g = make_grid(6, 6, p.sigma);
  const auto u = random_field(6, p, 6);
  const auto d = eval_G(u, p, g);
  const auto grid = to_physical(u, g, false);
  // Re <T(u), u> = -||u||_{2s+2}^{2s+2}
  const double l8 = lp_norm_pow(grid, 2.0 * p.sigma + 2.0);
  CHECK(std::abs(inner_re(d.t_part, u) + l8) < 1e-10 * l8);
  CHECK(inner_re(d.a_part, u) == doctest::Approx(-norms(u).h1_sq).epsilon(1e-14));
}

TEST_CASE("T projection against brute-force quadrature") {
  GLParams p;
  p.beta = 0.5;
  p.sigma = 3.0;
  SpectralField u(2, 2, p);
  u(1, 1) = 1.0;
  const auto d = eval_G(u, p, make_grid(2, 2, p.sigma));
  const double c = 2.0 / pi;
  const double q = oracle::integrate(pi, pi, 6, [c](double x, double y) {
    return std::pow(c * std::sin(x) * std::sin(y), 8);
  });
  CHECK(std::abs(d.t_part(1, 1) - (-cplx(1.0, -p.beta) * q)) < 1e-12);
}

TEST_CASE("F projection against brute-force quadrature") {
  const auto p = model_params();
  SpectralField u(3, 3, p);
  u(1, 1) = cplx(0.8, 0.1);
  u(2, 1) = cplx(-0.2, 0.4);
  u(1, 3) = cplx(0.1, 0.1);
  const auto d = eval_G(u, p, make_grid(3, 3, p.sigma));
  const double c = 2.0 / pi;
  auto F = [&](double x, double y) {
    const cplx v = oracle::eval(u, x, y);
    const auto [gx, gy] = oracle::grad(u, x, y);
    const double m2 = std::norm(v);
    return p.lambda1[0] * (2.0 * m2 * gx + v * v * std::conj(gx)) +
           p.lambda1[1] * (2.0 * m2 * gy + v * v * std::conj(gy)) +
           (p.lambda2[0] * gx + p.lambda2[1] * gy) * m2;
  };
  for (std::size_t j = 1; j <= 3; ++j)
    for (std::size_t k = 1; k <= 3; ++k) {
      auto e = [&](double x, double y) { return c * std::sin(j * x) * std::sin(k * y); };
      const double re = oracle::integrate(pi, pi, 4, [&](double x, double y) { return F(x, y).real() * e(x, y); });
      const double im = oracle::integrate(pi, pi, 4, [&](double x, double y) { return F(x, y).imag() * e(x, y); });
      CHECK(std::abs(d.f_part(j, k) - cplx(re, im)) < 1e-11);
    }
}

TEST_CASE("small-amplitude drift is linear") {
  GLParams p;
  p.alpha = 0.0;
  p.beta = 0.0;
  p.gamma = 0.1;
  const double eps = 1e-4;
  SpectralField u(4, 4, p);
  u(1, 2) = eps;
  u(3, 1) = cplx(0.0, eps);
  const auto d = eval_G(u, p, make_grid(4, 4, p.sigma));
  const auto lin = d.a_part + p.gamma * u;
  CHECK(std::sqrt(norms(d.total - lin).l2_sq) < 1e-10 * eps);
  CHECK(max_abs(d.f_part.a) == 0.0);
}
