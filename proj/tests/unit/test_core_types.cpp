#include "doctest.h"
#include "sggl/core_types.hpp"

#include <cmath>
#include <limits>

using namespace sggl;

TEST_CASE("validate_regime flags") {
  GLParams p;
  NoiseConstants k;
  p.sigma = 3.0;
  p.beta = 0.5;
  k.p = 4.0;
  auto r = validate_regime(p, k);
  CHECK(r.beta_ok);  // sqrt(7)/3 = 0.8819 > 0.5
  CHECK(r.sigma_ok);
  CHECK(r.p_ok);
  CHECK(std::abs(p.beta_threshold() - std::sqrt(7.0) / 3.0) < 1e-15);

  p.beta = 0.0;
  CHECK_FALSE(validate_regime(p, k).beta_ok);

  p.sigma = 2.0;
  p.beta = 0.5;
  r = validate_regime(p, k);
  CHECK_FALSE(r.sigma_ok);
  CHECK_FALSE(r.p_ok);  // p = 4 is not < 2 sigma
}

TEST_CASE("validate_regime is pure") {
  GLParams p;
  NoiseConstants k;
  k.k2 = 0.3;
  CHECK(validate_regime(p, k) == validate_regime(p, k));
}

TEST_CASE("k2 smallness placeholder") {
  NoiseConstants k;
  GLParams p;
  k.k2 = 0.49;
  CHECK(validate_regime(p, k).k_small_ok);
  k.k2 = 0.51;
  CHECK_FALSE(validate_regime(p, k).k_small_ok);
  CHECK(k2_smallness_bound() == doctest::Approx(0.5));
}

TEST_CASE("beta threshold decreases in sigma") {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200; ++i) {
    GLParams p;
    p.sigma = 2.0 + 0.05 * i;
    CHECK(p.beta_threshold() < prev);
    prev = p.beta_threshold();
  }
}

TEST_CASE("parameter validation names the key") {
  GLParams p;
  p.gamma = -1.0;
  try {
    p.validate();
    FAIL("no throw");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "gamma");
  }
  p = GLParams{};
  p.L2 = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = GLParams{};
  p.alpha = std::nan("");
  CHECK_THROWS_AS(p.validate(), ConfigError);
  // out-of-regime but meaningful values are accepted
  p = GLParams{};
  p.sigma = 1.5;
  p.beta = 5.0;
  p.gamma = 0.0;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("sim config validation") {
  SimConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.n_steps() == 100);
  c.dt = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SimConfig{};
  c.n1 = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SimConfig{};
  c.blowup_radius = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("noise constants validation") {
  NoiseConstants k;
  k.p = 2.0;
  CHECK_NOTHROW(k.validate(3.0));
  k.p = 6.0;
  CHECK_THROWS_AS(k.validate(3.0), ConfigError);
  k.p = 2.0;
  k.k3 = -1.0;
  CHECK_THROWS_AS(k.validate(3.0), ConfigError);
}

TEST_CASE("monotonicity eps must be positive") {
  MonotonicityConfig m;
  CHECK_NOTHROW(m.validate_eps());
  m.eps12 = 0.0;
  CHECK_THROWS_AS(m.validate_eps(), ConfigError);
}
