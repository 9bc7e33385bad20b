#include "sggl/core_types.hpp"

#include <cmath>

namespace sggl {

double norm(const CVec2& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

ConfigError::ConfigError(std::string key, const std::string& what)
    : std::runtime_error(key + ": " + what), key_(std::move(key)) {}

namespace {

void require_finite(const char* key, double v) {
  if (!std::isfinite(v)) throw ConfigError(key, "must be finite");
}

void require_finite(const char* key, const CVec2& v) {
  for (const auto& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ConfigError(key, "must be finite");
    }
  }
}

}  // namespace

void GLParams::validate() const {
  require_finite("alpha", alpha);
  require_finite("beta", beta);
  require_finite("gamma", gamma);
  require_finite("sigma", sigma);
  require_finite("lambda1", lambda1);
  require_finite("lambda2", lambda2);
  require_finite("L1", L1);
  require_finite("L2", L2);
  if (gamma < 0.0) throw ConfigError("gamma", "must be >= 0");
  if (sigma <= 0.0) throw ConfigError("sigma", "must be > 0");
  if (L1 <= 0.0) throw ConfigError("L1", "must be > 0");
  if (L2 <= 0.0) throw ConfigError("L2", "must be > 0");
}

double GLParams::beta_threshold() const { return std::sqrt(2.0 * sigma + 1.0) / sigma; }

bool GLParams::integer_sigma() const { return sigma == std::floor(sigma); }

void NoiseConstants::validate(double sigma) const {
  const char* names[] = {"k1", "k2", "k3", "k4"};
  const double ks[] = {k1, k2, k3, k4};
  for (int i = 0; i < 4; ++i) {
    if (!(ks[i] >= 0.0)) throw ConfigError(names[i], "must be >= 0");
  }
  if (!std::isfinite(p) || p < 2.0 || p >= 2.0 * sigma) {
    throw ConfigError("p", "must satisfy 2 <= p < 2 sigma");
  }
}

double k2_smallness_bound() {
  return 1.5 / (2.0 * kAssumedBdgConstant * kAssumedBdgConstant + 1.0);
}

RegimeReport validate_regime(const GLParams& params, const NoiseConstants& noise) {
  RegimeReport r;
  const double b = std::abs(params.beta);
  r.beta_ok = b > 0.0 && b < params.beta_threshold();
  r.sigma_ok = params.sigma > 2.0;
  r.p_ok = noise.p >= 2.0 && noise.p < 2.0 * params.sigma;
  r.k_small_ok = noise.k2 < k2_smallness_bound();
  return r;
}

void SimConfig::validate() const {
  if (n1 < 1) throw ConfigError("n1", "must be >= 1");
  if (n2 < 1) throw ConfigError("n2", "must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt", "must be > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end", "must be > 0");
  if (!(dt < t_end)) throw ConfigError("dt", "must be < t_end");
  if (!(blowup_radius > 0.0)) throw ConfigError("blowup_radius", "must be > 0");
  if (n_paths < 1) throw ConfigError("n_paths", "must be >= 1");
  if (pad != 0.0 && !(pad >= 1.0)) throw ConfigError("pad", "must be 0 (auto) or >= 1");
}

std::size_t SimConfig::n_steps() const {
  return static_cast<std::size_t>(std::llround(t_end / dt));
}

void MonotonicityConfig::validate_eps() const {
  const char* names[] = {"eps8", "eps9", "eps10", "eps11", "eps12", "eps13", "eps14", "eps15"};
  const double vals[] = {eps8, eps9, eps10, eps11, eps12, eps13, eps14, eps15};
  for (int i = 0; i < 8; ++i) {
    if (!(vals[i] > 0.0) || !std::isfinite(vals[i])) throw ConfigError(names[i], "must be > 0");
  }
}

}  // namespace sggl
