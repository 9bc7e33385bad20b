// Young, Gagliardo-Nirenberg and Young-chain constants.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sggl/inequality_lab.hpp"

namespace sggl {

double young_constant(double c, double alpha, double eps) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("young_constant: alpha not in (0,1)");
  if (!(eps > 0.0)) throw std::invalid_argument("young_constant: eps <= 0");
  if (c < 0.0) throw std::invalid_argument("young_constant: c < 0");
  if (c == 0.0) return 0.0;
  const double b = 1.0 - alpha;
  return b * std::pow(c, 1.0 / b) * std::pow(alpha / eps, alpha / b);
}

double gn_constant(double q) {
  if (!(q >= 2.0) || !std::isfinite(q)) throw std::invalid_argument("gn_constant: q < 2");
  if (q <= 4.0) return std::pow(2.0, -(0.5 - 1.0 / q));
  // G_q^q = (q^2 / 32) G_{q-2}^{q-2}
  const double lower = gn_constant(q - 2.0);
  const double log_gq = (std::log(q * q / 32.0) + (q - 2.0) * std::log(lower)) / q;
  return std::exp(log_gq);
}

ChainConstants chain_constants(double a, double s, const MonotonicityConfig& e) {
  if (!(s > 2.0)) throw RegimeError("Young chain needs sigma > 2");
  ChainConstants c;
  if (a == 0.0) return c;
  const double a2 = a * a;
  c.c_8_9 = young_constant(a2 / e.eps8, 2.0 / s, e.eps9);

  const double g6 = gn_constant(6.0);
  c.c_10_11 = young_constant(a2 * g6 * g6 * g6 / (4.0 * e.eps10), 1.0 / s, e.eps11);

  const double r1 = (8.0 * s - 4.0) / (s - 2.0);
  const double r2 = (16.0 * s - 8.0) / (3.0 * s);
  const double d0 = young_constant(1.0, (5.0 * s - 4.0) / (8.0 * s - 4.0), e.eps12) *
                    std::pow(2.0 * a * gn_constant(r1) * std::pow(gn_constant(r2), 2.0),
                             (8.0 * s - 4.0) / (3.0 * s));
  c.c_12_13 = young_constant(d0, (s - 2.0) / (3.0 * s), e.eps13);

  const double r3 = 3.0 * s / (s + 1.0);
  const double r4 = 12.0 * s / (s - 2.0);
  const double e0 = young_constant(1.0, (2.0 * s - 1.0) / (3.0 * s), e.eps14) *
                    std::pow(2.0 * a * gn_constant(r3), 3.0 * s / (s + 1.0)) *
                    std::pow(gn_constant(r4), 6.0 * s / (s + 1.0));
  c.c_14_15 = young_constant(e0, (s - 2.0) / (2.0 * s + 2.0), e.eps15);
  return c;
}

MonotonicityConfig derive_monotonicity_config(MonotonicityConfig m, const GLParams& params,
                                              const NoiseConstants& noise) {
  m.validate_eps();
  const double s = params.sigma;
  if (!(s > 2.0)) throw RegimeError("monotonicity constants need sigma > 2");
  const auto& l1 = params.lambda1;
  const CVec2 c{2.0 * l1[0] + params.lambda2[0], 2.0 * l1[1] + params.lambda2[1]};
  m.pairing_weight = norm(c) + norm(l1);
  const auto cc = chain_constants(m.pairing_weight, s, m);
  m.c_8_9 = cc.c_8_9;
  m.c_8_9_gamma = cc.c_8_9 + params.gamma;
  m.c_10_11 = cc.c_10_11;
  m.c_12_13 = cc.c_12_13;
  m.c_14_15 = cc.c_14_15;
  m.eps_tilde = m.eps8 + m.eps10 + m.eps12 + m.eps14;
  m.eps_hat = m.eps9 + m.eps11;
  m.K = -(1.0 - s * std::abs(params.beta) / std::sqrt(2.0 * s + 1.0)) * std::pow(2.0, -2.0 * s) +
        m.eps_hat;
  m.gradient_margin = -2.0 + 2.0 * m.eps_tilde + noise.k4;
  m.contraction_valid = m.K < 0.0 && m.gradient_margin < 0.0 && std::isfinite(noise.k3) &&
                        std::isfinite(noise.k4);
  m.derived = true;
  return m;
}

double lambda_beta(double sigma, double beta) {
  return sigma + 1.0 - sigma * std::sqrt(1.0 + beta * beta);
}

MMatrix make_mmatrix(double sigma, double beta) { return {sigma, beta, lambda_beta(sigma, beta)}; }

std::array<double, 4> MMatrix::entries() const {
  return {2.0 * sigma + 1.0, -sigma * beta, -sigma * beta, 1.0};
}

double r_prime(const MonotonicityConfig& c, double s, double l2_sq, double h1_sq, double k3) {
  if (!c.derived) throw std::logic_error("r_prime: monotonicity config not derived");
  const double g = std::sqrt(std::max(h1_sq, 0.0));
  auto gp = [g](double e) { return g == 0.0 ? 0.0 : std::pow(g, e); };
  const double inner = c.c_8_9_gamma + (c.eps13 + c.eps15) * l2_sq +
                       c.c_10_11 * gp(2.0 * s / (s - 1.0)) +
                       c.c_12_13 * gp((7.0 * s - 2.0) / (s + 1.0)) +
                       c.c_14_15 * gp((10.0 * s + 4.0) / (s + 4.0));
  return 2.0 * inner + k3;
}

std::vector<double> r_function(const std::vector<double>& t, const std::vector<double>& l2_sq,
                               const std::vector<double>& h1_sq, const MonotonicityConfig& cfg,
                               double sigma, double k3) {
  std::vector<double> r(t.size(), 0.0);
  if (t.empty()) return r;
  double prev = r_prime(cfg, sigma, l2_sq[0], h1_sq[0], k3);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double cur = r_prime(cfg, sigma, l2_sq[i], h1_sq[i], k3);
    r[i] = r[i - 1] + 0.5 * (t[i] - t[i - 1]) * (prev + cur);
    prev = cur;
  }
  return r;
}

}  // namespace sggl
