#include "glassbridge/meanfield.hpp"

#include <cmath>
#include <stdexcept>

namespace glassbridge {

CoinMoments coin_moments(double K) {
  if (!std::isfinite(K)) throw std::domain_error("coin bias must be finite");
  const double m = std::tanh(K);
  return {m, 1.0 - m * m};
}

double rate_exponent(double m, double beta_h) {
  if (!(std::abs(m) < 1.0)) throw std::domain_error("rate function needs |m| < 1");
  return m * beta_h - m * std::atanh(m) + std::log(2.0 / std::sqrt(1.0 - m * m));
}

RatePoint rate_function(double m, double beta_h) { return {m, -rate_exponent(m, beta_h)}; }

void MeanFieldProblem::validate() const {
  if (!(beta >= 0.0)) throw std::domain_error("beta must be nonnegative");
  if (!(J > 0.0)) throw std::domain_error("J must be positive");
  if (z < 1) throw std::domain_error("coordination number must be at least 1");
}

double mf_magnetization(const MeanFieldProblem& problem) {
  problem.validate();
  const double a = problem.coupling();
  if (a <= 1.0) return 0.0;
  // g(m) = m - tanh(a m) is negative on (0, m*) and positive on (m*, 1].
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid - std::tanh(a * mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double m = std::isinf(a) ? 1.0 : 0.5 * (lo + hi);
  if (std::abs(m - std::tanh(a * m)) >= 1e-12)
    throw std::runtime_error("mean-field bisection failed to converge");
  return m;
}

double mf_critical_beta(double J, int z) {
  MeanFieldProblem{0.0, J, z}.validate();
  return 1.0 / (z * J);
}

std::pair<double, double> mf_small_m_roots(const MeanFieldProblem& problem) {
  problem.validate();
  const double a = problem.coupling();
  if (a < 1.0) throw std::domain_error("small-m roots exist only for beta J z >= 1");
  const double m = std::sqrt(3.0 * (a - 1.0)) / a;
  return {m, -m};
}

std::vector<MeanFieldPoint> mf_scan(double J, int z, const std::vector<double>& betas) {
  std::vector<MeanFieldPoint> out;
  out.reserve(betas.size());
  for (double b : betas) out.push_back({b, mf_magnetization({b, J, z})});
  return out;
}

}  // namespace glassbridge
