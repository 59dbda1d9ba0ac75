#pragma once

#include <utility>
#include <vector>

namespace glassbridge {

struct CoinMoments {
  double mean;
  double variance;
};

// Single coin with P(+1) proportional to exp(K), P(-1) to exp(-K).
CoinMoments coin_moments(double K);

struct RatePoint {
  double m;
  // Minus the large-deviation exponent, the quantity plotted against m; its
  // minimum sits at m = tanh(beta_h).
  double f_value;
};

// Exponent m*bh - m*atanh(m) + log(2 / sqrt(1 - m^2)); |m| < 1.
double rate_exponent(double m, double beta_h);
RatePoint rate_function(double m, double beta_h);

struct MeanFieldProblem {
  double beta;
  double J;
  int z;

  void validate() const;
  double coupling() const { return beta * J * z; }
};

// Nonnegative stable root of m = tanh(beta J z m).
double mf_magnetization(const MeanFieldProblem& problem);

double mf_critical_beta(double J, int z);

// Third-order expansion roots +-sqrt(3(a - 1)) / a with a = beta J z >= 1.
std::pair<double, double> mf_small_m_roots(const MeanFieldProblem& problem);

struct MeanFieldPoint {
  double beta;
  double m_star;
};

std::vector<MeanFieldPoint> mf_scan(double J, int z, const std::vector<double>& betas);

}  // namespace glassbridge
