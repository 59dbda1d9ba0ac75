#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "glassbridge/meanfield.hpp"

using namespace glassbridge;

namespace {

// Independent oracle: plain bisection on g(m) = m - tanh(a m) over (0, 1].
double oracle_root(double a) {
  if (a <= 1.0) return 0.0;
  double lo = 1e-9, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid - std::tanh(a * mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// log of C(n, k) exactly via lgamma.
double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

TEST(CoinMoments, Examples) {
  auto c0 = coin_moments(0.0);
  EXPECT_DOUBLE_EQ(c0.mean, 0.0);
  EXPECT_DOUBLE_EQ(c0.variance, 1.0);
  auto c1 = coin_moments(1.0);
  EXPECT_NEAR(c1.mean, 0.7615942, 1e-7);
  EXPECT_NEAR(c1.variance, 0.4199743, 1e-7);
  auto big = coin_moments(50.0);
  EXPECT_NEAR(big.mean, 1.0, 1e-15);
  EXPECT_NEAR(big.variance, 0.0, 1e-15);
  EXPECT_THROW(coin_moments(INFINITY), std::domain_error);
}

TEST(CoinMoments, VarianceIsOneMinusMeanSquared) {
  for (double K = -5.0; K <= 5.0; K += 0.125) {
    auto c = coin_moments(K);
    EXPECT_NEAR(c.variance, 1.0 - c.mean * c.mean, 1e-15);
    EXPECT_GT(c.variance, 0.0);
    // Direct two-outcome expectation.
    const double wp = std::exp(K), wm = std::exp(-K);
    EXPECT_NEAR(c.mean, (wp - wm) / (wp + wm), 1e-14);
  }
}

TEST(RateFunction, DomainAndSign) {
  EXPECT_THROW(rate_function(1.0, 0.0), std::domain_error);
  EXPECT_THROW(rate_function(-1.0, 0.3), std::domain_error);
  const auto r = rate_function(0.3, 0.7);
  EXPECT_DOUBLE_EQ(r.f_value, -rate_exponent(0.3, 0.7));
  EXPECT_DOUBLE_EQ(r.m, 0.3);
}

TEST(RateFunction, SymmetricAtZeroField) {
  for (double m = 0.05; m < 0.99; m += 0.05)
    EXPECT_NEAR(rate_exponent(m, 0.0), rate_exponent(-m, 0.0), 1e-14);
  EXPECT_GT(rate_exponent(0.0, 0.0), rate_exponent(0.1, 0.0));
}

TEST(RateFunction, MaximizerIsTanh) {
  for (double bh : {0.0, 0.5, 1.0, -0.8}) {
    double best_m = 0.0, best = -INFINITY;
    for (int i = -99999; i <= 99999; ++i) {
      const double m = i * 1e-5;
      const double v = rate_exponent(m, bh);
      if (v > best) best = v, best_m = m;
    }
    EXPECT_NEAR(best_m, std::tanh(bh), 2e-5) << "beta_h=" << bh;
  }
  EXPECT_NEAR(std::tanh(1.0), 0.76159, 1e-5);
}

TEST(RateFunction, ExponentMatchesBinomialEnumeration) {
  // Brute-force enumeration of all 2^N coin sequences with sum N m; m = 0.4
  // keeps N m an integer of the parity of N for both sizes.
  const double bh = 1.0;
  const double closed = 0.5 * bh - 0.5 * std::atanh(0.5) + std::log(2.0 / std::sqrt(0.75));
  EXPECT_NEAR(rate_exponent(0.5, bh), closed, 1e-15);
  const double m = 0.4;
  double prev_err = INFINITY;
  for (int N : {10, 20}) {
    const int target = static_cast<int>(std::lround(N * m));
    long count = 0;
    for (unsigned long bits = 0; bits < (1ul << N); ++bits)
      if (2 * __builtin_popcountl(bits) - N == target) ++count;
    EXPECT_NEAR(std::log(static_cast<double>(count)), log_choose(N, (N + target) / 2), 1e-9);
    const double per_site = (std::log(static_cast<double>(count)) + bh * N * m) / N;
    const double err = std::abs(per_site - rate_exponent(m, bh));
    EXPECT_LE(err, 2.0 * std::log(N) / N) << "N=" << N;
    EXPECT_LT(err, prev_err);
    prev_err = err;
  }
}

TEST(MeanField, ValidatesProblem) {
  EXPECT_THROW(mf_magnetization({-0.1, 1.0, 6}), std::domain_error);
  EXPECT_THROW(mf_magnetization({0.1, 0.0, 6}), std::domain_error);
  EXPECT_THROW(mf_magnetization({0.1, 1.0, 0}), std::domain_error);
}

TEST(MeanField, ZeroOnDisorderedSide) {
  EXPECT_EQ(mf_magnetization({0.0, 1.0, 6}), 0.0);
  EXPECT_EQ(mf_magnetization({0.1, 1.0, 6}), 0.0);
  EXPECT_EQ(mf_magnetization({1.0 / 6.0, 1.0, 6}), 0.0);
  EXPECT_EQ(mf_magnetization({0.25, 1.0, 4}), 0.0);
}

TEST(MeanField, MatchesBisectionOracle) {
  const double m = mf_magnetization({0.25, 1.0, 6});
  EXPECT_NEAR(m, oracle_root(1.5), 1e-12);
  EXPECT_LT(std::abs(m - std::tanh(1.5 * m)), 1e-12);
  for (double beta = 0.17; beta < 3.0; beta += 0.07) {
    const double mb = mf_magnetization({beta, 1.0, 6});
    EXPECT_NEAR(mb, oracle_root(6.0 * beta), 1e-12) << beta;
    EXPECT_LT(std::abs(mb - std::tanh(6.0 * beta * mb)), 1e-12);
  }
}

TEST(MeanField, MaximizesFreeEnergyExponent) {
  // -beta F / N = -a m^2 / 2 + log(2 cosh(a m)); its maximizer is the stable root.
  const double a = 1.5;
  double best_m = 0.0, best = -INFINITY;
  for (int i = 0; i <= 1000000; ++i) {
    const double m = i * 1e-6;
    const double v = -0.5 * a * m * m + std::log(2.0 * std::cosh(a * m));
    if (v > best) best = v, best_m = m;
  }
  EXPECT_NEAR(mf_magnetization({0.25, 1.0, 6}), best_m, 2e-6);
}

TEST(MeanField, FrozenLimitAndMonotone) {
  EXPECT_NEAR(mf_magnetization({10.0, 1.0, 6}), 1.0, 1e-12);
  std::vector<double> betas;
  for (double b = 0.0; b <= 2.0; b += 0.01) betas.push_back(b);
  const auto scan = mf_scan(1.0, 6, betas);
  ASSERT_EQ(scan.size(), betas.size());
  for (std::size_t i = 1; i < scan.size(); ++i) {
    EXPECT_GE(scan[i].m_star, scan[i - 1].m_star);
    EXPECT_EQ(scan[i].beta, betas[i]);
  }
}

TEST(MeanField, CriticalBeta) {
  EXPECT_DOUBLE_EQ(mf_critical_beta(1.0, 6), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(mf_critical_beta(1.0, 4), 0.25);
  EXPECT_DOUBLE_EQ(mf_critical_beta(2.0, 1), 0.5);
  EXPECT_THROW(mf_critical_beta(0.0, 6), std::domain_error);
}

TEST(MeanField, SmallMagnetizationExpansion) {
  auto at = [](double a) { return MeanFieldProblem{a / 6.0, 1.0, 6}; };
  const auto r1 = mf_small_m_roots(at(1.0));
  EXPECT_EQ(r1.first, 0.0);
  EXPECT_EQ(r1.second, 0.0);
  const auto r101 = mf_small_m_roots(at(1.01));
  EXPECT_NEAR(r101.first, std::sqrt(0.03) / 1.01, 1e-12);
  EXPECT_NEAR(r101.first, 0.1715, 1e-4);
  EXPECT_DOUBLE_EQ(r101.second, -r101.first);
  const double full101 = mf_magnetization(at(1.01));
  EXPECT_LT(std::abs(r101.first - full101) / full101, 0.02);
  const double full11 = mf_magnetization(at(1.1));
  EXPECT_LT(std::abs(mf_small_m_roots(at(1.1)).first - full11) / full11, 0.05);
  EXPECT_THROW(mf_small_m_roots(at(0.9)), std::domain_error);
}
