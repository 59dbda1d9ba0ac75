#include <gtest/gtest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "glassbridge/lattice.hpp"
#include "glassbridge/master.hpp"
#include "glassbridge/rng.hpp"
#include "glassbridge/spinglass.hpp"

using namespace glassbridge;

namespace {

std::vector<Coupling> random_couplings(int N, Rng& rng) {
  std::vector<Coupling> c;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (uniform01(rng) < 0.6) c.push_back({i, j, 2.0 * uniform01(rng) - 1.0});
  return c;
}

MasterSystem random_master(int N, Rng& rng, UpdateRule rule) {
  std::vector<double> h(static_cast<std::size_t>(N));
  for (auto& x : h) x = uniform01(rng) - 0.5;
  return MasterSystem::from_couplings(N, random_couplings(N, rng), h, rule);
}

Vector<double> gibbs(const Vector<double>& E, double beta) {
  Vector<double> w = (-beta * (E.array() - E.minCoeff())).exp();
  return w / w.sum();
}

}  // namespace

TEST(TransitionMatrix, StochasticAndDetailedBalance) {
  Rng rng = make_rng(1, StreamKind::instance, 0);
  for (auto rule : {UpdateRule::metropolis, UpdateRule::heat_bath}) {
    const auto m = random_master(5, rng, rule);
    for (double beta : {0.0, 0.7, 2.5}) {
      const auto M = transition_matrix(m, beta);
      EXPECT_GE(M.minCoeff(), 0.0);
      for (int c = 0; c < m.dim(); ++c) EXPECT_NEAR(M.col(c).sum(), 1.0, 1e-14);
      const auto pi = gibbs(m.h0_diag, beta);
      for (int a = 0; a < m.dim(); ++a)
        for (int b = 0; b < m.dim(); ++b)
          EXPECT_NEAR(M(b, a) * pi[a], M(a, b) * pi[b], 1e-14);
      Vector<double> p = Vector<double>::Random(m.dim()).cwiseAbs();
      p /= p.sum();
      EXPECT_NEAR((M * p).sum(), 1.0, 1e-14);
    }
  }
  MasterSystem bad{9, Vector<double>::Zero(512), UpdateRule::metropolis};
  EXPECT_THROW(transition_matrix(bad, 1.0), std::domain_error);
  MasterSystem mismatch{3, Vector<double>::Zero(4), UpdateRule::metropolis};
  EXPECT_THROW(transition_matrix(mismatch, 1.0), std::domain_error);
}

TEST(ClassicalQuantumMap, GroundStateIsGibbsAmplitude) {
  Rng rng = make_rng(2, StreamKind::instance, 0);
  for (int N = 1; N <= 6; ++N) {
    for (auto rule : {UpdateRule::metropolis, UpdateRule::heat_bath}) {
      const auto m = random_master(N, rng, rule);
      const double beta = 0.3 + 0.4 * N;
      const auto H = build_hq(m, beta);
      EXPECT_LT((H - H.transpose()).cwiseAbs().maxCoeff(), 1e-15);
      Eigen::SelfAdjointEigenSolver<DenseHermitian> es(H);
      EXPECT_LT(std::abs(es.eigenvalues()[0]), 1e-10);
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
      const auto psi = equilibrium_amplitudes(m.h0_diag, beta);
      EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
      EXPECT_LT((H * psi).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_NEAR(std::abs(es.eigenvectors().col(0).dot(psi)), 1.0, 1e-10);
      // Every pair correlation equals its thermal value.
      const auto pi = gibbs(m.h0_diag, beta);
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
          double q = 0.0, t = 0.0;
          for (int s = 0; s < m.dim(); ++s) {
            const double o = spin_z(s, i) * spin_z(s, j);
            q += o * psi[s] * psi[s];
            t += o * pi[s];
          }
          EXPECT_NEAR(q, t, 1e-10);
        }
    }
  }
}

TEST(ClassicalQuantumMap, InfiniteTemperatureGroundStateIsUniform) {
  Rng rng = make_rng(3, StreamKind::instance, 0);
  const auto m = random_master(4, rng, UpdateRule::metropolis);
  Eigen::SelfAdjointEigenSolver<DenseHermitian> es(build_hq(m, 0.0));
  for (int s = 0; s < 16; ++s) EXPECT_NEAR(std::abs(es.eigenvectors()(s, 0)), 0.25, 1e-12);
}

TEST(ClassicalQuantumMap, TorusCorrelationsMatchEnumeration) {
  const auto lat = build_torus(2);
  const auto d = uniform_disorder(lat, 0b10010011u);
  std::vector<Coupling> c;
  for (int e = 0; e < lat.num_edges(); ++e)
    c.push_back({lat.endpoints(e)[0], lat.endpoints(e)[1], static_cast<double>(d.tau[e])});
  const double beta = 0.8;
  const auto m = MasterSystem::from_couplings(4, c);
  const auto psi = equilibrium_amplitudes(m.h0_diag, beta);
  Eigen::SelfAdjointEigenSolver<DenseHermitian> es(build_hq(m, beta));
  const Vector<double> g = es.eigenvectors().col(0);
  const auto exact = enumerate_partition(lat, d, beta);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double q = 0.0;
      for (int s = 0; s < 16; ++s) q += spin_z(s, i) * spin_z(s, j) * g[s] * g[s];
      EXPECT_NEAR(q, exact.correlation[i * 4 + j], 1e-10);
    }
  EXPECT_NEAR(std::abs(g.dot(psi)), 1.0, 1e-10);
}

TEST(ClassicalQuantumMap, SpinGlassForm) {
  const std::vector<Coupling> c{{0, 1, 1.0}, {1, 2, -0.7}, {0, 2, 0.4}};
  for (double beta : {0.5, 1.5, 5.0}) {
    const auto H = build_hq_spin_glass(3, c, beta);
    EXPECT_LT((H - H.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    const auto E = classical_energies(3, c);
    const auto psi = equilibrium_amplitudes(E, beta);
    Eigen::SelfAdjointEigenSolver<DenseHermitian> es(H);
    const double scale = H.cwiseAbs().maxCoeff();
    EXPECT_LT(std::abs(es.eigenvalues()[0]) / scale, 1e-12);
    EXPECT_GT(es.eigenvalues()[1] / scale, 1e-6);
    EXPECT_NEAR(std::abs(es.eigenvectors().col(0).dot(psi)), 1.0, 1e-10);
    if (beta == 5.0) {
      // Mass off the minima is at most (#excited / #minima) e^{-beta gap}.
      double on_minima = 0.0, gap = INFINITY;
      int excited = 0, minima = 0;
      for (int s = 0; s < 8; ++s) {
        if (E[s] < E.minCoeff() + 1e-12) {
          ++minima;
          on_minima += psi[s] * psi[s];
        } else {
          ++excited;
          gap = std::min(gap, E[s] - E.minCoeff());
        }
      }
      EXPECT_GT(gap, 0.5);
      EXPECT_GE(on_minima, 1.0 - excited * std::exp(-beta * gap) / minima);
    }
  }
}

TEST(ClassicalJarzynski, MatchesPadePropagation) {
  Rng rng = make_rng(4, StreamKind::instance, 0);
  const auto m = random_master(4, rng, UpdateRule::heat_bath);
  const std::vector<double> betas{0.2, 0.9, 1.5, 2.1};
  const double dt = 0.7;
  const auto r = classical_jarzynski(m, betas, dt);
  const Vector<double>& E = m.h0_diag;
  Vector<double> w = gibbs(E, betas[0]);
  Vector<double> plain = w;
  for (std::size_t k = 0; k + 1 < betas.size(); ++k) {
    const Matrix<double> rate = transition_matrix(m, betas[k]) - Matrix<double>::Identity(16, 16);
    const Matrix<double> P = (dt * rate).exp();
    w = P * w;
    plain = P * plain;
    w = w.cwiseProduct((-(betas[k + 1] - betas[k]) * E.array()).exp().matrix());
  }
  EXPECT_NEAR(r.lhs, w.sum(), 1e-10);
  EXPECT_LT((r.final_distribution - plain).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(r.final_distribution.sum(), 1.0, 1e-12);
  EXPECT_LT(r.abs_error(), 1e-10);
}

TEST(ClassicalJarzynski, ConstantRampIsUnity) {
  Rng rng = make_rng(5, StreamKind::instance, 0);
  const auto m = random_master(5, rng, UpdateRule::metropolis);
  const auto r = classical_jarzynski(m, {1.3, 1.3, 1.3, 1.3}, 0.5);
  EXPECT_NEAR(r.lhs, 1.0, 1e-12);
  EXPECT_NEAR(r.rhs, 1.0, 1e-15);
  EXPECT_LT((r.final_distribution - gibbs(m.h0_diag, 1.3)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ClassicalJarzynski, SingleBondClosedForm) {
  const auto m = MasterSystem::from_couplings(2, {{0, 1, 1.0}});
  const auto r = classical_jarzynski(m, {0.0, 1.0}, 1.0);
  // Z(1) / Z(0) = (2 e + 2 e^{-1}) / 4.
  EXPECT_NEAR(r.rhs, std::cosh(1.0), 1e-14);
  EXPECT_NEAR(r.lhs, std::cosh(1.0), 1e-10);
}

TEST(ClassicalJarzynski, IndependentOfRampGranularity) {
  Rng rng = make_rng(6, StreamKind::instance, 0);
  for (auto rule : {UpdateRule::metropolis, UpdateRule::heat_bath}) {
    const auto m = random_master(6, rng, rule);
    double rhs = NAN;
    for (int n : {1, 2, 5, 20, 100}) {
      std::vector<double> betas;
      for (int k = 0; k <= n; ++k) betas.push_back(2.0 * k / n);
      for (double dt : {0.0, 0.3, 4.0}) {
        const auto r = classical_jarzynski(m, betas, dt);
        // Relative: rhs reaches e^{10} here and each of up to 100 propagations adds roundoff in proportion.
        EXPECT_LT(r.abs_error() / r.rhs, 1e-12) << "n=" << n << " dt=" << dt;
        if (std::isnan(rhs)) rhs = r.rhs;
        EXPECT_NEAR(r.rhs, rhs, 1e-12 * rhs);
      }
    }
  }
  const auto m = random_master(2, rng, UpdateRule::metropolis);
  EXPECT_THROW(classical_jarzynski(m, {}, 1.0), std::invalid_argument);
  EXPECT_THROW(classical_jarzynski(m, {0.0, 1.0}, -1.0), std::domain_error);
}

TEST(Qja, SingleAncillaSingleSpinAmplitudes) {
  const auto m = MasterSystem::from_couplings(1, {}, {0.4});
  const double db = 0.8;
  const auto r = qja_run(m, 1, db, 0.0, 0.0);
  const Vector<double> E = (m.h0_diag.array() + r.energy_shift).matrix();
  EXPECT_GE(E.minCoeff(), 1.0 - 1e-15);
  for (int s = 0; s < 2; ++s) {
    const double y = std::exp(-db * E[s]);
    EXPECT_NEAR(r.final_state[s].real(), std::sqrt(y) / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(r.final_state[s + 2].real(), std::sqrt(1 - y) / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(r.final_state[s].imag(), 0.0, 1e-15);
  }
  EXPECT_NEAR(r.final_state.norm(), 1.0, 1e-14);
}

TEST(Qja, UniformEnergiesGiveUniformOutcome) {
  MasterSystem flat{2, Vector<double>::Constant(4, 0.7), UpdateRule::metropolis};
  const auto r = qja_run(flat, 4, 0.5);
  for (int s = 0; s < 4; ++s) EXPECT_NEAR(r.p0[s], r.success_probability / 4.0, 1e-14);
  EXPECT_LT(r.proportionality_error, 1e-12);
}

TEST(Qja, TwoSpinGibbsRatios) {
  const auto m = MasterSystem::from_couplings(2, {{0, 1, 1.0}}, {0.3, 0.0});
  const int n = 8;
  const double db = 2.0 / n;
  for (double dt : {0.5, 1.0, 3.0}) {
    const auto r = qja_run(m, n, db, 0.0, dt);
    EXPECT_LT(r.proportionality_error, 1e-8);
    EXPECT_GT(r.min_ground_overlap, 1.0 - 1e-8);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        EXPECT_NEAR(r.p0[a] / r.p0[b], std::exp(-2.0 * (m.h0_diag[a] - m.h0_diag[b])), 1e-8);
    // Success is Z'(beta_n) / Z'(0) with the shifted energies.
    const Vector<double> E = (m.h0_diag.array() + r.energy_shift).matrix();
    EXPECT_NEAR(r.success_probability, (-2.0 * E.array()).exp().sum() / 4.0, 1e-12);
    EXPECT_NEAR(r.final_state.norm(), 1.0, 1e-12);
  }
}

TEST(Qja, Guards) {
  const auto big = MasterSystem::from_couplings(4, {});
  EXPECT_THROW(qja_run(big, 2, 0.1), std::domain_error);
  const auto m = MasterSystem::from_couplings(3, {});
  EXPECT_THROW(qja_run(m, 11, 0.1), std::domain_error);
  EXPECT_THROW(qja_run(m, 0, 0.1), std::domain_error);
  EXPECT_THROW(qja_run(m, 2, -0.1), std::domain_error);
}
