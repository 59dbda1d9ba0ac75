#include "glassbridge/master.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace glassbridge {

namespace {

using cd = std::complex<double>;
constexpr double kSymmetryLimit = 1e-10;

double acceptance(UpdateRule rule, double beta, double dE) {
  return rule == UpdateRule::metropolis ? std::min(1.0, std::exp(-beta * dE))
                                        : 1.0 / (1.0 + std::exp(beta * dE));
}

}  // namespace

MasterSystem MasterSystem::from_couplings(int N, const std::vector<Coupling>& couplings,
                                          const std::vector<double>& fields, UpdateRule rule) {
  return {N, classical_energies(N, couplings, fields), rule};
}

void MasterSystem::validate(int max_spins) const {
  if (N < 1 || N > max_spins) throw std::domain_error("master system spin count out of range");
  if (h0_diag.size() != dim()) throw std::domain_error("energy table must have 2^N entries");
}

Matrix<double> transition_matrix(const MasterSystem& m, double beta) {
  m.validate(kMaxMasterSpins);
  const int d = m.dim();
  Matrix<double> M = Matrix<double>::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    double stay = 1.0;
    for (int i = 0; i < m.N; ++i) {
      const int t = s ^ (1 << i);
      const double a = acceptance(m.rule, beta, m.h0_diag[t] - m.h0_diag[s]) / m.N;
      M(t, s) = a;
      stay -= a;
    }
    M(s, s) = stay;
  }
  return M;
}

Vector<double> equilibrium_amplitudes(const Vector<double>& energies, double beta) {
  const double emin = energies.minCoeff();
  Vector<double> a = (-0.5 * beta * (energies.array() - emin)).exp();
  return a / a.norm();
}

DenseHermitian build_hq(const MasterSystem& m, double beta) {
  const Matrix<double> M = transition_matrix(m, beta);
  const Vector<double> half = (0.5 * beta * m.h0_diag.array()).matrix();
  const int d = m.dim();
  DenseHermitian H(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) H(r, c) = (r == c ? 1.0 : 0.0) - std::exp(half[r] - half[c]) * M(r, c);
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > kSymmetryLimit)
    throw std::runtime_error("H_q is not symmetric; transition rule violates detailed balance");
  return 0.5 * (H + H.transpose());
}

DenseHermitian build_hq_spin_glass(int N, const std::vector<Coupling>& couplings, double beta) {
  if (N < 1 || N > kMaxMasterSpins) throw std::domain_error("spin count out of range");
  const int d = 1 << N;
  Matrix<double> eps(d, N);
  for (int s = 0; s < d; ++s)
    for (int j = 0; j < N; ++j) {
      double h = 0.0;
      for (const auto& c : couplings) {
        if (c.i == j) h += c.J * spin_z(s, c.j);
        if (c.j == j) h += c.J * spin_z(s, c.i);
      }
      eps(s, j) = spin_z(s, j) * h;
    }
  const double chi = std::exp(beta * eps.cwiseAbs().maxCoeff());
  DenseHermitian H = DenseHermitian::Zero(d, d);
  for (int s = 0; s < d; ++s)
    for (int j = 0; j < N; ++j) {
      H(s ^ (1 << j), s) -= chi;
      H(s, s) += chi * std::exp(-beta * eps(s, j));
    }
  return H;
}

ClassicalJarzynskiResult classical_jarzynski(const MasterSystem& m, const std::vector<double>& betas,
                                             double dt) {
  m.validate(kMaxMasterSpins);
  if (betas.empty()) throw std::invalid_argument("beta ramp must not be empty");
  if (!(dt >= 0.0)) throw std::domain_error("time step must be nonnegative");
  const Vector<double>& E = m.h0_diag;
  const double emin = E.minCoeff();
  const Vector<double> shifted = (E.array() - emin).matrix();

  Vector<double> w = (-betas.front() * shifted.array()).exp();
  w /= w.sum();
  Vector<double> plain = w;
  Eigen::SelfAdjointEigenSolver<DenseHermitian> es;
  for (std::size_t k = 0; k + 1 < betas.size(); ++k) {
    // exp(dt (M - I)) = D^{-1} exp(-dt H_q) D, D = diag(e^{beta E/2}).
    const double b = betas[k];
    es.compute(build_hq(m, b));
    const Vector<double> D = (0.5 * b * shifted.array()).exp();
    const Matrix<double> prop = D.cwiseInverse().asDiagonal() * es.eigenvectors() *
                                (-dt * es.eigenvalues().array()).exp().matrix().asDiagonal() *
                                es.eigenvectors().transpose() * D.asDiagonal();
    w = prop * w;
    plain = prop * plain;
    w = w.cwiseProduct((-(betas[k + 1] - b) * shifted.array()).exp().matrix());
  }
  const double z0 = (-betas.front() * shifted.array()).exp().sum();
  const double zn = (-betas.back() * shifted.array()).exp().sum();
  // Report ratios of the unshifted partition functions.
  const double scale = std::exp(-(betas.back() - betas.front()) * emin);
  return {w.sum() * scale, zn / z0 * scale, plain};
}

QjaResult qja_run(const MasterSystem& m, int n_ancilla, double delta_beta, double beta0, double dt) {
  m.validate(3);
  if (n_ancilla < 1) throw std::domain_error("QJA needs at least one ancilla");
  if (m.N + n_ancilla > kMaxQjaDimensionBits) throw std::domain_error("QJA dimension exceeds 2^13");
  if (!(delta_beta >= 0.0)) throw std::domain_error("delta beta must be nonnegative");

  const int ds = m.dim();
  const long na = 1L << n_ancilla;
  QjaResult r;
  r.energy_shift = 1.0 - m.h0_diag.minCoeff();
  MasterSystem pos = m;
  pos.h0_diag = (m.h0_diag.array() + r.energy_shift).matrix();
  const Vector<double>& E = pos.h0_diag;

  // Column a of `psi` is the system state with ancilla pattern a.
  Matrix<cd> psi = Matrix<cd>::Zero(ds, na);
  psi.col(0) = equilibrium_amplitudes(E, beta0).cast<cd>();
  const Vector<double> sy = (-0.5 * delta_beta * E.array()).exp();
  const Vector<double> sn = (1.0 - sy.array().square()).max(0.0).sqrt();

  r.min_ground_overlap = 1.0;
  Eigen::SelfAdjointEigenSolver<DenseHermitian> es;
  for (int k = 0; k < n_ancilla; ++k) {
    const long bit = 1L << k;
    for (long a = 0; a < na; ++a) {
      if (a & bit) continue;
      const Vector<cd> a0 = psi.col(a);
      const Vector<cd> a1 = psi.col(a | bit);
      psi.col(a) = sy.cast<cd>().cwiseProduct(a0) - sn.cast<cd>().cwiseProduct(a1);
      psi.col(a | bit) = sn.cast<cd>().cwiseProduct(a0) + sy.cast<cd>().cwiseProduct(a1);
    }
    const double beta_next = beta0 + (k + 1) * delta_beta;
    es.compute(build_hq(pos, beta_next));
    const Matrix<cd> V = es.eigenvectors().cast<cd>();
    const Vector<cd> phase = (es.eigenvalues().cast<cd>() * cd(0.0, -dt)).array().exp();
    psi = (V * phase.asDiagonal() * V.adjoint() * psi).eval();

    const Vector<cd> branch = psi.col(0);
    const double nrm = branch.norm();
    if (nrm > 0.0) {
      const Vector<cd> eq = equilibrium_amplitudes(E, beta_next).cast<cd>();
      r.min_ground_overlap = std::min(r.min_ground_overlap, std::norm(eq.dot(branch) / nrm));
    }
  }

  r.final_state = Eigen::Map<const PureState>(psi.data(), psi.size());
  r.p0 = psi.col(0).cwiseAbs2();
  r.success_probability = r.p0.sum();
  const double beta_n = beta0 + n_ancilla * delta_beta;
  const Vector<double> gibbs = (-beta_n * (E.array() - E.minCoeff())).exp();
  const double c = r.success_probability / gibbs.sum();
  r.proportionality_error = (r.p0.array() / (c * gibbs.array()) - 1.0).abs().maxCoeff();
  return r;
}

}  // namespace glassbridge
