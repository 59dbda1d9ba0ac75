#pragma once

#include <vector>

#include "glassbridge/quantum.hpp"
#include "glassbridge/spinglass.hpp"

namespace glassbridge {

// Classical single-flip dynamics on 2^N states with energies h0_diag.
struct MasterSystem {
  int N = 1;
  Vector<double> h0_diag;
  UpdateRule rule = UpdateRule::metropolis;

  static MasterSystem from_couplings(int N, const std::vector<Coupling>& couplings,
                                     const std::vector<double>& fields = {},
                                     UpdateRule rule = UpdateRule::metropolis);
  void validate(int max_spins) const;
  int dim() const { return 1 << N; }
};

constexpr int kMaxMasterSpins = 8;

// Column-stochastic M(s'|s): a uniformly chosen spin is flipped with the rule's
// acceptance probability; the remainder stays on the diagonal.
Matrix<double> transition_matrix(const MasterSystem& master, double beta);

// I - e^{beta E/2} M e^{-beta E/2}; symmetric by detailed balance, zero-energy
// ground state proportional to e^{-beta E/2}.
DenseHermitian build_hq(const MasterSystem& master, double beta);

// chi sum_j (-sigma^x_j + e^{-beta eps_j}), eps_j = s_j sum_k J_jk s_k,
// chi = e^{beta max|eps|}. Same ground state as build_hq for H0 = -sum J s s.
DenseHermitian build_hq_spin_glass(int N, const std::vector<Coupling>& couplings, double beta);

// Normalised e^{-beta E/2}.
Vector<double> equilibrium_amplitudes(const Vector<double>& energies, double beta);

struct ClassicalJarzynskiResult {
  double lhs;   // total weight after the reweighted propagation
  double rhs;   // Z(beta_n) / Z(beta_0)
  Vector<double> final_distribution;  // unweighted propagation, for lag diagnostics
  double abs_error() const { return std::abs(lhs - rhs); }
};

// Weights start at the Gibbs state of betas[0]. Step k propagates over time
// dt with the rate matrix M(betas[k]) - I, then multiplies by
// e^{-(betas[k+1] - betas[k]) E}.
ClassicalJarzynskiResult classical_jarzynski(const MasterSystem& master,
                                             const std::vector<double>& betas, double dt);

struct QjaResult {
  PureState final_state;        // index = sigma + (ancilla bits << N)
  Vector<double> p0;            // probability of (sigma, all ancillas 0)
  double success_probability;   // sum of p0
  double proportionality_error; // max_s |p0(s) / (c e^{-beta_n E(s)}) - 1|
  double min_ground_overlap;    // over steps, of the all-zero branch with Psi_eq
  double energy_shift;          // added to E so that all energies are >= 1
};

constexpr int kMaxQjaDimensionBits = 13;

// beta_k = beta_0 + k delta_beta, k = 0..n. Ancilla k is rotated by
// R(y) = [[sqrt y, -sqrt(1-y)], [sqrt(1-y), sqrt y]] per system state with
// y = e^{-delta_beta E}, then the system evolves for dt under H_q(beta_{k+1}).
QjaResult qja_run(const MasterSystem& master, int n_ancilla, double delta_beta,
                  double beta0 = 0.0, double dt = 1.0);

}  // namespace glassbridge
