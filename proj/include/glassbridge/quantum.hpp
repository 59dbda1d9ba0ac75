#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "glassbridge/rng.hpp"

namespace glassbridge {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// All Hamiltonians built here are real symmetric.
using DenseHermitian = Matrix<double>;
using Unitary = Matrix<std::complex<double>>;
using PureState = Vector<std::complex<double>>;

// Computational basis: bit i of the index set means sigma^z_i = -1.
inline int spin_z(int basis, int i) { return ((basis >> i) & 1) ? -1 : 1; }

enum class Interpolation { linear, smoothstep };

struct Schedule {
  double T = 1.0;
  int steps = 256;
  Interpolation f = Interpolation::linear;
  std::vector<double> beta_ramp;

  // f(0) = 0, f(T) = 1, nondecreasing; T = 0 is the sudden quench.
  double f_at(double t) const;
  void validate() const;
};

struct Coupling {
  int i, j;
  double J;
};

// H(t) = f(t) H0 + (1 - f(t)) H1, H0 = -sum J s_i s_j - sum h_i s_i,
// H1 = -gamma0 sum sigma^x.
struct AnnealSpec {
  int N = 1;
  std::vector<Coupling> couplings;
  std::vector<double> fields;  // empty or size N
  double gamma0 = 1.0;
  Schedule schedule;

  void validate() const;
  int dim() const { return 1 << N; }
};

constexpr int kMaxAnnealSpins = 12;

Vector<double> classical_energies(int N, const std::vector<Coupling>& couplings,
                                  const std::vector<double>& fields = {});

struct Hamiltonians {
  Vector<double> h0_diag;
  DenseHermitian h1;

  DenseHermitian at(double f) const;
};

Hamiltonians build_hamiltonians(const AnnealSpec& spec);

// Midpoint-exponential product over schedule.steps equal steps.
Unitary evolve(const AnnealSpec& spec);
double unitarity_error(const Unitary& U);

// Doubles the step count from spec.schedule.steps until the final state
// started in the H(0) ground state changes by less than tol, or max_steps is
// reached. Returns the step count used.
int converged_steps(AnnealSpec spec, double tol, int max_steps = 1 << 14);

struct Spectrum {
  std::vector<double> levels;
  std::vector<int> degeneracy;
  std::vector<Matrix<double>> projector_basis;  // orthonormal columns per level
};

Spectrum grouped_spectrum(const DenseHermitian& H, double tol = 1e-9);

// Two-point measurement statistics, independent of beta. The initial
// measurement projects onto eigenspaces of H(0). The final one is taken in
// the computational basis, which diagonalises H(T) = H0 jointly with every
// sigma^z product.
struct TransitionStatistics {
  Spectrum initial;
  Vector<double> final_energies;  // per basis state
  Matrix<double> weight;          // (basis state, initial level): Tr(|s><s| U P_n U^dag)
};

TransitionStatistics transition_statistics(const AnnealSpec& spec);
TransitionStatistics transition_statistics(const AnnealSpec& spec, const Unitary& U);

struct WorkEntry {
  double W;
  double prob;
};

struct WorkDistribution {
  std::vector<WorkEntry> entries;  // aggregated over (initial level, final level), sorted by W
  double beta;

  double total() const;
  double mean() const;
  double exp_average(double beta_prime) const;  // <e^{-beta' W}>
};

WorkDistribution work_distribution(const TransitionStatistics& stats, double beta);
WorkDistribution work_distribution(const AnnealSpec& spec, double beta);

double partition_function(const Spectrum& spectrum, double beta);
double partition_function(const Vector<double>& energies, double beta);

struct JarzynskiResult {
  double lhs;
  double rhs;
  double abs_error() const { return std::abs(lhs - rhs); }
};

JarzynskiResult jarzynski_check(const TransitionStatistics& stats, const Vector<double>& h0_diag,
                                double beta);
JarzynskiResult jarzynski_check(const AnnealSpec& spec, double beta);

struct ObservableJarzynski {
  double weighted;  // <s_i s_j e^{-beta W}>
  double plain;     // <e^{-beta W}>
  double thermal;   // Tr(s_i s_j e^{-beta H(T)}) / Z_T
  double ratio() const { return weighted / plain; }
};

ObservableJarzynski jarzynski_observable(const TransitionStatistics& stats, double beta, int i,
                                         int j);

struct GapResult {
  double delta_min;
  double t_at_min;
  double T_adiabatic;  // max |<1|H0 - H1|0>| / (epsilon delta_min^2)
  bool degenerate;     // some grid point has gap below 1e-9
};

GapResult min_gap(const AnnealSpec& spec, int grid_points, double epsilon = 0.1);

// |<g(T)|U|g(0)>|^2 for unique ground states g of H(0) and H(T).
double ground_state_fidelity(const AnnealSpec& spec);

// J'_ij = xi_i xi_j J_ij, h'_i = xi_i h_i.
AnnealSpec quantum_gauge_transform(const AnnealSpec& spec, const std::vector<int>& xi);

// Random instance: all-pairs couplings from a coin-chosen subset with
// uniform magnitudes, random fields, gamma0, T and beta drawn from rng.
struct RandomInstance {
  AnnealSpec spec;
  double beta;
};
RandomInstance random_instance(int N, Rng& rng, bool sudden = false);

}  // namespace glassbridge
