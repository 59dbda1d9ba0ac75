#pragma once

#include <cstdint>
#include <vector>

#include "glassbridge/lattice.hpp"
#include "glassbridge/rng.hpp"

namespace glassbridge {

// Bond signs tau_e = +-1 on the torus edges; p is the negative-bond density.
struct DisorderSample {
  std::vector<int> tau;
  double p = 0.0;
  std::uint64_t seed = 0;

  std::uint32_t negative_mask() const;  // requires <= 32 edges
};

using SpinState = std::vector<int>;

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int n_samples = 0;
  int n_sweeps = 0;
};

McEstimate summarize(const std::vector<double>& values, int n_sweeps = 0);

DisorderSample sample_disorder(const TorusLattice& lattice, double p, std::uint64_t seed);
DisorderSample uniform_disorder(const TorusLattice& lattice, std::uint32_t negative_mask);

// -sum_e tau_e S_i S_j.
double energy(const TorusLattice& lattice, const DisorderSample& sample, const SpinState& spins);

struct GaugeImage {
  DisorderSample sample;
  SpinState spins;
};
GaugeImage gauge_transform(const TorusLattice& lattice, const DisorderSample& sample,
                           const SpinState& spins, const std::vector<int>& xi);

enum class UpdateRule { metropolis, heat_bath };

// Probability of flipping spin i when x = S_i h_i, h_i = sum tau S_j, under
// the weight exp(K sum tau S S).
double flip_probability(UpdateRule rule, double K, int x);

// Site-major neighbour table for sweeps.
class CouplingGraph {
 public:
  CouplingGraph(const TorusLattice& lattice, const DisorderSample& sample);
  int num_sites() const { return n_; }
  int local_field(const SpinState& s, int i) const;

 private:
  int n_;
  std::vector<int> nbr_;
  std::vector<int> tau_;
};

// One sweep is N single-spin updates. Heat-bath visits sites in index order;
// Metropolis picks N sites uniformly at random (see spinglass.cpp).
void metropolis_sweep(const CouplingGraph& graph, SpinState& spins, double K, Rng& rng);
void heatbath_sweep(const CouplingGraph& graph, SpinState& spins, double K, Rng& rng);
void sweep(UpdateRule rule, const CouplingGraph& graph, SpinState& spins, double K, Rng& rng);

struct PartitionResult {
  double logZ;
  std::vector<double> magnetization;  // <S_i>
  std::vector<double> correlation;    // <S_i S_j>, row-major N x N
  double mean_bond_sum;               // <sum tau S S>
};

// Full enumeration; L <= 4.
PartitionResult enumerate_partition(const TorusLattice& lattice, const DisorderSample& sample,
                                    double K);

// Histogram enumerator for fixed geometry (L <= 4). For a bond-sign mask the
// histogram counts spin configurations by the number of unsatisfied bonds,
// so log Z(K) = log sum_d h[d] exp(K (N_B - 2 d)).
class BondEnumerator {
 public:
  explicit BondEnumerator(const TorusLattice& lattice);

  int num_bonds() const { return nb_; }
  std::vector<double> histogram(std::uint32_t negative_mask) const;
  double log_z(std::uint32_t negative_mask, double K) const;

  struct PairStats {
    double logZ;
    double correlation;  // <S_a S_b>
    double mean_bond_sum;
  };
  PairStats pair_stats(std::uint32_t negative_mask, double K, int a, int b) const;

 private:
  int n_;
  int nb_;
  std::vector<std::uint32_t> unsat_;  // unsatisfied-bond mask for tau = +1, spin 0 up
};

double log_sum_exp_histogram(const std::vector<double>& hist, int nb, double K);

// Energy per bond, disorder- and thermal-averaged, at negative density p and
// thermal coupling K. The first half of the sweeps is discarded.
McEstimate mc_energy_per_bond(int L, double p, double K, int n_disorder, int n_sweeps,
                              std::uint64_t seed, UpdateRule rule = UpdateRule::metropolis,
                              unsigned jobs = 0);

// Nishimori-line estimators: disorder with p = 1 / (1 + e^{2K}).
McEstimate nl_internal_energy(int L, double K, int n_disorder, int n_sweeps, std::uint64_t seed,
                              UpdateRule rule = UpdateRule::metropolis, unsigned jobs = 0);

// Exhaustive disorder average of <E>/N_B at (p, K); L <= 3.
double exact_energy_per_bond(int L, double p, double K);

struct QmEstimate {
  McEstimate m;     // [<M^2>] / N^2
  McEstimate q;     // [<Q^2>] / N^2, Q the two-replica overlap
  McEstimate diff;  // per-sample m - q
};

// On the torus <S_i> vanishes identically, so the identity is tested in its
// two-point form [<S_i S_j>] = [<S_i S_j>^2], summed over all pairs.
QmEstimate nl_q_equals_m(int L, double K, int n_disorder, int n_sweeps, std::uint64_t seed,
                         UpdateRule rule = UpdateRule::metropolis, unsigned jobs = 0);

struct QmExact {
  double m;
  double q;
};
QmExact exact_q_equals_m(int L, double K);  // L = 2

struct ScanPoint {
  double K;
  McEstimate sign_correlation;  // [sgn <S_0 S_r>]
  McEstimate correlation;       // [<S_0 S_r>]
};

// Thermal-K scan at fixed disorder law K_p with r the site farthest from 0.
// The gauge argument bounds [sgn <S_0 S_r>_K] by its value at K = K_p.
std::vector<ScanPoint> magnetization_scan(int L, double K_p, const std::vector<double>& K_list,
                                          int n_disorder, int n_sweeps, std::uint64_t seed,
                                          unsigned jobs = 0);

// Exhaustive version (L <= 3); std_error is zero.
std::vector<ScanPoint> magnetization_scan_exact(int L, double K_p,
                                                const std::vector<double>& K_list);

int farthest_site(const TorusLattice& lattice);

}  // namespace glassbridge
