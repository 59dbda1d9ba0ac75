#pragma once

#include <vector>

namespace glassbridge {

// k-variable Walsh-Hadamard transform with 1/sqrt(2) per variable:
// out[j] = 2^{-k/2} sum_phi in[phi] (-1)^{popcount(j & phi)}. Self-inverse.
// Input length must be 2^k with k <= 12.
std::vector<double> binary_fourier(const std::vector<double>& input);

struct EdgeFactorPair {
  double x0, x1;
  double dual_x0, dual_x1;
};

EdgeFactorPair edge_factors(double x0, double x1);
// Bond factors (e^{K tau}, e^{-K tau}) and their transforms.
EdgeFactorPair edge_factors(double K, int tau);

// exp(-2 K*) = tanh K.
double ising_dual_coupling(double K);
// (1 + e^{-2K}) / sqrt(2); unity at the self-dual point.
double lambda_coefficient(double K);

struct CriticalPoint {
  double K_c;
  double analytic;
  int evaluations;
};
CriticalPoint ising_critical_point();

// Finite cluster of the square lattice. Boundary spins are pinned up; internal
// spins are summed.
struct ClusterSpec {
  struct Slot {
    bool internal;
    int index;
  };
  struct Bond {
    Slot a, b;
  };

  int s;
  int num_boundary;
  int num_internal;
  std::vector<Bond> bonds;

  int num_bonds() const { return static_cast<int>(bonds.size()); }
};

// s = 0: one bond. s = 1: star of four bonds around one internal spin.
// s = 2: a 2x2 block of internal spins (4 bonds) with two outward legs each
// (8 bonds to 8 boundary spins).
ClusterSpec cluster_spec(int s);

// log sum_internal exp(K sum_b tau_b S S').
double cluster_log_factor(const ClusterSpec& spec, double K, const std::vector<int>& bond_signs);

// Same cluster with every bond replaced by its dual factor: sqrt2 cosh K for
// aligned ends, sqrt2 tau sinh K for anti-aligned ends. Internal dual spins are
// summed, boundary dual spins pinned up. The sum is positive for all K >= 0.
double cluster_dual_log_factor(const ClusterSpec& spec, double K, const std::vector<int>& bond_signs);

// E_tau[log X] - E_tau[log X*] at thermal coupling K, with bonds negative
// independently with probability p (p = 0 allowed).
double generalized_residual(const ClusterSpec& spec, double p, double K);

// generalized_residual on the Nishimori line K = 1/2 ln((1-p)/p); positive on
// the ordered side. p in (0, 1/2).
double multicritical_residual(int s, double p);

struct MulticriticalResult {
  int s;
  double p_c;
  int residual_calls;
};
MulticriticalResult multicritical_point(int s);

// Lower root in K of generalized_residual at fixed disorder p in [0, p_c(s)].
double phase_boundary(int s, double p);

}  // namespace glassbridge
