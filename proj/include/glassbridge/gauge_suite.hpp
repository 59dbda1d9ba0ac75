#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glassbridge/lattice.hpp"
#include "glassbridge/quantum.hpp"

namespace glassbridge {

struct IdentityCheck {
  std::string identity;
  double lhs;
  double rhs;
  double abs_error() const { return std::abs(lhs - rhs); }
};

struct GaugeSuiteParams {
  double beta = 0.5;
  double beta2 = 0.3;  // second temperature for the two-temperature relation
  double gamma0 = 1.0;
  double J = 1.0;
  Schedule schedule;
  int pair_i = 0;
  int pair_j = 1;
};

// Annealing problem on the torus bonds with tau = -1 on negative_mask.
AnnealSpec torus_anneal_spec(const TorusLattice& lattice, std::uint32_t negative_mask,
                             const GaugeSuiteParams& params);

struct GaugeSuiteReport {
  std::vector<IdentityCheck> checks;
  int configurations = 0;
  // Bond configurations whose gauge orbit has <s_i s_j> identically zero;
  // they are left out of the inverse-correlation average, whose right side
  // is scaled by the retained fraction.
  int correlation_excluded = 0;
};

// Exhaustive over all 2^{N_B} bond signs of the 2x2 torus. Checks, with
// N sites, N_B bonds and disorder averages [.]_b at bond temperature b
// (b = 0 is the symmetric distribution):
//   [<e^{-bW}>]_0              = cosh^{N_B}(bJ) / cosh^N(b gamma0)
//   [1/<e^{-bW}>]_b            = cosh^N(b gamma0) / cosh^{N_B}(bJ)
//   product of the two left sides = 1
//   [<e^{-b1 W}>]_{b2} = [<e^{-b2 W}>]_{b1} (cosh b1J / cosh b2J)^{N_B}
//                                       (cosh b2 gamma0 / cosh b1 gamma0)^N
//   [1/<s_i s_j e^{-bW}>]_b    = cosh^N(b gamma0) / cosh^{N_B}(bJ)
//   per-configuration Jarzynski equality (worst case)
GaugeSuiteReport gauge_identity_suite(const TorusLattice& lattice, const GaugeSuiteParams& params,
                                      unsigned jobs = 0);

struct KlReport {
  double work_avg;     // [<W>]_0
  double bound_loose;  // -(N/b) log(cosh^{N_B/N}(bJ) / cosh(b gamma0))
  double bound_tight;  // bound_loose - D/b
  double D;            // sum_tau P0 log(P_b / P0) <= 0
  double marginal_sum; // sum_tau P_b(tau)
};

KlReport kl_bound_check(const TorusLattice& lattice, const GaugeSuiteParams& params,
                        unsigned jobs = 0);

}  // namespace glassbridge
