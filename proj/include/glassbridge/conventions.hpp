#pragma once

#include <cmath>
#include <stdexcept>

// Disorder-law conversions. Throughout the library `p` is the density of
// negative bonds (equivalently the per-qubit error rate), and the matched
// coupling satisfies exp(-2 K_p) = p / (1 - p). The ferromagnetic-density
// parametrisation q = 1 - p, with exp(-2 K_p) = (1 - q) / q, exists only at
// these call sites.
namespace glassbridge::conv {

inline double coupling_from_negative_density(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("negative-bond density must lie in (0, 1)");
  return 0.5 * std::log((1.0 - p) / p);
}

inline double negative_density_from_coupling(double K) {
  return 1.0 / (1.0 + std::exp(2.0 * K));
}

inline double ferro_density_from_coupling(double K) {
  return 1.0 - negative_density_from_coupling(K);
}

inline double coupling_from_ferro_density(double q) {
  return coupling_from_negative_density(1.0 - q);
}

}  // namespace glassbridge::conv
