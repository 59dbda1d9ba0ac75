#include "glassbridge/duality.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>

#include "glassbridge/conventions.hpp"
#include "glassbridge/roots.hpp"

namespace glassbridge {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kNishimoriEdge = 1e-8;

// Per internal configuration (boundary pinned up), the mask of anti-aligned
// bonds.
std::vector<std::uint32_t> anti_aligned_masks(const ClusterSpec& spec) {
  const int configs = 1 << spec.num_internal;
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(configs));
  for (int cfg = 0; cfg < configs; ++cfg) {
    std::uint32_t mask = 0;
    for (int b = 0; b < spec.num_bonds(); ++b) {
      auto spin = [&](const ClusterSpec::Slot& slot) {
        return slot.internal ? ((cfg >> slot.index) & 1) : 0;
      };
      if (spin(spec.bonds[b].a) != spin(spec.bonds[b].b)) mask |= 1u << b;
    }
    masks[static_cast<std::size_t>(cfg)] = mask;
  }
  return masks;
}

std::uint32_t negative_mask(const ClusterSpec& spec, const std::vector<int>& bond_signs) {
  if (static_cast<int>(bond_signs.size()) != spec.num_bonds())
    throw std::invalid_argument("bond sign count does not match cluster");
  std::uint32_t neg = 0;
  for (int b = 0; b < spec.num_bonds(); ++b) {
    if (bond_signs[b] == -1)
      neg |= 1u << b;
    else if (bond_signs[b] != 1)
      throw std::invalid_argument("bond signs must be +1 or -1");
  }
  return neg;
}

double log_x(const std::vector<std::uint32_t>& masks, int nb, double K, std::uint32_t neg) {
  // Terms are exp(K (nb - 2 d)); factor out the largest exponent.
  int dmin = nb;
  for (auto m : masks) dmin = std::min(dmin, std::popcount(m ^ neg));
  double sum = 0.0;
  for (auto m : masks) sum += std::exp(-2.0 * K * (std::popcount(m ^ neg) - dmin));
  return K * (nb - 2 * dmin) + std::log(sum);
}

double log_x_dual(const std::vector<std::uint32_t>& masks, int nb, double K, std::uint32_t neg) {
  const double t = std::tanh(K);
  double sum = 0.0;
  for (auto m : masks) {
    const double term = std::pow(t, std::popcount(m));
    sum += (std::popcount(m & neg) & 1) ? -term : term;
  }
  if (!(sum > 0.0)) throw std::runtime_error("dual cluster factor is not positive");
  return nb * std::log(kSqrt2 * std::cosh(K)) + std::log(sum);
}

}  // namespace

std::vector<double> binary_fourier(const std::vector<double>& input) {
  const std::size_t n = input.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("binary_fourier needs a power-of-two length");
  if (n > (std::size_t{1} << 12)) throw std::invalid_argument("binary_fourier supports k <= 12");
  std::vector<double> a = input;
  const double scale = 1.0 / kSqrt2;
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = a[j];
        const double y = a[j + h];
        a[j] = (x + y) * scale;
        a[j + h] = (x - y) * scale;
      }
    }
  }
  return a;
}

EdgeFactorPair edge_factors(double x0, double x1) {
  return {x0, x1, (x0 + x1) / kSqrt2, (x0 - x1) / kSqrt2};
}

EdgeFactorPair edge_factors(double K, int tau) {
  return edge_factors(std::exp(K * tau), std::exp(-K * tau));
}

double ising_dual_coupling(double K) {
  if (!(K > 0.0)) throw std::domain_error("dual coupling requires K > 0");
  if (K < 1.0) return -0.5 * std::log(std::tanh(K));
  // log tanh K = log1p(-e^{-2K}) - log1p(e^{-2K}); tanh rounds to 1 for large K.
  const double u = std::exp(-2.0 * K);
  return -0.5 * (std::log1p(-u) - std::log1p(u));
}

double lambda_coefficient(double K) { return (1.0 + std::exp(-2.0 * K)) / kSqrt2; }

CriticalPoint ising_critical_point() {
  auto r = bisect([](double K) { return K - ising_dual_coupling(K); }, 0.2, 1.0, 1e-14);
  return {r.root, 0.5 * std::log(1.0 + kSqrt2), r.evaluations};
}

ClusterSpec cluster_spec(int s) {
  using Slot = ClusterSpec::Slot;
  auto in = [](int i) { return Slot{true, i}; };
  auto out = [](int i) { return Slot{false, i}; };
  switch (s) {
    case 0:
      return {0, 2, 0, {{out(0), out(1)}}};
    case 1: {
      ClusterSpec c{1, 4, 1, {}};
      for (int i = 0; i < 4; ++i) c.bonds.push_back({in(0), out(i)});
      return c;
    }
    case 2: {
      // Internal block  0 1
      //                 2 3
      ClusterSpec c{2, 8, 4, {{in(0), in(1)}, {in(2), in(3)}, {in(0), in(2)}, {in(1), in(3)}}};
      for (int i = 0; i < 4; ++i) {
        c.bonds.push_back({in(i), out(2 * i)});
        c.bonds.push_back({in(i), out(2 * i + 1)});
      }
      return c;
    }
    default:
      throw std::invalid_argument("cluster level s must be 0, 1 or 2");
  }
}

double cluster_log_factor(const ClusterSpec& spec, double K, const std::vector<int>& bond_signs) {
  const auto neg = negative_mask(spec, bond_signs);
  return log_x(anti_aligned_masks(spec), spec.num_bonds(), K, neg);
}

double cluster_dual_log_factor(const ClusterSpec& spec, double K,
                               const std::vector<int>& bond_signs) {
  const auto neg = negative_mask(spec, bond_signs);
  return log_x_dual(anti_aligned_masks(spec), spec.num_bonds(), K, neg);
}

double generalized_residual(const ClusterSpec& spec, double p, double K) {
  if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("disorder density must lie in [0, 1)");
  const auto masks = anti_aligned_masks(spec);
  const int nb = spec.num_bonds();
  const std::uint32_t configs = 1u << nb;
  double acc = 0.0;
  for (std::uint32_t neg = 0; neg < configs; ++neg) {
    const int n_neg = std::popcount(neg);
    const double w = std::pow(p, n_neg) * std::pow(1.0 - p, nb - n_neg);
    if (w == 0.0) continue;
    acc += w * (log_x(masks, nb, K, neg) - log_x_dual(masks, nb, K, neg));
  }
  return acc;
}

double multicritical_residual(int s, double p) {
  if (!(p > 0.0 && p < 0.5)) throw std::domain_error("multicritical residual needs p in (0, 1/2)");
  return generalized_residual(cluster_spec(s), p, conv::coupling_from_negative_density(p));
}

MulticriticalResult multicritical_point(int s) {
  const ClusterSpec spec = cluster_spec(s);
  auto r = bisect(
      [&](double p) {
        return generalized_residual(spec, p, conv::coupling_from_negative_density(p));
      },
      0.05, 0.20, 1e-10);
  return {s, r.root, r.evaluations};
}

namespace {
double cached_threshold(int s) {
  static std::once_flag flags[3];
  static std::array<double, 3> values{};
  cluster_spec(s);  // validates s
  std::call_once(flags[s], [s] { values[s] = multicritical_point(s).p_c; });
  return values[s];
}
}  // namespace

double phase_boundary(int s, double p) {
  const ClusterSpec spec = cluster_spec(s);
  if (!(p >= 0.0)) throw std::domain_error("disorder density must be nonnegative");
  const double p_c = cached_threshold(s);
  if (p > p_c + kNishimoriEdge) throw std::domain_error("no ferromagnetic boundary beyond p_c");
  if (p == 0.0) {
    return bisect([&](double K) { return generalized_residual(spec, 0.0, K); }, 0.2, 1.0, 1e-12)
        .root;
  }
  const double K_p = conv::coupling_from_negative_density(p);
  if (p >= p_c - kNishimoriEdge) return K_p;
  return bisect([&](double K) { return generalized_residual(spec, p, K); }, 0.2, K_p, 1e-12).root;
}

}  // namespace glassbridge
