#include "glassbridge/spinglass.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "glassbridge/conventions.hpp"
#include "glassbridge/parallel.hpp"

namespace glassbridge {

namespace {

constexpr int kMaxEnumerationL = 4;

void check_shapes(const TorusLattice& lattice, const DisorderSample& sample) {
  if (static_cast<int>(sample.tau.size()) != lattice.num_edges())
    throw std::invalid_argument("disorder sample does not match lattice");
}

void check_spins(const TorusLattice& lattice, const SpinState& spins) {
  if (static_cast<int>(spins.size()) != lattice.num_sites())
    throw std::invalid_argument("spin state does not match lattice");
}

void check_enumerable(const TorusLattice& lattice, int max_L = kMaxEnumerationL) {
  if (lattice.size() > max_L) throw std::invalid_argument("lattice too large for enumeration");
}

// Spin bit 1 means S = -1.
int spin_of(std::uint32_t cfg, int i) { return ((cfg >> i) & 1) ? -1 : 1; }

}  // namespace

std::uint32_t DisorderSample::negative_mask() const {
  if (tau.size() > 32) throw std::invalid_argument("negative mask needs at most 32 edges");
  std::uint32_t m = 0;
  for (std::size_t e = 0; e < tau.size(); ++e)
    if (tau[e] < 0) m |= 1u << e;
  return m;
}

McEstimate summarize(const std::vector<double>& values, int n_sweeps) {
  McEstimate est;
  est.n_samples = static_cast<int>(values.size());
  est.n_sweeps = n_sweeps;
  if (values.empty()) return est;
  const double n = static_cast<double>(values.size());
  est.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    est.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return est;
}

DisorderSample sample_disorder(const TorusLattice& lattice, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p must lie in [0, 1]");
  Rng rng(seed);
  DisorderSample s;
  s.p = p;
  s.seed = seed;
  s.tau.resize(static_cast<std::size_t>(lattice.num_edges()));
  for (auto& t : s.tau) t = uniform01(rng) < p ? -1 : 1;
  return s;
}

DisorderSample uniform_disorder(const TorusLattice& lattice, std::uint32_t negative_mask) {
  DisorderSample s;
  s.tau.resize(static_cast<std::size_t>(lattice.num_edges()));
  for (int e = 0; e < lattice.num_edges(); ++e) s.tau[e] = ((negative_mask >> e) & 1) ? -1 : 1;
  return s;
}

double energy(const TorusLattice& lattice, const DisorderSample& sample, const SpinState& spins) {
  check_shapes(lattice, sample);
  check_spins(lattice, spins);
  double e = 0.0;
  for (int b = 0; b < lattice.num_edges(); ++b) {
    const auto& ends = lattice.endpoints(b);
    e -= sample.tau[b] * spins[ends[0]] * spins[ends[1]];
  }
  return e;
}

GaugeImage gauge_transform(const TorusLattice& lattice, const DisorderSample& sample,
                           const SpinState& spins, const std::vector<int>& xi) {
  check_shapes(lattice, sample);
  check_spins(lattice, spins);
  if (xi.size() != spins.size()) throw std::invalid_argument("gauge field does not match lattice");
  GaugeImage out{sample, spins};
  for (int b = 0; b < lattice.num_edges(); ++b) {
    const auto& ends = lattice.endpoints(b);
    out.sample.tau[b] *= xi[ends[0]] * xi[ends[1]];
  }
  for (std::size_t i = 0; i < spins.size(); ++i) out.spins[i] *= xi[i];
  return out;
}

double flip_probability(UpdateRule rule, double K, int x) {
  switch (rule) {
    case UpdateRule::metropolis:
      return std::min(1.0, std::exp(-2.0 * K * x));
    case UpdateRule::heat_bath:
      return 1.0 / (1.0 + std::exp(2.0 * K * x));
  }
  return 0.0;
}

CouplingGraph::CouplingGraph(const TorusLattice& lattice, const DisorderSample& sample)
    : n_(lattice.num_sites()), nbr_(4 * static_cast<std::size_t>(n_)), tau_(nbr_.size()) {
  check_shapes(lattice, sample);
  for (int s = 0; s < n_; ++s) {
    const auto& st = lattice.star(s);
    for (int k = 0; k < 4; ++k) {
      const auto& ends = lattice.endpoints(st[k]);
      nbr_[4 * s + k] = ends[0] == s ? ends[1] : ends[0];
      tau_[4 * s + k] = sample.tau[st[k]];
    }
  }
}

int CouplingGraph::local_field(const SpinState& s, int i) const {
  const int* nb = &nbr_[4 * static_cast<std::size_t>(i)];
  const int* t = &tau_[4 * static_cast<std::size_t>(i)];
  return t[0] * s[nb[0]] + t[1] * s[nb[1]] + t[2] * s[nb[2]] + t[3] * s[nb[3]];
}

namespace {
// Flip probabilities indexed by (x + 4) / 2 for x in {-4, -2, 0, 2, 4}.
// Metropolis flips with certainty at x <= 0, which makes an in-order pass
// reducible on small tori; its sweep therefore visits N uniformly random
// sites. Heat-bath probabilities lie strictly inside (0, 1) and keep the
// in-order pass.
struct SweepKernel {
  std::array<double, 5> table{};
  bool random_sites = false;
};

SweepKernel flip_table(UpdateRule rule, double K) {
  SweepKernel k;
  for (int j = 0; j < 5; ++j) k.table[j] = flip_probability(rule, K, 2 * j - 4);
  k.random_sites = rule == UpdateRule::metropolis;
  return k;
}

void table_sweep(const SweepKernel& kernel, const CouplingGraph& graph, SpinState& spins,
                 Rng& rng) {
  const int n = graph.num_sites();
  for (int step = 0; step < n; ++step) {
    const int i = kernel.random_sites ? static_cast<int>(uniform01(rng) * n) : step;
    const int x = spins[i] * graph.local_field(spins, i);
    const double a = kernel.table[(x + 4) / 2];
    if (a >= 1.0 || uniform01(rng) < a) spins[i] = -spins[i];
  }
}
}  // namespace

void metropolis_sweep(const CouplingGraph& graph, SpinState& spins, double K, Rng& rng) {
  sweep(UpdateRule::metropolis, graph, spins, K, rng);
}

void heatbath_sweep(const CouplingGraph& graph, SpinState& spins, double K, Rng& rng) {
  sweep(UpdateRule::heat_bath, graph, spins, K, rng);
}

void sweep(UpdateRule rule, const CouplingGraph& graph, SpinState& spins, double K, Rng& rng) {
  if (!(K >= 0.0)) throw std::domain_error("sweeps require K >= 0");
  if (static_cast<int>(spins.size()) != graph.num_sites())
    throw std::invalid_argument("spin state does not match lattice");
  table_sweep(flip_table(rule, K), graph, spins, rng);
}

PartitionResult enumerate_partition(const TorusLattice& lattice, const DisorderSample& sample,
                                    double K) {
  check_shapes(lattice, sample);
  check_enumerable(lattice);
  const int n = lattice.num_sites();
  const int nb = lattice.num_edges();
  const std::uint32_t states = 1u << n;

  std::vector<double> bond_sum(states);
  double emax = -1e300;
  for (std::uint32_t cfg = 0; cfg < states; ++cfg) {
    int sum = 0;
    for (int b = 0; b < nb; ++b) {
      const auto& ends = lattice.endpoints(b);
      sum += sample.tau[b] * spin_of(cfg, ends[0]) * spin_of(cfg, ends[1]);
    }
    bond_sum[cfg] = sum;
    emax = std::max(emax, K * sum);
  }

  PartitionResult r;
  r.magnetization.assign(n, 0.0);
  r.correlation.assign(static_cast<std::size_t>(n) * n, 0.0);
  double z = 0.0;
  double bs = 0.0;
  std::vector<int> s(n);
  for (std::uint32_t cfg = 0; cfg < states; ++cfg) {
    const double w = std::exp(K * bond_sum[cfg] - emax);
    z += w;
    bs += w * bond_sum[cfg];
    for (int i = 0; i < n; ++i) s[i] = spin_of(cfg, i);
    for (int i = 0; i < n; ++i) {
      r.magnetization[i] += w * s[i];
      for (int j = 0; j < n; ++j) r.correlation[static_cast<std::size_t>(i) * n + j] += w * s[i] * s[j];
    }
  }
  for (auto& m : r.magnetization) m /= z;
  for (auto& c : r.correlation) c /= z;
  r.logZ = emax + std::log(z);
  r.mean_bond_sum = bs / z;
  return r;
}

BondEnumerator::BondEnumerator(const TorusLattice& lattice)
    : n_(lattice.num_sites()), nb_(lattice.num_edges()) {
  check_enumerable(lattice);
  // Global flip symmetry: enumerate with spin 0 up and double the counts.
  const std::uint32_t half = 1u << (n_ - 1);
  unsat_.resize(half);
  for (std::uint32_t c = 0; c < half; ++c) {
    const std::uint32_t cfg = c << 1;
    std::uint32_t m = 0;
    for (int b = 0; b < nb_; ++b) {
      const auto& ends = lattice.endpoints(b);
      if (spin_of(cfg, ends[0]) != spin_of(cfg, ends[1])) m |= 1u << b;
    }
    unsat_[c] = m;
  }
}

std::vector<double> BondEnumerator::histogram(std::uint32_t negative_mask) const {
  std::vector<double> h(static_cast<std::size_t>(nb_) + 1, 0.0);
  std::vector<std::uint32_t> counts(h.size(), 0);
  for (auto m : unsat_) ++counts[std::popcount(m ^ negative_mask)];
  for (std::size_t d = 0; d < h.size(); ++d) h[d] = 2.0 * counts[d];
  return h;
}

double log_sum_exp_histogram(const std::vector<double>& hist, int nb, double K) {
  double top = -1e300;
  for (std::size_t d = 0; d < hist.size(); ++d)
    if (hist[d] > 0) top = std::max(top, K * (nb - 2.0 * d));
  double s = 0.0;
  for (std::size_t d = 0; d < hist.size(); ++d)
    if (hist[d] > 0) s += hist[d] * std::exp(K * (nb - 2.0 * d) - top);
  return top + std::log(s);
}

double BondEnumerator::log_z(std::uint32_t negative_mask, double K) const {
  return log_sum_exp_histogram(histogram(negative_mask), nb_, K);
}

BondEnumerator::PairStats BondEnumerator::pair_stats(std::uint32_t negative_mask, double K, int a,
                                                     int b) const {
  // Configurations are indexed with spin 0 up; S_a S_b is flip invariant.
  std::vector<std::uint32_t> same(static_cast<std::size_t>(nb_) + 1, 0);
  std::vector<std::uint32_t> diff(same.size(), 0);
  for (std::uint32_t c = 0; c < unsat_.size(); ++c) {
    const std::uint32_t cfg = c << 1;
    const int d = std::popcount(unsat_[c] ^ negative_mask);
    if (spin_of(cfg, a) == spin_of(cfg, b))
      ++same[d];
    else
      ++diff[d];
  }
  double top = -1e300;
  for (std::size_t d = 0; d < same.size(); ++d)
    if (same[d] + diff[d] > 0) top = std::max(top, K * (nb_ - 2.0 * d));
  double z = 0.0, corr = 0.0, bs = 0.0;
  for (std::size_t d = 0; d < same.size(); ++d) {
    const double w = std::exp(K * (nb_ - 2.0 * d) - top);
    z += w * (same[d] + diff[d]);
    corr += w * (static_cast<double>(same[d]) - static_cast<double>(diff[d]));
    bs += w * (same[d] + diff[d]) * (nb_ - 2.0 * d);
  }
  return {top + std::log(2.0 * z), corr / z, bs / z};
}

namespace {

double nishimori_density(double K) { return conv::negative_density_from_coupling(K); }

double disorder_weight(std::uint32_t neg, int nb, double p) {
  const int k = std::popcount(neg);
  return std::pow(p, k) * std::pow(1.0 - p, nb - k);
}

}  // namespace

McEstimate nl_internal_energy(int L, double K, int n_disorder, int n_sweeps, std::uint64_t seed,
                              UpdateRule rule, unsigned jobs) {
  if (!(K > 0.0)) throw std::domain_error("Nishimori line requires K > 0");
  return mc_energy_per_bond(L, nishimori_density(K), K, n_disorder, n_sweeps, seed, rule, jobs);
}

McEstimate mc_energy_per_bond(int L, double p, double K, int n_disorder, int n_sweeps,
                              std::uint64_t seed, UpdateRule rule, unsigned jobs) {
  if (n_disorder < 1 || n_sweeps < 2) throw std::domain_error("need >= 1 disorder sample and >= 2 sweeps");
  const TorusLattice lattice(L);
  const auto table = flip_table(rule, K);
  std::vector<double> per_sample(static_cast<std::size_t>(n_disorder));
  parallel_for(per_sample.size(), jobs, [&](std::size_t d) {
    const auto sample =
        sample_disorder(lattice, p, derive_seed(seed, StreamKind::disorder, d));
    const CouplingGraph graph(lattice, sample);
    Rng rng = make_rng(seed, StreamKind::thermal, d);
    SpinState spins(static_cast<std::size_t>(lattice.num_sites()), 1);
    double acc = 0.0;
    int measured = 0;
    for (int t = 0; t < n_sweeps; ++t) {
      table_sweep(table, graph, spins, rng);
      if (2 * t >= n_sweeps) {
        acc += energy(lattice, sample, spins);
        ++measured;
      }
    }
    per_sample[d] = acc / std::max(measured, 1) / lattice.num_edges();
  });
  return summarize(per_sample, n_sweeps);
}

double exact_energy_per_bond(int L, double p, double K) {
  const TorusLattice lattice(L);
  check_enumerable(lattice, 3);
  const BondEnumerator en(lattice);
  const int nb = lattice.num_edges();
  double acc = 0.0;
  for (std::uint32_t neg = 0; neg < (1u << nb); ++neg) {
    const double w = disorder_weight(neg, nb, p);
    if (w == 0.0) continue;
    acc += w * -en.pair_stats(neg, K, 0, 0).mean_bond_sum;
  }
  return acc / nb;
}

QmEstimate nl_q_equals_m(int L, double K, int n_disorder, int n_sweeps, std::uint64_t seed,
                         UpdateRule rule, unsigned jobs) {
  if (!(K > 0.0)) throw std::domain_error("Nishimori line requires K > 0");
  const TorusLattice lattice(L);
  const int n = lattice.num_sites();
  const double p = nishimori_density(K);
  const auto table = flip_table(rule, K);
  std::vector<double> ms(static_cast<std::size_t>(n_disorder)), qs(ms.size()), ds(ms.size());
  parallel_for(ms.size(), jobs, [&](std::size_t d) {
    const auto sample =
        sample_disorder(lattice, p, derive_seed(seed, StreamKind::disorder, d));
    const CouplingGraph graph(lattice, sample);
    Rng rng = make_rng(seed, StreamKind::thermal, d);
    SpinState a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = uniform01(rng) < 0.5 ? 1 : -1;
      b[i] = uniform01(rng) < 0.5 ? 1 : -1;
    }
    double m2 = 0.0, q2 = 0.0;
    int measured = 0;
    for (int t = 0; t < n_sweeps; ++t) {
      table_sweep(table, graph, a, rng);
      table_sweep(table, graph, b, rng);
      if (2 * t < n_sweeps) continue;
      double ma = 0, mb = 0, q = 0;
      for (int i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
        q += a[i] * b[i];
      }
      m2 += 0.5 * (ma * ma + mb * mb);
      q2 += q * q;
      ++measured;
    }
    const double norm = static_cast<double>(std::max(measured, 1)) * n * n;
    ms[d] = m2 / norm;
    qs[d] = q2 / norm;
    ds[d] = ms[d] - qs[d];
  });
  return {summarize(ms, n_sweeps), summarize(qs, n_sweeps), summarize(ds, n_sweeps)};
}

QmExact exact_q_equals_m(int L, double K) {
  const TorusLattice lattice(L);
  check_enumerable(lattice, 2);
  const int nb = lattice.num_edges();
  const int n = lattice.num_sites();
  const double p = nishimori_density(K);
  QmExact out{0.0, 0.0};
  for (std::uint32_t neg = 0; neg < (1u << nb); ++neg) {
    const double w = disorder_weight(neg, nb, p);
    const auto r = enumerate_partition(lattice, uniform_disorder(lattice, neg), K);
    for (double c : r.correlation) {
      out.m += w * c;
      out.q += w * c * c;
    }
  }
  out.m /= static_cast<double>(n) * n;
  out.q /= static_cast<double>(n) * n;
  return out;
}

int farthest_site(const TorusLattice& lattice) {
  return lattice.site(lattice.size() / 2, lattice.size() / 2);
}

namespace {
double sign_of(double c) {
  constexpr double kZero = 1e-12;
  return c > kZero ? 1.0 : (c < -kZero ? -1.0 : 0.0);
}
}  // namespace

std::vector<ScanPoint> magnetization_scan(int L, double K_p, const std::vector<double>& K_list,
                                          int n_disorder, int n_sweeps, std::uint64_t seed,
                                          unsigned jobs) {
  const TorusLattice lattice(L);
  const int r = farthest_site(lattice);
  const double p = nishimori_density(K_p);
  const std::size_t nk = K_list.size();
  std::vector<double> sgn(nk * n_disorder), val(nk * n_disorder);
  parallel_for(static_cast<std::size_t>(n_disorder), jobs, [&](std::size_t d) {
    const auto sample =
        sample_disorder(lattice, p, derive_seed(seed, StreamKind::disorder, d));
    const CouplingGraph graph(lattice, sample);
    for (std::size_t k = 0; k < nk; ++k) {
      Rng rng = make_rng(seed, StreamKind::thermal, d, k);
      const auto table = flip_table(UpdateRule::metropolis, K_list[k]);
      SpinState s(static_cast<std::size_t>(lattice.num_sites()), 1);
      double acc = 0.0;
      int measured = 0;
      for (int t = 0; t < n_sweeps; ++t) {
        table_sweep(table, graph, s, rng);
        if (2 * t >= n_sweeps) {
          acc += s[0] * s[r];
          ++measured;
        }
      }
      const double c = acc / std::max(measured, 1);
      val[k * n_disorder + d] = c;
      sgn[k * n_disorder + d] = sign_of(c);
    }
  });
  std::vector<ScanPoint> out;
  for (std::size_t k = 0; k < nk; ++k) {
    auto pick = [&](const std::vector<double>& v) {
      return std::vector<double>(v.begin() + k * n_disorder, v.begin() + (k + 1) * n_disorder);
    };
    out.push_back({K_list[k], summarize(pick(sgn), n_sweeps), summarize(pick(val), n_sweeps)});
  }
  return out;
}

std::vector<ScanPoint> magnetization_scan_exact(int L, double K_p,
                                                const std::vector<double>& K_list) {
  const TorusLattice lattice(L);
  check_enumerable(lattice, 3);
  const BondEnumerator en(lattice);
  const int nb = lattice.num_edges();
  const int r = farthest_site(lattice);
  const double p = nishimori_density(K_p);
  std::vector<ScanPoint> out;
  for (double K : K_list) {
    double s = 0.0, c = 0.0;
    for (std::uint32_t neg = 0; neg < (1u << nb); ++neg) {
      const double w = disorder_weight(neg, nb, p);
      const double corr = en.pair_stats(neg, K, 0, r).correlation;
      s += w * sign_of(corr);
      c += w * corr;
    }
    ScanPoint pt;
    pt.K = K;
    pt.sign_correlation.mean = s;
    pt.correlation.mean = c;
    pt.sign_correlation.n_samples = pt.correlation.n_samples = 1 << nb;
    out.push_back(pt);
  }
  return out;
}

}  // namespace glassbridge
