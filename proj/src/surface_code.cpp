#include "glassbridge/surface_code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "glassbridge/conventions.hpp"
#include "glassbridge/parallel.hpp"

namespace glassbridge {

namespace {

constexpr double kNoiselessCoupling = 50.0;
constexpr int kMaxDecodeL = 4;
constexpr double kTieTolerance = 1e-12;

std::uint64_t p_key(double p) { return splitmix64(std::bit_cast<std::uint64_t>(p)); }

}  // namespace

ErrorChannel ErrorChannel::matched(double p) {
  if (!(p >= 0.0 && p < 0.5)) throw std::domain_error("error rate must lie in [0, 1/2)");
  return {p, p == 0.0 ? kNoiselessCoupling : conv::coupling_from_negative_density(p)};
}

ErrorChannel ErrorChannel::mismatched(double p, double K) {
  if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("error rate must lie in [0, 1)");
  if (!(K >= 0.0)) throw std::domain_error("decoder coupling must be nonnegative");
  return {p, K};
}

std::array<double, 4> DecodeOutcome::class_probabilities() const {
  const double top = *std::max_element(four_logZ.begin(), four_logZ.end());
  std::array<double, 4> w{};
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += (w[k] = std::exp(four_logZ[k] - top));
  for (auto& x : w) x /= s;
  return w;
}

ChainZ2 sample_error_chain(const TorusLattice& lattice, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("error rate must lie in [0, 1]");
  Rng rng(seed);
  ChainZ2 c(lattice.num_edges());
  for (int e = 0; e < lattice.num_edges(); ++e)
    if (uniform01(rng) < p) c.toggle(e);
  return c;
}

ChainZ2 canonical_correction(const std::vector<int>& syndrome, const TorusLattice& lattice) {
  if (syndrome.size() % 2 != 0) throw std::invalid_argument("syndrome must have even size");
  std::vector<int> defects = syndrome;
  std::sort(defects.begin(), defects.end());
  const int L = lattice.size();
  ChainZ2 c(lattice.num_edges());
  for (std::size_t k = 0; k < defects.size(); k += 2) {
    int r = lattice.row(defects[k]);
    int col = lattice.col(defects[k]);
    const int rb = lattice.row(defects[k + 1]);
    const int cb = lattice.col(defects[k + 1]);
    const int dc = ((cb - col) % L + L) % L;
    if (dc <= L - dc) {
      for (int i = 0; i < dc; ++i, ++col) c.toggle(lattice.edge(lattice.site(r, col), Direction::horizontal));
    } else {
      for (int i = 0; i < L - dc; ++i, --col)
        c.toggle(lattice.edge(lattice.site(r, col - 1), Direction::horizontal));
    }
    const int dr = ((rb - r) % L + L) % L;
    if (dr <= L - dr) {
      for (int i = 0; i < dr; ++i, ++r) c.toggle(lattice.edge(lattice.site(r, cb), Direction::vertical));
    } else {
      for (int i = 0; i < L - dr; ++i, --r)
        c.toggle(lattice.edge(lattice.site(r - 1, cb), Direction::vertical));
    }
  }
  return c;
}

namespace {
const TorusLattice& checked_decode_lattice(const TorusLattice& lattice) {
  if (lattice.size() > kMaxDecodeL)
    throw std::invalid_argument("optimal decoding enumerates partitions; L must be <= 4");
  return lattice;
}
}  // namespace

ClassDecoder::ClassDecoder(const TorusLattice& lattice)
    : lattice_(checked_decode_lattice(lattice)), enumerator_(lattice) {
  for (int k = 0; k < 4; ++k) logicals_[k] = logical_operator(lattice_, HomologyClass::from_index(k));
}

std::uint32_t ClassDecoder::dual_negative_mask(const ChainZ2& chain) const {
  if (chain.num_edges() != lattice_.num_edges())
    throw std::invalid_argument("chain does not match lattice");
  std::uint32_t m = 0;
  for (int e = 0; e < lattice_.num_edges(); ++e)
    if (chain.contains(e)) m |= 1u << lattice_.dual_edge(e);
  return m;
}

std::array<double, 4> ClassDecoder::class_log_partitions(const ChainZ2& reference, double K) const {
  std::array<double, 4> out{};
  const std::uint32_t base = dual_negative_mask(reference);
  for (int k = 0; k < 4; ++k) out[k] = enumerator_.log_z(base ^ dual_negative_mask(logicals_[k]), K);
  return out;
}

DecodeOutcome ClassDecoder::decode(const ChainZ2& error, const ErrorChannel& channel) const {
  return decode_with_reference(error, canonical_correction(boundary(error, lattice_), lattice_),
                               channel);
}

DecodeOutcome ClassDecoder::decode_with_reference(const ChainZ2& error, const ChainZ2& reference,
                                                  const ErrorChannel& channel) const {
  DecodeOutcome out;
  out.four_logZ = class_log_partitions(reference, channel.K_decode);
  // Exact ties (common at even L) must not depend on summation rounding.
  int best = 0;
  for (int k = 1; k < 4; ++k) {
    const double slack = kTieTolerance * std::max(1.0, std::abs(out.four_logZ[best]));
    if (out.four_logZ[k] > out.four_logZ[best] + slack) best = k;
  }
  out.chosen_class = HomologyClass::from_index(best);
  out.true_class_offset = homology_class(error ^ reference, lattice_);
  out.success = out.chosen_class == out.true_class_offset;
  return out;
}

std::array<double, 4> class_log_partitions(const ChainZ2& reference, double K,
                                           const TorusLattice& lattice) {
  return ClassDecoder(lattice).class_log_partitions(reference, K);
}

DecodeOutcome decode(const ChainZ2& error, const ErrorChannel& channel, const TorusLattice& lattice) {
  return ClassDecoder(lattice).decode(error, channel);
}

double exact_failure_rate(const TorusLattice& lattice, const ErrorChannel& channel) {
  if (lattice.size() > 3) throw std::invalid_argument("exhaustive channel sum needs L <= 3");
  const ClassDecoder decoder(lattice);
  const int nb = lattice.num_edges();
  const double p = channel.p;
  double fail = 0.0;
  for (std::uint32_t pattern = 0; pattern < (1u << nb); ++pattern) {
    const int w = std::popcount(pattern);
    const double prob = std::pow(p, w) * std::pow(1.0 - p, nb - w);
    if (prob == 0.0) continue;
    ChainZ2 e(nb);
    for (int b = 0; b < nb; ++b)
      if ((pattern >> b) & 1) e.toggle(b);
    if (!decoder.decode(e, channel).success) fail += prob;
  }
  return fail;
}

std::vector<SweepRow> failure_rate_sweep(const SweepOptions& options) {
  std::vector<SweepRow> rows;
  for (int L : options.L_list) {
    const TorusLattice lattice(L);
    const ClassDecoder decoder(lattice);
    for (double p : options.p_list) {
      const ErrorChannel channel =
          options.matched ? ErrorChannel::matched(p) : ErrorChannel::mismatched(p, options.K);
      std::vector<std::uint8_t> failed(static_cast<std::size_t>(options.trials), 0);
      parallel_for(failed.size(), options.jobs, [&](std::size_t t) {
        const auto seed = derive_seed(options.seed, StreamKind::error_chain,
                                      static_cast<std::uint64_t>(L), p_key(p) + t);
        failed[t] = decoder.decode(sample_error_chain(lattice, p, seed), channel).success ? 0 : 1;
      });
      SweepRow row{L, p, 0, options.trials, 0.0, 0.0};
      for (auto f : failed) row.failures += f;
      if (row.trials > 0) {
        row.rate = static_cast<double>(row.failures) / row.trials;
        row.stderr_ = std::sqrt(row.rate * (1.0 - row.rate) / row.trials);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

struct CrossPoint {
  bool found = false;
  std::size_t index = 0;
  double p = 0.0;
};

CrossPoint first_crossing(const std::vector<double>& ps, const std::vector<double>& small,
                          const std::vector<double>& large) {
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    const double d0 = large[i] - small[i];
    const double d1 = large[i + 1] - small[i + 1];
    if (d0 < 0.0 && d1 >= 0.0) {
      const double t = d0 / (d0 - d1);
      return {true, i, ps[i] + t * (ps[i + 1] - ps[i])};
    }
  }
  return {};
}

}  // namespace

std::vector<Crossing> pairwise_crossings(const std::vector<SweepRow>& rows, std::uint64_t seed,
                                         int bootstrap) {
  std::map<int, std::vector<const SweepRow*>> by_L;
  for (const auto& r : rows) by_L[r.L].push_back(&r);
  for (auto& [L, v] : by_L)
    std::sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->p < b->p; });

  std::vector<Crossing> out;
  for (auto a = by_L.begin(); a != by_L.end(); ++a) {
    for (auto b = std::next(a); b != by_L.end(); ++b) {
      const auto& ra = a->second;
      const auto& rb = b->second;
      if (ra.size() != rb.size()) throw std::invalid_argument("sweep grids differ between sizes");
      std::vector<double> ps, fa, fb;
      for (std::size_t i = 0; i < ra.size(); ++i) {
        if (ra[i]->p != rb[i]->p) throw std::invalid_argument("sweep grids differ between sizes");
        ps.push_back(ra[i]->p);
        fa.push_back(ra[i]->rate);
        fb.push_back(rb[i]->rate);
      }
      Crossing c{a->first, b->first, {}, {}, {}, {}, {}, 0, bootstrap};
      const auto cp = first_crossing(ps, fa, fb);
      if (cp.found) {
        c.p_lo = ps[cp.index];
        c.p_hi = ps[cp.index + 1];
        c.p_cross = cp.p;
      }
      Rng rng = make_rng(seed, StreamKind::bootstrap,
                         static_cast<std::uint64_t>(a->first) * 64 + b->first);
      std::vector<double> samples;
      for (int k = 0; k < bootstrap; ++k) {
        std::vector<double> ba(ps.size()), bb(ps.size());
        for (std::size_t i = 0; i < ps.size(); ++i) {
          std::binomial_distribution<long> da(ra[i]->trials, ra[i]->rate);
          std::binomial_distribution<long> db(rb[i]->trials, rb[i]->rate);
          ba[i] = static_cast<double>(da(rng)) / std::max(ra[i]->trials, 1L);
          bb[i] = static_cast<double>(db(rng)) / std::max(rb[i]->trials, 1L);
        }
        const auto bp = first_crossing(ps, ba, bb);
        if (bp.found) samples.push_back(bp.p);
      }
      c.bootstrap_crossed = static_cast<int>(samples.size());
      if (samples.size() >= 2) {
        std::sort(samples.begin(), samples.end());
        auto q = [&](double f) {
          const auto i = static_cast<std::size_t>(std::floor(f * (samples.size() - 1)));
          return samples[i];
        };
        c.ci_lo = q(0.025);
        c.ci_hi = q(0.975);
      }
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace glassbridge
