#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "glassbridge/lattice.hpp"
#include "glassbridge/spinglass.hpp"

namespace glassbridge {

struct ErrorChannel {
  double p = 0.0;
  double K_decode = 0.0;

  // Decoder coupling from exp(-2K) = p / (1 - p); p = 0 is mapped to a large
  // finite coupling.
  static ErrorChannel matched(double p);
  static ErrorChannel mismatched(double p, double K);
};

struct DecodeOutcome {
  HomologyClass true_class_offset;
  HomologyClass chosen_class;
  bool success;
  std::array<double, 4> four_logZ;

  std::array<double, 4> class_probabilities() const;
};

ChainZ2 sample_error_chain(const TorusLattice& lattice, double p, std::uint64_t seed);

// Defects are paired in ascending site order (first with second, ...); each
// pair is joined by a minimal torus path, horizontal leg along the first
// defect's row, then vertical leg along the second defect's column. Steps go
// +c / +r when both directions are equally short.
ChainZ2 canonical_correction(const std::vector<int>& syndrome, const TorusLattice& lattice);

// Exact enumeration context shared across trials on one lattice (L <= 4).
class ClassDecoder {
 public:
  explicit ClassDecoder(const TorusLattice& lattice);

  const TorusLattice& lattice() const { return lattice_; }

  // log Z for dual-lattice bond signs tau = -1 on (reference Δ D_k), k in
  // tie-break order.
  std::array<double, 4> class_log_partitions(const ChainZ2& reference, double K) const;

  DecodeOutcome decode(const ChainZ2& error, const ErrorChannel& channel) const;
  // Same, against an explicit reference chain with boundary(reference) =
  // boundary(error).
  DecodeOutcome decode_with_reference(const ChainZ2& error, const ChainZ2& reference,
                                      const ErrorChannel& channel) const;

 private:
  std::uint32_t dual_negative_mask(const ChainZ2& chain) const;

  TorusLattice lattice_;
  BondEnumerator enumerator_;
  std::array<ChainZ2, 4> logicals_;
};

std::array<double, 4> class_log_partitions(const ChainZ2& reference, double K,
                                           const TorusLattice& lattice);
DecodeOutcome decode(const ChainZ2& error, const ErrorChannel& channel, const TorusLattice& lattice);

// Exact logical failure probability by summing over all 2^{2L^2} error
// patterns; L <= 3.
double exact_failure_rate(const TorusLattice& lattice, const ErrorChannel& channel);

struct SweepRow {
  int L;
  double p;
  long failures;
  long trials;
  double rate;
  double stderr_;
};

struct SweepOptions {
  std::vector<int> L_list;
  std::vector<double> p_list;
  long trials = 1000;
  bool matched = true;
  double K = 0.0;  // used when matched is false
  std::uint64_t seed = 0;
  unsigned jobs = 0;
};

std::vector<SweepRow> failure_rate_sweep(const SweepOptions& options);

struct Crossing {
  int L_small;
  int L_large;
  // Bracket from the grid: the larger size fails less at p_lo and more at
  // p_hi. Absent when the curves do not cross on the grid.
  std::optional<double> p_lo, p_hi;
  std::optional<double> p_cross;  // linear interpolation of the difference
  std::optional<double> ci_lo, ci_hi;  // 95% parametric bootstrap interval
  int bootstrap_crossed = 0;
  int bootstrap_total = 0;
};

std::vector<Crossing> pairwise_crossings(const std::vector<SweepRow>& rows, std::uint64_t seed,
                                         int bootstrap = 400);

}  // namespace glassbridge
