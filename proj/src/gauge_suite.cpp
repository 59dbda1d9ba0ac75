#include "glassbridge/gauge_suite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "glassbridge/parallel.hpp"

namespace glassbridge {

namespace {

struct PerConfig {
  double exp_w;        // <e^{-beta W}>
  double exp_w2_at_1;  // <e^{-beta2 W}> started at beta2
  double z_t;          // Z_T(beta)
  double z_0;          // Z_0(beta)
  double corr_w;       // <s_i s_j e^{-beta W}>
  double mean_w;       // <W> at beta
  double jarzynski_error;
  bool corr_vanishes;
};

void require_small_torus(const TorusLattice& lattice) {
  if (lattice.size() != 2) throw std::invalid_argument("gauge identity suite runs on the 2x2 torus only");
}

// <s_i s_j> vanishes at every temperature iff every energy shell is balanced.
bool correlation_vanishes(const Vector<double>& energies, double J, int i, int j) {
  std::map<long, int> shells;
  for (Eigen::Index s = 0; s < energies.size(); ++s)
    shells[std::lround(energies[s] / J)] += spin_z(static_cast<int>(s), i) * spin_z(static_cast<int>(s), j);
  return std::all_of(shells.begin(), shells.end(), [](const auto& kv) { return kv.second == 0; });
}

std::vector<PerConfig> evaluate(const TorusLattice& lattice, const GaugeSuiteParams& p, unsigned jobs) {
  require_small_torus(lattice);
  const std::size_t configs = std::size_t{1} << lattice.num_edges();
  std::vector<PerConfig> out(configs);
  parallel_for(configs, jobs, [&](std::size_t neg) {
    const AnnealSpec spec = torus_anneal_spec(lattice, static_cast<std::uint32_t>(neg), p);
    const TransitionStatistics st = transition_statistics(spec);
    const WorkDistribution wd = work_distribution(st, p.beta);
    const WorkDistribution wd2 = work_distribution(st, p.beta2);
    const auto obs = jarzynski_observable(st, p.beta, p.pair_i, p.pair_j);
    PerConfig c;
    c.exp_w = wd.exp_average(p.beta);
    c.exp_w2_at_1 = wd2.exp_average(p.beta2);
    c.z_t = partition_function(st.final_energies, p.beta);
    c.z_0 = partition_function(st.initial, p.beta);
    c.corr_w = obs.weighted;
    c.mean_w = wd.mean();
    c.jarzynski_error = std::abs(c.exp_w - c.z_t / c.z_0);
    c.corr_vanishes = correlation_vanishes(st.final_energies, p.J, p.pair_i, p.pair_j);
    out[neg] = c;
  });
  return out;
}

// Bond-temperature disorder weight prod_e e^{b J tau_e} / (2 cosh bJ).
double nishimori_weight(std::uint32_t neg, int nb, double b, double J) {
  const int k = std::popcount(neg);
  return std::exp(b * J * (nb - 2 * k)) / std::pow(2.0 * std::cosh(b * J), nb);
}

}  // namespace

AnnealSpec torus_anneal_spec(const TorusLattice& lattice, std::uint32_t negative_mask,
                             const GaugeSuiteParams& params) {
  AnnealSpec spec;
  spec.N = lattice.num_sites();
  for (int e = 0; e < lattice.num_edges(); ++e) {
    const auto& ends = lattice.endpoints(e);
    spec.couplings.push_back({ends[0], ends[1], ((negative_mask >> e) & 1) ? -params.J : params.J});
  }
  spec.gamma0 = params.gamma0;
  spec.schedule = params.schedule;
  return spec;
}

GaugeSuiteReport gauge_identity_suite(const TorusLattice& lattice, const GaugeSuiteParams& p,
                                      unsigned jobs) {
  const auto per = evaluate(lattice, p, jobs);
  const int N = lattice.num_sites();
  const int nb = lattice.num_edges();
  const double b = p.beta, b2 = p.beta2, J = p.J, g = p.gamma0;
  const double ratio = std::pow(std::cosh(b * J), nb) / std::pow(std::cosh(b * g), N);

  double sym = 0.0, inv = 0.0, two_lhs = 0.0, two_rhs = 0.0, corr = 0.0, retained = 0.0, worst = 0.0;
  int excluded = 0;
  for (std::size_t neg = 0; neg < per.size(); ++neg) {
    const auto& c = per[neg];
    const auto m = static_cast<std::uint32_t>(neg);
    const double w_b = nishimori_weight(m, nb, b, J);
    sym += c.exp_w / static_cast<double>(per.size());
    inv += w_b / c.exp_w;
    two_lhs += nishimori_weight(m, nb, b2, J) * c.exp_w;
    two_rhs += w_b * c.exp_w2_at_1;
    worst = std::max(worst, c.jarzynski_error);
    if (c.corr_vanishes) {
      ++excluded;
    } else {
      corr += w_b / c.corr_w;
      retained += 1.0;
    }
  }
  const double two_factor = std::pow(std::cosh(b * J) / std::cosh(b2 * J), nb) *
                            std::pow(std::cosh(b2 * g) / std::cosh(b * g), N);

  GaugeSuiteReport r;
  r.configurations = static_cast<int>(per.size());
  r.correlation_excluded = excluded;
  r.checks.push_back({"symmetric_work_exponential", sym, ratio});
  r.checks.push_back({"inverse_work_exponential_nishimori", inv, 1.0 / ratio});
  r.checks.push_back({"product_of_averages", sym * inv, 1.0});
  r.checks.push_back({"two_temperature_relation", two_lhs, two_rhs * two_factor});
  r.checks.push_back({"inverse_correlation_nishimori", corr,
                      retained / static_cast<double>(per.size()) / ratio});
  r.checks.push_back({"per_configuration_jarzynski", worst, 0.0});
  return r;
}

KlReport kl_bound_check(const TorusLattice& lattice, const GaugeSuiteParams& p, unsigned jobs) {
  if (!(p.beta > 0.0)) throw std::domain_error("work bounds need beta > 0");
  const auto per = evaluate(lattice, p, jobs);
  const int N = lattice.num_sites();
  const int nb = lattice.num_edges();
  const double b = p.beta;
  const double norm = std::pow(2.0, N) * std::pow(2.0 * std::cosh(b * p.J), nb);
  const double p0 = 1.0 / static_cast<double>(per.size());
  KlReport r{0.0, 0.0, 0.0, 0.0, 0.0};
  for (const auto& c : per) {
    const double pb = c.z_t / norm;
    r.marginal_sum += pb;
    r.D += p0 * std::log(pb / p0);
    r.work_avg += p0 * c.mean_w;
  }
  r.bound_loose = -(N / b) * std::log(std::pow(std::cosh(b * p.J), static_cast<double>(nb) / N) /
                                      std::cosh(b * p.gamma0));
  r.bound_tight = r.bound_loose - r.D / b;
  return r;
}

}  // namespace glassbridge
