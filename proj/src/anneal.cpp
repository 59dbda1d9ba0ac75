#include "glassbridge/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace glassbridge {

namespace {

using cd = std::complex<double>;
using EigenSolver = Eigen::SelfAdjointEigenSolver<DenseHermitian>;

constexpr double kUnitarityLimit = 1e-8;
constexpr double kGapDegenerate = 1e-9;

double fraction_to_f(Interpolation f, double u) {
  u = std::clamp(u, 0.0, 1.0);
  switch (f) {
    case Interpolation::linear:
      return u;
    case Interpolation::smoothstep:
      return u * u * (3.0 - 2.0 * u);
  }
  return u;
}

std::vector<double> grouped(const Vector<double>& values, double tol, std::vector<int>* members) {
  // values need not be sorted; returns distinct levels ascending and, per
  // input index, its level index.
  std::vector<int> order(static_cast<std::size_t>(values.size()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
  std::vector<double> levels;
  members->assign(order.size(), -1);
  for (int idx : order) {
    const double v = values[idx];
    if (levels.empty() || v - levels.back() > tol * std::max(1.0, std::abs(v))) levels.push_back(v);
    (*members)[static_cast<std::size_t>(idx)] = static_cast<int>(levels.size()) - 1;
  }
  return levels;
}

}  // namespace

double Schedule::f_at(double t) const {
  if (T <= 0.0) return 1.0;
  return fraction_to_f(f, t / T);
}

void Schedule::validate() const {
  if (!(T >= 0.0) || !std::isfinite(T)) throw std::domain_error("schedule horizon must be finite and >= 0");
  if (steps < 1) throw std::domain_error("schedule needs at least one step");
}

void AnnealSpec::validate() const {
  if (N < 1 || N > kMaxAnnealSpins) throw std::domain_error("anneal spin count must lie in [1, 12]");
  for (const auto& c : couplings)
    if (c.i < 0 || c.i >= N || c.j < 0 || c.j >= N || c.i == c.j)
      throw std::domain_error("coupling sites out of range");
  if (!fields.empty() && static_cast<int>(fields.size()) != N)
    throw std::domain_error("field vector must be empty or have N entries");
  if (!(gamma0 >= 0.0)) throw std::domain_error("transverse field must be nonnegative");
  schedule.validate();
}

Vector<double> classical_energies(int N, const std::vector<Coupling>& couplings,
                                  const std::vector<double>& fields) {
  const int d = 1 << N;
  Vector<double> e = Vector<double>::Zero(d);
  for (int s = 0; s < d; ++s) {
    double v = 0.0;
    for (const auto& c : couplings) v -= c.J * spin_z(s, c.i) * spin_z(s, c.j);
    for (std::size_t i = 0; i < fields.size(); ++i) v -= fields[i] * spin_z(s, static_cast<int>(i));
    e[s] = v;
  }
  return e;
}

DenseHermitian Hamiltonians::at(double f) const {
  DenseHermitian H = (1.0 - f) * h1;
  H.diagonal() += f * h0_diag;
  return H;
}

Hamiltonians build_hamiltonians(const AnnealSpec& spec) {
  spec.validate();
  const int d = spec.dim();
  Hamiltonians h;
  h.h0_diag = classical_energies(spec.N, spec.couplings, spec.fields);
  h.h1 = DenseHermitian::Zero(d, d);
  for (int s = 0; s < d; ++s)
    for (int i = 0; i < spec.N; ++i) h.h1(s ^ (1 << i), s) = -spec.gamma0;
  return h;
}

Unitary evolve(const AnnealSpec& spec) {
  const Hamiltonians h = build_hamiltonians(spec);
  const int d = spec.dim();
  Unitary U = Unitary::Identity(d, d);
  const auto& sch = spec.schedule;
  if (sch.T == 0.0) return U;
  const double dt = sch.T / sch.steps;
  EigenSolver es;
  for (int k = 0; k < sch.steps; ++k) {
    es.compute(h.at(sch.f_at((k + 0.5) * dt)));
    const Vector<cd> phase = (es.eigenvalues().cast<cd>() * cd(0.0, -dt)).array().exp();
    const Unitary V = es.eigenvectors().cast<cd>();
    U = (V * phase.asDiagonal() * V.adjoint() * U).eval();
  }
  if (unitarity_error(U) > kUnitarityLimit) throw std::runtime_error("unitarity drift; reduce the step size");
  return U;
}

double unitarity_error(const Unitary& U) {
  return (U.adjoint() * U - Unitary::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff();
}

int converged_steps(AnnealSpec spec, double tol, int max_steps) {
  const Hamiltonians h = build_hamiltonians(spec);
  EigenSolver es(h.at(0.0));
  const PureState psi0 = es.eigenvectors().col(0).cast<cd>();
  PureState prev = evolve(spec) * psi0;
  while (spec.schedule.steps * 2 <= max_steps) {
    spec.schedule.steps *= 2;
    PureState next = evolve(spec) * psi0;
    const double change = (next - prev).cwiseAbs().maxCoeff();
    prev = std::move(next);
    if (change < tol) break;
  }
  return spec.schedule.steps;
}

Spectrum grouped_spectrum(const DenseHermitian& H, double tol) {
  EigenSolver es(H);
  Spectrum sp;
  std::vector<int> member;
  sp.levels = grouped(es.eigenvalues(), tol, &member);
  sp.degeneracy.assign(sp.levels.size(), 0);
  for (int m : member) ++sp.degeneracy[static_cast<std::size_t>(m)];
  sp.projector_basis.resize(sp.levels.size());
  std::vector<int> filled(sp.levels.size(), 0);
  for (std::size_t l = 0; l < sp.levels.size(); ++l)
    sp.projector_basis[l].resize(H.rows(), sp.degeneracy[l]);
  for (std::size_t c = 0; c < member.size(); ++c) {
    const auto l = static_cast<std::size_t>(member[c]);
    sp.projector_basis[l].col(filled[l]++) = es.eigenvectors().col(static_cast<Eigen::Index>(c));
  }
  return sp;
}

TransitionStatistics transition_statistics(const AnnealSpec& spec) {
  return transition_statistics(spec, evolve(spec));
}

TransitionStatistics transition_statistics(const AnnealSpec& spec, const Unitary& U) {
  const Hamiltonians h = build_hamiltonians(spec);
  TransitionStatistics st;
  st.initial = grouped_spectrum(h.at(0.0));
  st.final_energies = h.h0_diag;
  const int d = spec.dim();
  st.weight.resize(d, static_cast<Eigen::Index>(st.initial.levels.size()));
  for (std::size_t n = 0; n < st.initial.levels.size(); ++n) {
    const Unitary UB = U * st.initial.projector_basis[n].cast<cd>();
    st.weight.col(static_cast<Eigen::Index>(n)) = UB.cwiseAbs2().rowwise().sum();
  }
  return st;
}

double partition_function(const Spectrum& spectrum, double beta) {
  double z = 0.0;
  for (std::size_t l = 0; l < spectrum.levels.size(); ++l)
    z += spectrum.degeneracy[l] * std::exp(-beta * spectrum.levels[l]);
  return z;
}

double partition_function(const Vector<double>& energies, double beta) {
  return (-beta * energies.array()).exp().sum();
}

double WorkDistribution::total() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.prob;
  return s;
}

double WorkDistribution::mean() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.prob * e.W;
  return s;
}

double WorkDistribution::exp_average(double beta_prime) const {
  double s = 0.0;
  for (const auto& e : entries) s += e.prob * std::exp(-beta_prime * e.W);
  return s;
}

WorkDistribution work_distribution(const TransitionStatistics& stats, double beta) {
  if (!(beta >= 0.0)) throw std::domain_error("beta must be nonnegative");
  std::vector<int> final_level;
  const std::vector<double> final_levels = grouped(stats.final_energies, 1e-9, &final_level);
  const double z0 = partition_function(stats.initial, beta);
  std::map<std::pair<int, int>, double> joint;
  for (Eigen::Index s = 0; s < stats.weight.rows(); ++s)
    for (Eigen::Index n = 0; n < stats.weight.cols(); ++n)
      joint[{static_cast<int>(n), final_level[static_cast<std::size_t>(s)]}] +=
          stats.weight(s, n) * std::exp(-beta * stats.initial.levels[static_cast<std::size_t>(n)]) / z0;
  WorkDistribution wd;
  wd.beta = beta;
  for (const auto& [key, prob] : joint)
    wd.entries.push_back({final_levels[static_cast<std::size_t>(key.second)] -
                              stats.initial.levels[static_cast<std::size_t>(key.first)],
                          prob});
  std::stable_sort(wd.entries.begin(), wd.entries.end(),
                   [](const WorkEntry& a, const WorkEntry& b) { return a.W < b.W; });
  return wd;
}

WorkDistribution work_distribution(const AnnealSpec& spec, double beta) {
  return work_distribution(transition_statistics(spec), beta);
}

JarzynskiResult jarzynski_check(const TransitionStatistics& stats, const Vector<double>& h0_diag,
                                double beta) {
  const WorkDistribution wd = work_distribution(stats, beta);
  return {wd.exp_average(beta),
          partition_function(h0_diag, beta) / partition_function(stats.initial, beta)};
}

JarzynskiResult jarzynski_check(const AnnealSpec& spec, double beta) {
  return jarzynski_check(transition_statistics(spec), build_hamiltonians(spec).h0_diag, beta);
}

ObservableJarzynski jarzynski_observable(const TransitionStatistics& stats, double beta, int i,
                                         int j) {
  const double z0 = partition_function(stats.initial, beta);
  ObservableJarzynski r{0.0, 0.0, 0.0};
  double zt = 0.0;
  for (Eigen::Index s = 0; s < stats.weight.rows(); ++s) {
    const double o = spin_z(static_cast<int>(s), i) * spin_z(static_cast<int>(s), j);
    const double es = stats.final_energies[s];
    for (Eigen::Index n = 0; n < stats.weight.cols(); ++n) {
      const double en = stats.initial.levels[static_cast<std::size_t>(n)];
      const double w = stats.weight(s, n) * std::exp(-beta * en) / z0 * std::exp(-beta * (es - en));
      r.plain += w;
      r.weighted += o * w;
    }
    zt += std::exp(-beta * es);
    r.thermal += o * std::exp(-beta * es);
  }
  r.thermal /= zt;
  return r;
}

GapResult min_gap(const AnnealSpec& spec, int grid_points, double epsilon) {
  if (grid_points < 16) throw std::domain_error("gap scan needs at least 16 grid points");
  if (spec.dim() < 2) throw std::domain_error("gap needs at least two levels");
  const Hamiltonians h = build_hamiltonians(spec);
  DenseHermitian dH = -h.h1;
  dH.diagonal() += h.h0_diag;
  GapResult g{std::numeric_limits<double>::infinity(), 0.0, 0.0, false};
  double max_elem = 0.0;
  EigenSolver es;
  for (int k = 0; k < grid_points; ++k) {
    const double u = static_cast<double>(k) / (grid_points - 1);
    es.compute(h.at(fraction_to_f(spec.schedule.f, u)));
    const double gap = es.eigenvalues()[1] - es.eigenvalues()[0];
    if (gap < g.delta_min) {
      g.delta_min = gap;
      g.t_at_min = u * spec.schedule.T;
    }
    if (gap < kGapDegenerate) g.degenerate = true;
    max_elem = std::max(max_elem, std::abs(es.eigenvectors().col(1).dot(dH * es.eigenvectors().col(0))));
  }
  if (g.degenerate) g.delta_min = 0.0;
  g.T_adiabatic = g.degenerate ? std::numeric_limits<double>::infinity()
                               : max_elem / (epsilon * g.delta_min * g.delta_min);
  return g;
}

double ground_state_fidelity(const AnnealSpec& spec) {
  const Hamiltonians h = build_hamiltonians(spec);
  EigenSolver es0(h.at(0.0));
  if (es0.eigenvalues()[1] - es0.eigenvalues()[0] < kGapDegenerate)
    throw std::domain_error("initial ground state is degenerate");
  Eigen::Index g = 0;
  std::vector<double> sorted(h.h0_diag.data(), h.h0_diag.data() + h.h0_diag.size());
  std::sort(sorted.begin(), sorted.end());
  if (sorted[1] - sorted[0] < kGapDegenerate) throw std::domain_error("final ground state is degenerate");
  h.h0_diag.minCoeff(&g);
  const PureState out = evolve(spec) * es0.eigenvectors().col(0).cast<cd>();
  return std::norm(out[g]);
}

AnnealSpec quantum_gauge_transform(const AnnealSpec& spec, const std::vector<int>& xi) {
  if (static_cast<int>(xi.size()) != spec.N) throw std::invalid_argument("gauge field must have N entries");
  AnnealSpec out = spec;
  for (auto& c : out.couplings) c.J *= xi[c.i] * xi[c.j];
  for (std::size_t i = 0; i < out.fields.size(); ++i) out.fields[i] *= xi[i];
  return out;
}

RandomInstance random_instance(int N, Rng& rng, bool sudden) {
  auto u = [&](double a, double b) { return a + (b - a) * uniform01(rng); };
  RandomInstance r;
  r.spec.N = N;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (uniform01(rng) < 0.7) r.spec.couplings.push_back({i, j, u(-1.0, 1.0)});
  r.spec.fields.resize(static_cast<std::size_t>(N));
  for (auto& f : r.spec.fields) f = u(-0.5, 0.5);
  r.spec.gamma0 = u(0.3, 1.5);
  r.spec.schedule.T = sudden ? 0.0 : u(0.05, 3.0);
  r.spec.schedule.steps = 8 + static_cast<int>(rng() % 57);
  r.spec.schedule.f = uniform01(rng) < 0.5 ? Interpolation::linear : Interpolation::smoothstep;
  r.beta = u(0.1, 2.0);
  return r;
}

}  // namespace glassbridge
