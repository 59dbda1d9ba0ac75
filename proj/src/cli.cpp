#include "glassbridge/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "glassbridge/conventions.hpp"
#include "glassbridge/duality.hpp"
#include "glassbridge/gauge_suite.hpp"
#include "glassbridge/lattice.hpp"
#include "glassbridge/master.hpp"
#include "glassbridge/meanfield.hpp"
#include "glassbridge/quantum.hpp"
#include "glassbridge/spinglass.hpp"
#include "glassbridge/surface_code.hpp"

#ifndef GLASSBRIDGE_VERSION
#define GLASSBRIDGE_VERSION "0.0.0"
#endif

namespace glassbridge::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  UsageError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
  int code;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::vector<double> parse_grid(const std::string& text, double lo, double hi) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(kUsage, "grid '" + text + "' must be start:stop:step");
    }
  }
  if (parts.size() != 3) throw UsageError(kUsage, "grid '" + text + "' must be start:stop:step");
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0.0) || stop < start) throw UsageError(kOutOfRange, "grid needs step > 0 and stop >= start");
  if (start < lo || stop > hi)
    throw UsageError(kOutOfRange, "grid '" + text + "' leaves [" + num(lo) + ", " + num(hi) + "]");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (n > 100000) throw UsageError(kOutOfRange, "grid has too many points");
  std::vector<double> v;
  for (long i = 0; i < n; ++i) v.push_back(std::round((start + i * step) * 1e12) / 1e12);
  return v;
}

UpdateRule parse_rule(const std::string& r) {
  return r == "heat-bath" ? UpdateRule::heat_bath : UpdateRule::metropolis;
}

// ---- configuration echo -------------------------------------------------

json config_json(const RunConfig& c) {
  json j;
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, MeanfieldArgs>) {
          j = {{"J", a.J}, {"z", a.z}, {"beta_grid", a.beta_grid}};
        } else if constexpr (std::is_same_v<T, DualityArgs>) {
          j = {{"cluster", a.s}, {"boundary_scan", a.boundary_scan}, {"scan_points", a.scan_points}};
        } else if constexpr (std::is_same_v<T, McArgs>) {
          j = {{"L", a.L}, {"K", a.K}, {"nishimori", a.nishimori},
               {"p", a.p ? json(*a.p) : json(nullptr)}, {"disorder", a.disorder},
               {"sweeps", a.sweeps}, {"observable", a.observable}, {"rule", a.rule},
               {"K_grid", a.K_grid}};
        } else if constexpr (std::is_same_v<T, CodeArgs>) {
          j = {{"L", a.L}, {"p_grid", a.p_grid}, {"trials", a.trials}, {"matched", a.matched},
               {"K", a.K ? json(*a.K) : json(nullptr)}};
        } else {
          j = {{"N", a.N}, {"lattice", a.lattice}, {"gamma0", a.gamma0}, {"beta", a.beta},
               {"beta2", a.beta2}, {"T", a.T}, {"steps", a.steps}, {"suite", a.suite},
               {"instances", a.instances}, {"ancillas", a.ancillas}, {"dt", a.dt}};
        }
      },
      c.params);
  j["format"] = c.format;
  return j;
}

json meta_json(const RunConfig& c) {
  return {{"tool", "glassbridge"},
          {"version", version()},
          {"command", c.subcommand},
          {"config", config_json(c)},
          {"seed", c.master_seed}};
}

void csv_stamp(std::ostream& os, const RunConfig& c) {
  os << "# glassbridge " << version() << "\n"
     << "# command: " << c.subcommand << "\n"
     << "# config: " << config_json(c).dump() << "\n"
     << "# seed: " << c.master_seed << "\n";
}

// ---- subcommands ------------------------------------------------------------

int run_meanfield(const RunConfig& c, const MeanfieldArgs& a, std::ostream& os) {
  const auto betas = parse_grid(a.beta_grid, 0.0, 1e6);
  const auto pts = mf_scan(a.J, a.z, betas);
  const double beta_c = mf_critical_beta(a.J, a.z);
  if (c.format == "json") {
    json j = {{"meta", meta_json(c)}, {"beta_c", beta_c}, {"points", json::array()}};
    for (const auto& p : pts) j["points"].push_back({{"beta", p.beta}, {"m_star", p.m_star}});
    os << j.dump(2) << "\n";
  } else {
    csv_stamp(os, c);
    os << "# beta_c: " << num(beta_c) << "\n"
       << "# rate function reported as f = -(m bh - m atanh m + log(2/sqrt(1-m^2)))\n"
       << "beta,m_star\n";
    for (const auto& p : pts) os << num(p.beta) << "," << num(p.m_star) << "\n";
  }
  return kOk;
}

int run_duality(const RunConfig& c, const DualityArgs& a, std::ostream& os) {
  const auto kc = ising_critical_point();
  const auto mcp = multicritical_point(a.s);
  std::vector<std::pair<double, double>> scan;
  if (a.boundary_scan) {
    for (int i = 0; i < a.scan_points; ++i) {
      const double p = mcp.p_c * i / (a.scan_points - 1);
      scan.emplace_back(p, phase_boundary(a.s, p));
    }
  }
  if (c.format == "json") {
    json j = {{"meta", meta_json(c)}, {"s", a.s}, {"p_c", mcp.p_c},
              {"residual_calls", mcp.residual_calls}, {"K_c_pure", kc.K_c}};
    if (a.boundary_scan) {
      j["boundary"] = json::array();
      for (auto [p, k] : scan) j["boundary"].push_back({{"p", p}, {"K_c", k}});
    }
    os << j.dump(2) << "\n";
  } else {
    csv_stamp(os, c);
    os << "# p_c: " << num(mcp.p_c) << " (residual calls " << mcp.residual_calls << ")\n"
       << "# K_c pure: " << num(kc.K_c) << "\n";
    if (a.boundary_scan) {
      os << "p,K_c\n";
      for (auto [p, k] : scan) os << num(p) << "," << num(k) << "\n";
    } else {
      os << "s,p_c,residual_calls,K_c_pure\n"
         << a.s << "," << num(mcp.p_c) << "," << mcp.residual_calls << "," << num(kc.K_c) << "\n";
    }
  }
  return kOk;
}

int run_mc(const RunConfig& c, const McArgs& a, std::ostream& os) {
  const UpdateRule rule = parse_rule(a.rule);
  struct Row {
    double K, estimate, se, exact;
  };
  std::vector<Row> rows;
  json extra = json::object();
  if (a.observable == "energy") {
    const double p = a.nishimori ? conv::negative_density_from_coupling(a.K) : *a.p;
    const auto est = mc_energy_per_bond(a.L, p, a.K, a.disorder, a.sweeps, c.master_seed, rule, c.jobs);
    double exact = std::nan("");
    if (a.nishimori)
      exact = -std::tanh(a.K);
    else if (a.L <= 3)
      exact = exact_energy_per_bond(a.L, p, a.K);
    rows.push_back({a.K, est.mean, est.std_error, exact});
    extra["p"] = p;
  } else if (a.observable == "qm") {
    const auto est = nl_q_equals_m(a.L, a.K, a.disorder, a.sweeps, c.master_seed, rule, c.jobs);
    rows.push_back({a.K, est.diff.mean, est.diff.std_error, 0.0});
    extra["m"] = {{"mean", est.m.mean}, {"std_error", est.m.std_error}};
    extra["q"] = {{"mean", est.q.mean}, {"std_error", est.q.std_error}};
  } else {
    const auto Ks = parse_grid(a.K_grid, 0.0, 50.0);
    const auto pts = magnetization_scan(a.L, a.K, Ks, a.disorder, a.sweeps, c.master_seed, c.jobs);
    std::vector<ScanPoint> exact;
    if (a.L <= 3) exact = magnetization_scan_exact(a.L, a.K, Ks);
    for (std::size_t i = 0; i < pts.size(); ++i)
      rows.push_back({pts[i].K, pts[i].sign_correlation.mean, pts[i].sign_correlation.std_error,
                      exact.empty() ? std::nan("") : exact[i].sign_correlation.mean});
    extra["K_p"] = a.K;
  }
  if (c.format == "json") {
    json j = {{"meta", meta_json(c)}, {"observable", a.observable}, {"rows", json::array()}};
    for (const auto& r : rows)
      j["rows"].push_back({{"K", r.K}, {"estimate", r.estimate}, {"std_error", r.se},
                           {"exact_reference", jnum(r.exact)}});
    j["extra"] = extra;
    os << j.dump(2) << "\n";
  } else {
    csv_stamp(os, c);
    os << "# observable: " << a.observable << "\n";
    if (!extra.empty()) os << "# extra: " << extra.dump() << "\n";
    os << "K,estimate,std_error,exact_reference\n";
    for (const auto& r : rows)
      os << num(r.K) << "," << num(r.estimate) << "," << num(r.se) << "," << num(r.exact) << "\n";
  }
  return kOk;
}

json crossings_json(const std::vector<Crossing>& xs) {
  json arr = json::array();
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& x : xs)
    arr.push_back({{"L_small", x.L_small}, {"L_large", x.L_large}, {"p_lo", opt(x.p_lo)},
                   {"p_hi", opt(x.p_hi)}, {"p_cross", opt(x.p_cross)}, {"ci_lo", opt(x.ci_lo)},
                   {"ci_hi", opt(x.ci_hi)}, {"bootstrap_crossed", x.bootstrap_crossed},
                   {"bootstrap_total", x.bootstrap_total}});
  return arr;
}

int run_code(const RunConfig& c, const CodeArgs& a, std::ostream& os) {
  SweepOptions o;
  o.L_list = a.L;
  o.p_list = parse_grid(a.p_grid, 0.0, 0.5 - 1e-12);
  o.trials = a.trials;
  o.matched = a.matched;
  o.K = a.K.value_or(0.0);
  o.seed = c.master_seed;
  o.jobs = c.jobs;
  const auto rows = failure_rate_sweep(o);
  const auto xs = pairwise_crossings(rows, c.master_seed);
  json summary = {{"meta", meta_json(c)}, {"rows", json::array()}, {"crossings", crossings_json(xs)}};
  for (const auto& r : rows)
    summary["rows"].push_back({{"L", r.L}, {"p", r.p}, {"failures", r.failures}, {"trials", r.trials},
                               {"rate", r.rate}, {"stderr", r.stderr_}});
  if (!a.summary_path.empty()) {
    std::ofstream f(a.summary_path);
    if (!f) throw UsageError(kUsage, "cannot write summary to " + a.summary_path);
    f << summary.dump(2) << "\n";
  }
  if (c.format == "json") {
    os << summary.dump(2) << "\n";
  } else {
    csv_stamp(os, c);
    os << "L,p,failures,trials,rate,stderr\n";
    for (const auto& r : rows)
      os << r.L << "," << num(r.p) << "," << r.failures << "," << r.trials << "," << num(r.rate)
         << "," << num(r.stderr_) << "\n";
  }
  return kOk;
}

struct Check {
  std::string identity;
  double lhs, rhs, tol;
  std::string relation = "eq";  // eq: |lhs - rhs| < tol; ge: lhs >= rhs - tol

  bool pass() const {
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) return false;
    return relation == "ge" ? lhs >= rhs - tol : std::abs(lhs - rhs) < tol;
  }
};

std::vector<Coupling> random_couplings(int N, Rng& rng) {
  std::vector<Coupling> cs;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) cs.push_back({i, j, 2.0 * uniform01(rng) - 1.0});
  return cs;
}

int run_anneal(const RunConfig& c, const AnnealArgs& a, std::ostream& os) {
  std::vector<Check> checks;
  json extra = json::object();
  const bool torus = a.lattice == "2x2";
  Schedule sch;
  sch.T = a.T;
  sch.steps = a.steps;

  if (a.suite == "je") {
    for (int k = 0; k < a.instances; ++k) {
      Rng rng = make_rng(c.master_seed, StreamKind::instance, static_cast<std::uint64_t>(k));
      AnnealSpec spec;
      if (torus) {
        spec = torus_anneal_spec(TorusLattice(2), static_cast<std::uint32_t>(rng() & 0xff),
                                 GaugeSuiteParams{a.beta, a.beta2, a.gamma0, 1.0, sch, 0, 1});
      } else {
        spec.N = a.N;
        spec.couplings = random_couplings(a.N, rng);
        spec.fields.resize(static_cast<std::size_t>(a.N));
        for (auto& f : spec.fields) f = uniform01(rng) - 0.5;
        spec.gamma0 = a.gamma0;
        spec.schedule = sch;
      }
      const auto r = jarzynski_check(spec, a.beta);
      checks.push_back({"jarzynski[" + std::to_string(k) + "]", r.lhs, r.rhs, 1e-10});
    }
  } else if (a.suite == "gauge") {
    const TorusLattice lattice(2);
    const GaugeSuiteParams gp{a.beta, a.beta2, a.gamma0, 1.0, sch, 0, 1};
    const auto rep = gauge_identity_suite(lattice, gp, c.jobs);
    for (const auto& ch : rep.checks) checks.push_back({ch.identity, ch.lhs, ch.rhs, 1e-8});
    extra["correlation_excluded"] = rep.correlation_excluded;
    extra["configurations"] = rep.configurations;
    if (a.beta > 0.0) {
      const auto kl = kl_bound_check(lattice, gp, c.jobs);
      checks.push_back({"marginal_normalisation", kl.marginal_sum, 1.0, 1e-10});
      checks.push_back({"work_above_tight_bound", kl.work_avg, kl.bound_tight, 1e-10, "ge"});
      checks.push_back({"tight_above_loose_bound", kl.bound_tight, kl.bound_loose, 1e-12, "ge"});
      extra["kl"] = {{"work_avg", kl.work_avg}, {"bound_loose", kl.bound_loose},
                     {"bound_tight", kl.bound_tight}, {"D", kl.D}};
    }
  } else if (a.suite == "hq") {
    Rng rng = make_rng(c.master_seed, StreamKind::instance, 0);
    const auto cs = random_couplings(a.N, rng);
    const auto m = MasterSystem::from_couplings(a.N, cs);
    Eigen::SelfAdjointEigenSolver<DenseHermitian> es(build_hq(m, a.beta));
    checks.push_back({"ground_energy", es.eigenvalues()[0], 0.0, 1e-10});
    checks.push_back({"spectrum_nonnegative", es.eigenvalues().minCoeff(), 0.0, 1e-10, "ge"});
    const Vector<double> g = es.eigenvectors().col(0);
    const Vector<double> gibbs = (-a.beta * m.h0_diag.array()).exp();
    double worst = 0.0;
    for (int i = 0; i < a.N; ++i)
      for (int j = i + 1; j < a.N; ++j) {
        double q = 0.0, t = 0.0;
        for (int s = 0; s < m.dim(); ++s) {
          q += g[s] * g[s] * spin_z(s, i) * spin_z(s, j);
          t += gibbs[s] * spin_z(s, i) * spin_z(s, j);
        }
        worst = std::max(worst, std::abs(q - t / gibbs.sum()));
      }
    checks.push_back({"ground_state_correlations", worst, 0.0, 1e-10});
    Eigen::SelfAdjointEigenSolver<DenseHermitian> sg(build_hq_spin_glass(a.N, cs, a.beta));
    checks.push_back({"spin_glass_form_ground_energy", sg.eigenvalues()[0], 0.0, 1e-10});
  } else if (a.suite == "cje") {
    Rng rng = make_rng(c.master_seed, StreamKind::instance, 0);
    const auto m = MasterSystem::from_couplings(a.N, random_couplings(a.N, rng));
    std::vector<double> betas;
    for (int k = 0; k <= a.steps; ++k) betas.push_back(a.beta * k / a.steps);
    const auto r = classical_jarzynski(m, betas, a.T / a.steps);
    checks.push_back({"classical_jarzynski", r.lhs, r.rhs, 1e-10});
  } else if (a.suite == "qja") {
    Rng rng = make_rng(c.master_seed, StreamKind::instance, 0);
    const auto m = MasterSystem::from_couplings(a.N, random_couplings(a.N, rng));
    const auto r = qja_run(m, a.ancillas, a.beta / a.ancillas, 0.0, a.dt);
    checks.push_back({"gibbs_proportionality", r.proportionality_error, 0.0, 1e-8});
    checks.push_back({"ground_overlap", r.min_ground_overlap, 1.0, 1e-8});
    extra["success_probability"] = r.success_probability;
  } else {  // gap
    Rng rng = make_rng(c.master_seed, StreamKind::instance, 0);
    AnnealSpec spec;
    spec.N = a.N;
    spec.couplings = random_couplings(a.N, rng);
    spec.gamma0 = a.gamma0;
    spec.schedule = sch;
    const auto g = min_gap(spec, 64);
    extra["gap"] = {{"delta_min", g.delta_min}, {"t_at_min", g.t_at_min},
                    {"T_adiabatic", jnum(g.T_adiabatic)}, {"degenerate", g.degenerate}};
  }

  bool all = true;
  json j = {{"meta", meta_json(c)}, {"suite", a.suite}, {"checks", json::array()}};
  for (const auto& ch : checks) {
    all = all && ch.pass();
    j["checks"].push_back({{"identity", ch.identity}, {"lhs", jnum(ch.lhs)}, {"rhs", jnum(ch.rhs)},
                           {"abs_error", jnum(std::abs(ch.lhs - ch.rhs))}, {"tolerance", ch.tol},
                           {"relation", ch.relation}, {"pass", ch.pass()}});
  }
  j["extra"] = extra;
  j["all_pass"] = all;
  if (c.format == "csv") {
    csv_stamp(os, c);
    os << "identity,lhs,rhs,abs_error,pass\n";
    for (const auto& ch : checks)
      os << ch.identity << "," << num(ch.lhs) << "," << num(ch.rhs) << ","
         << num(std::abs(ch.lhs - ch.rhs)) << "," << (ch.pass() ? 1 : 0) << "\n";
  } else {
    os << j.dump(2) << "\n";
  }
  return all ? kOk : kIdentityFailure;
}

int classify(const CLI::ParseError& e) {
  if (dynamic_cast<const CLI::RequiredError*>(&e)) return kMissingRequired;
  if (dynamic_cast<const CLI::ValidationError*>(&e)) return kOutOfRange;
  return kUsage;
}

}  // namespace

std::string version() { return GLASSBRIDGE_VERSION; }

ParseOutcome parse_args(int argc, const char* const* argv, const char* env_seed) {
  CLI::App app{"Spin-glass, surface-code and annealing identity laboratory", "glassbridge"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", version());

  RunConfig cfg;
  app.add_option("--seed", cfg.master_seed, "Master seed (GLASSBRIDGE_SEED overrides)");
  app.add_option("-o,--output", cfg.output_path, "Write output to this file instead of stdout");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads (0 = hardware concurrency)")->check(CLI::Range(0u, 1024u));

  MeanfieldArgs mf;
  auto* s_mf = app.add_subcommand("meanfield", "Mean-field magnetization over a beta grid");
  s_mf->add_option("--J", mf.J, "Coupling")->check(CLI::PositiveNumber);
  s_mf->add_option("--z", mf.z, "Coordination number")->check(CLI::Range(1, 1000000));
  s_mf->add_option("--beta-grid", mf.beta_grid, "start:stop:step");

  DualityArgs du;
  bool du_json = false;
  auto* s_du = app.add_subcommand("duality", "Duality critical points and phase boundary");
  s_du->add_option("--cluster", du.s, "Cluster level")->check(CLI::Range(0, 2));
  s_du->add_flag("--boundary-scan", du.boundary_scan, "Emit the phase boundary K_c(p)");
  s_du->add_option("--scan-points", du.scan_points, "Points in the boundary scan")->check(CLI::Range(2, 1000));
  s_du->add_flag("--json", du_json, "Same as --format json");

  McArgs mc;
  double mc_p = -1.0;
  auto* s_mc = app.add_subcommand("mc", "Monte Carlo on the +-J torus");
  s_mc->add_option("--L", mc.L, "Linear size")->required()->check(CLI::Range(2, 256));
  s_mc->add_option("--K", mc.K, "Thermal coupling (disorder law K_p for scans)")->required()->check(CLI::Range(0.0, 50.0));
  auto* nish = s_mc->add_flag("--nishimori", mc.nishimori, "Draw disorder on the Nishimori line");
  s_mc->add_option("--p", mc_p, "Negative-bond density")->check(CLI::Range(0.0, 1.0))->excludes(nish);
  s_mc->add_option("--disorder", mc.disorder, "Disorder samples")->check(CLI::Range(1, 1000000));
  s_mc->add_option("--sweeps", mc.sweeps, "Sweeps per sample")->check(CLI::Range(2, 100000000));
  s_mc->add_option("--observable", mc.observable)->check(CLI::IsMember({"energy", "qm", "scan"}));
  s_mc->add_option("--rule", mc.rule)->check(CLI::IsMember({"metropolis", "heat-bath"}));
  s_mc->add_option("--K-grid", mc.K_grid, "Scan grid start:stop:step");

  CodeArgs co;
  double co_K = -1.0;
  std::vector<int> co_L;
  auto* s_co = app.add_subcommand("code", "Toric-code failure rates under optimal decoding");
  s_co->add_option("--L", co_L, "Linear sizes (comma separated)")->delimiter(',')->check(CLI::Range(2, 4));
  s_co->add_option("--p-grid", co.p_grid, "start:stop:step");
  s_co->add_option("--trials", co.trials, "Trials per point")->check(CLI::Range(1L, 100000000L));
  auto* matched = s_co->add_flag("--matched", "Decode with K matched to p (default)");
  auto* kopt = s_co->add_option("--K", co_K, "Fixed decoder coupling")->check(CLI::Range(0.0, 50.0));
  matched->excludes(kopt);
  s_co->add_option("--summary", co.summary_path, "Write the JSON summary here");

  AnnealArgs an;
  auto* s_an = app.add_subcommand("anneal", "Exact annealing and Jarzynski identities");
  auto* nopt = s_an->add_option("--N", an.N, "Spin count")->check(CLI::Range(1, 12));
  auto* lopt = s_an->add_option("--lattice", an.lattice, "2x2 torus")->check(CLI::IsMember({"2x2"}));
  nopt->excludes(lopt);
  s_an->add_option("--gamma0", an.gamma0)->check(CLI::Range(0.0, 100.0));
  s_an->add_option("--beta", an.beta)->check(CLI::Range(0.0, 20.0));
  s_an->add_option("--beta2", an.beta2)->check(CLI::Range(0.0, 20.0));
  s_an->add_option("--T", an.T)->check(CLI::Range(0.0, 1000.0));
  s_an->add_option("--steps", an.steps)->check(CLI::Range(1, 1000000));
  s_an->add_option("--suite", an.suite)->required()->check(CLI::IsMember({"je", "gauge", "hq", "cje", "qja", "gap"}));
  s_an->add_option("--instances", an.instances)->check(CLI::Range(1, 10000));
  s_an->add_option("--ancillas", an.ancillas)->check(CLI::Range(1, 12));
  s_an->add_option("--dt", an.dt)->check(CLI::Range(0.0, 1000.0));

  ParseOutcome out;
  try {
    // CLI11 reports a stray first word as a missing subcommand; it is a usage error.
    if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr)
      throw UsageError(kUsage, std::string("unknown subcommand '") + argv[1] + "'");
    app.parse(argc, argv);
    if (env_seed != nullptr) {
      char* end = nullptr;
      errno = 0;
      const auto v = std::strtoull(env_seed, &end, 10);
      if (*env_seed == '\0' || *end != '\0' || errno != 0)
        throw UsageError(kUsage, "GLASSBRIDGE_SEED must be an unsigned integer");
      cfg.master_seed = v;
    }
    if (s_mf->parsed()) {
      cfg.subcommand = "meanfield";
      parse_grid(mf.beta_grid, 0.0, 1e6);
      cfg.params = mf;
    } else if (s_du->parsed()) {
      cfg.subcommand = "duality";
      if (du_json) cfg.format = "json";
      cfg.params = du;
    } else if (s_mc->parsed()) {
      cfg.subcommand = "mc";
      if (mc_p >= 0.0) mc.p = mc_p;
      if (mc.observable == "energy" && !mc.nishimori && !mc.p)
        throw UsageError(kMissingRequired, "mc energy needs --nishimori or --p");
      if (mc.observable != "energy" && !mc.nishimori)
        throw UsageError(kMissingRequired, "mc --observable qm/scan needs --nishimori");
      if (mc.nishimori && !(mc.K > 0.0)) throw UsageError(kOutOfRange, "Nishimori line needs K > 0");
      if (mc.observable == "scan") {
        if (mc.K_grid.empty()) throw UsageError(kMissingRequired, "mc --observable scan needs --K-grid");
        parse_grid(mc.K_grid, 0.0, 50.0);
      }
      cfg.params = mc;
    } else if (s_co->parsed()) {
      cfg.subcommand = "code";
      if (!co_L.empty()) co.L = co_L;
      if (co_K >= 0.0) {
        co.matched = false;
        co.K = co_K;
      }
      parse_grid(co.p_grid, 0.0, 0.5 - 1e-12);
      cfg.params = co;
    } else {
      cfg.subcommand = "anneal";
      const bool torus = an.lattice == "2x2";
      if (an.suite == "gauge" && !torus) throw UsageError(kOutOfRange, "gauge suite runs on --lattice 2x2 only");
      if (torus && an.suite != "gauge" && an.suite != "je")
        throw UsageError(kOutOfRange, "--lattice 2x2 applies to the je and gauge suites");
      if ((an.suite == "hq" || an.suite == "cje") && an.N > kMaxMasterSpins)
        throw UsageError(kOutOfRange, "classical-quantum suites need N <= 8");
      if (an.suite == "qja" && (an.N > 3 || an.N + an.ancillas > kMaxQjaDimensionBits))
        throw UsageError(kOutOfRange, "qja needs N <= 3 and N + ancillas <= 13");
      if (an.suite == "gap" && an.N < 1) throw UsageError(kOutOfRange, "gap needs N >= 1");
      if (an.suite == "gauge") an.N = 4;
      cfg.params = an;
      if (cfg.format == "csv" && !app.get_option("--format")->count()) cfg.format = "json";
    }
    out.config = cfg;
  } catch (const CLI::CallForHelp&) {
    out.message = app.help();
    out.exit_code = kOk;
  } catch (const CLI::CallForAllHelp&) {
    out.message = app.help("", CLI::AppFormatMode::All);
    out.exit_code = kOk;
  } catch (const CLI::CallForVersion&) {
    out.message = version() + "\n";
    out.exit_code = kOk;
  } catch (const CLI::ParseError& e) {
    out.exit_code = classify(e);
    out.message = e.what();
  } catch (const UsageError& e) {
    out.exit_code = e.code;
    out.message = e.what();
  }
  return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buf;
  int code = kOk;
  try {
    code = std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, MeanfieldArgs>) return run_meanfield(config, a, buf);
          if constexpr (std::is_same_v<T, DualityArgs>) return run_duality(config, a, buf);
          if constexpr (std::is_same_v<T, McArgs>) return run_mc(config, a, buf);
          if constexpr (std::is_same_v<T, CodeArgs>) return run_code(config, a, buf);
          if constexpr (std::is_same_v<T, AnnealArgs>) return run_anneal(config, a, buf);
        },
        config.params);
  } catch (const UsageError& e) {
    err << "glassbridge: " << e.what() << "\n";
    return e.code;
  } catch (const std::domain_error& e) {
    err << "glassbridge: " << e.what() << "\n";
    return kOutOfRange;
  } catch (const std::invalid_argument& e) {
    err << "glassbridge: " << e.what() << "\n";
    return kOutOfRange;
  }
  if (config.output_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(config.output_path);
    if (!f) {
      err << "glassbridge: cannot write " << config.output_path << "\n";
      return kUsage;
    }
    f << buf.str();
  }
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto parsed = parse_args(argc, argv, std::getenv("GLASSBRIDGE_SEED"));
  if (!parsed.config) {
    (parsed.exit_code == kOk ? out : err) << parsed.message << (parsed.exit_code == kOk ? "" : "\n");
    return parsed.exit_code;
  }
  return run(*parsed.config, out, err);
}

}  // namespace glassbridge::cli
