#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace glassbridge::cli {

enum ExitCode : int {
  kOk = 0,
  kIdentityFailure = 1,
  kUsage = 2,  // unknown flag, malformed value, conflicting flags
  kOutOfRange = 3,
  kMissingRequired = 4,
};

struct MeanfieldArgs {
  double J = 1.0;
  int z = 6;
  std::string beta_grid = "0:1:0.01";
};

struct DualityArgs {
  int s = 0;
  bool boundary_scan = false;
  int scan_points = 21;
};

struct McArgs {
  int L = 8;
  double K = 0.0;
  bool nishimori = false;
  std::optional<double> p;
  int disorder = 16;
  int sweeps = 2000;
  std::string observable = "energy";  // energy | qm | scan
  std::string rule = "metropolis";
  std::string K_grid;                 // scan only: start:stop:step
};

struct CodeArgs {
  std::vector<int> L{2, 3};
  std::string p_grid = "0.02:0.2:0.02";
  long trials = 1000;
  bool matched = true;
  std::optional<double> K;
  std::string summary_path;
};

struct AnnealArgs {
  int N = 3;
  std::string lattice;  // "" or "2x2"
  double gamma0 = 1.0;
  double beta = 0.5;
  double beta2 = 0.3;
  double T = 1.0;
  int steps = 64;
  std::string suite = "je";
  int instances = 1;
  int ancillas = 8;
  double dt = 1.0;
};

struct RunConfig {
  std::string subcommand;
  std::variant<MeanfieldArgs, DualityArgs, McArgs, CodeArgs, AnnealArgs> params;
  std::uint64_t master_seed = 0;
  std::string output_path;
  std::string format = "csv";
  unsigned jobs = 0;
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kOk;
  std::string message;  // help text or error
};

// env_seed, when non-null, overrides --seed.
ParseOutcome parse_args(int argc, const char* const* argv, const char* env_seed);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args with GLASSBRIDGE_SEED from the environment, then run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace glassbridge::cli
