// Command layer shared by the CLI binary and the test suite: configuration
// parsing, game-name resolution, and the run / metrics / plot / lp / bench
// commands. Commands report through the given streams and return the
// process exit code instead of touching global state, so tests can drive
// them directly.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "omdsim/dynamics.hpp"
#include "omdsim/game.hpp"

namespace omd {

// Malformed configuration: unknown key, unusable value, missing required
// input. Mapped to exit code 2; messages always name the offending key.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string game;              // built-in name or path of a game file
  std::string eta = "auto";      // step size, or "auto" = 1/(2 max spectral norm)
  std::optional<int> horizon;    // iterations; default 1000 (bench: 5000)
  std::optional<std::string> init;  // uniform | vertex:i,j | random:seed
  bool normalized = false;       // scale utilities to norm <= 1 before running
  std::vector<std::uint64_t> seeds;  // random-init multi-run: one trace per seed
  std::string out;               // output path; empty = per-command default
  std::string trace;             // input trace CSV (metrics, plot)
  std::string kind = "regret";   // plot kind: regret | gap
  std::vector<std::string> checks = {"rvu", "stability", "balanced",
                                     "dichotomy"};
  double eps = 0.2;              // accuracy parameter of the dichotomy checker
  int grid = 25;                 // contour resolution per payoff axis
  bool at_least = false;         // contour pins utilities from below, not exactly
  std::vector<std::string> bench_games;  // empty = all four benchmarks
};

// One key=value assignment, from a config file line or a flag. Unknown keys
// and unusable values raise ConfigError.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);

// Flat key=value text; '#' comments and blank lines are ignored.
ExperimentConfig parse_experiment_config(std::istream& in);

// example-3x3, example-3x3-zerosum, the four benchmark games,
// random-<N>x<M>-s<SEED>, or a path to a game file.
BimatrixGame load_named_game(const std::string& name);
std::vector<std::string> builtin_game_names();

// The default step-size rule, 1 / (2 max{spectral norms of A and B}).
double auto_eta(const BimatrixGame& game);

// Resolves eta, horizon, and init against a loaded game. Battleship
// defaults to the deterministic vertex pair (1,1); everything else starts
// at the regularizer minimizer.
RunConfig make_run_config(const ExperimentConfig& cfg, const BimatrixGame& game,
                          const std::string& game_name, int default_horizon);

int cmd_run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_metrics(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_plot(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_lp(const std::string& op, const ExperimentConfig& cfg, std::ostream& out,
           std::ostream& err);
int cmd_bench(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_games_list(std::ostream& out, std::ostream& err);

}  // namespace omd
