// omdsim command-line front end. Every subcommand reads an optional flat
// key=value configuration file; explicitly given flags override it. All of
// the actual work lives in the experiment layer so tests can drive the same
// code paths without spawning processes.
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "omdsim/experiment.hpp"

namespace {

// A flag that, when the user actually passed it, is replayed onto the
// configuration as key=value — one validation path for files and flags.
struct PassThrough {
  CLI::Option* opt = nullptr;
  std::string key;
  std::shared_ptr<std::string> value;
};

PassThrough add_value(CLI::App* cmd, const std::string& flag,
                      const std::string& key, const std::string& help) {
  auto value = std::make_shared<std::string>();
  CLI::Option* opt = cmd->add_option(flag, *value, help);
  return {opt, key, value};
}

PassThrough add_switch(CLI::App* cmd, const std::string& flag,
                       const std::string& key, const std::string& help) {
  auto value = std::make_shared<std::string>("1");
  CLI::Option* opt = cmd->add_flag(flag, help);
  return {opt, key, value};
}

struct CommandSpec {
  std::shared_ptr<std::string> config_path = std::make_shared<std::string>();
  std::vector<PassThrough> options;

  void add_config(CLI::App* cmd) {
    cmd->add_option("--config", *config_path,
                    "flat key=value configuration file; flags override it");
  }

  omd::ExperimentConfig build() const {
    omd::ExperimentConfig cfg;
    if (!config_path->empty()) {
      std::ifstream f(*config_path);
      if (!f)
        throw omd::ConfigError("cannot read config file '" + *config_path + "'");
      cfg = omd::parse_experiment_config(f);
    }
    for (const PassThrough& p : options)
      if (p.opt->count() > 0) omd::apply_config_entry(cfg, p.key, *p.value);
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app(
      "omdsim: optimistic gradient dynamics, equilibrium metrics, and exact\n"
      "CCE linear programs for bimatrix and sequence-form games.");
  app.require_subcommand(1);
  app.footer(
      "output schemas (stable):\n"
      "  trace CSV (run):     t,reg_x,reg_y,nash_gap,cce_gap,sigma_x,sigma_y,"
      "step_norm_x,step_norm_y\n"
      "                       preceded by '# key=value' lines recording the "
      "run configuration\n"
      "  report CSV (metrics): checker,at,slack,violated\n"
      "  contour CSV (lp):    w_x,w_y,eps_star   (nan = pair not achievable)\n"
      "  summary CSV (bench): game,status,eta,initial_nash_gap,final_nash_gap,"
      "cce_gap,strong_eps,seconds\n"
      "exit codes: 0 ok, 1 runtime failure, 2 configuration error");

  // run
  auto* run = app.add_subcommand(
      "run", "run the optimistic dynamics and write a trace CSV");
  CommandSpec run_spec;
  run_spec.add_config(run);
  run_spec.options = {
      add_value(run, "--game", "game",
                "built-in game name or path to a game file (see 'games list')"),
      add_value(run, "--eta", "eta",
                "step size, or 'auto' = 1/(2 max{||A||2, ||B||2})"),
      add_value(run, "--horizon", "horizon", "number of iterations (default 1000)"),
      add_value(run, "--init", "init",
                "uniform | vertex:i,j | random:seed (battleship defaults to "
                "vertex:1,1)"),
      add_switch(run, "--normalized", "normalized",
                 "scale utilities to norm <= 1 before running"),
      add_value(run, "--seeds", "seeds",
                "comma-separated seeds; with init random:* writes one trace per seed"),
      add_value(run, "--out", "out", "trace CSV path (default trace.csv)"),
  };

  // metrics
  auto* metrics = app.add_subcommand(
      "metrics", "replay a trace and check the trajectory inequalities");
  CommandSpec metrics_spec;
  metrics_spec.add_config(metrics);
  metrics_spec.options = {
      add_value(metrics, "--trace", "trace", "trace CSV written by 'run'"),
      add_value(metrics, "--game", "game",
                "game override; default is the trace header's game"),
      add_switch(metrics, "--normalized", "normalized",
                 "with --game: interpret the trace on normalized utilities"),
      add_value(metrics, "--check,--checks", "checks",
                "comma-separated checkers: rvu,stability,balanced,dichotomy "
                "(default all)"),
      add_value(metrics, "--eps", "eps",
                "accuracy parameter of the dichotomy checker (default 0.2)"),
      add_value(metrics, "--out", "out",
                "report CSV path (default: print to stdout)"),
  };

  // plot
  auto* plot = app.add_subcommand(
      "plot", "render a self-contained SVG line chart from a trace CSV");
  CommandSpec plot_spec;
  plot_spec.add_config(plot);
  plot_spec.options = {
      add_value(plot, "--trace", "trace", "trace CSV written by 'run'"),
      add_value(plot, "--kind", "kind",
                "regret (cumulative regrets) | gap (nash_gap and cce_gap)"),
      add_value(plot, "--out", "out",
                "SVG path (default: <trace>-<kind>.svg)"),
  };

  // lp strongest | contour | welfare
  auto* lp = app.add_subcommand(
      "lp", "exact CCE linear programs (normal-form games only)");
  lp->require_subcommand(1);
  auto* strongest = lp->add_subcommand(
      "strongest", "maximize the incentive margin eps over all CCEs");
  CommandSpec strongest_spec;
  strongest_spec.add_config(strongest);
  strongest_spec.options = {
      add_value(strongest, "--game", "game", "built-in name or game file"),
      add_switch(strongest, "--normalized", "normalized",
                 "solve on normalized utilities"),
  };
  auto* contour = lp->add_subcommand(
      "contour",
      "sweep achievable utility pairs (w_x, w_y) and record the best eps");
  CommandSpec contour_spec;
  contour_spec.add_config(contour);
  contour_spec.options = {
      add_value(contour, "--game", "game", "built-in name or game file"),
      add_switch(contour, "--normalized", "normalized",
                 "solve on normalized utilities"),
      add_value(contour, "--grid", "grid", "points per axis (default 25)"),
      add_switch(contour, "--at-least", "at_least",
                 "pin utilities from below (>= w) instead of exactly"),
      add_value(contour, "--out", "out", "contour CSV path (default contour.csv)"),
  };
  auto* welfare = lp->add_subcommand(
      "welfare", "maximize expected welfare over all CCEs");
  CommandSpec welfare_spec;
  welfare_spec.add_config(welfare);
  welfare_spec.options = {
      add_value(welfare, "--game", "game", "built-in name or game file"),
      add_switch(welfare, "--normalized", "normalized",
                 "solve on normalized utilities"),
  };

  // bench
  auto* bench = app.add_subcommand(
      "bench", "run the benchmark suite at --eta auto and summarize");
  CommandSpec bench_spec;
  bench_spec.add_config(bench);
  bench_spec.options = {
      add_value(bench, "--games", "games",
                "comma-separated game names (default: all four benchmarks)"),
      add_value(bench, "--eta", "eta", "step size or 'auto' (default auto)"),
      add_value(bench, "--horizon", "horizon",
                "iterations per game (default 5000)"),
      add_value(bench, "--init", "init", "override the per-game default init"),
      add_switch(bench, "--normalized", "normalized",
                 "run on normalized utilities"),
      add_value(bench, "--out", "out",
                "summary CSV path (default: print to stdout)"),
  };

  // games list
  auto* games = app.add_subcommand("games", "game catalogue");
  games->require_subcommand(1);
  auto* games_list =
      games->add_subcommand("list", "print the built-in games and name forms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return omd::cmd_run(run_spec.build(), std::cout, std::cerr);
    if (metrics->parsed())
      return omd::cmd_metrics(metrics_spec.build(), std::cout, std::cerr);
    if (plot->parsed())
      return omd::cmd_plot(plot_spec.build(), std::cout, std::cerr);
    if (lp->parsed()) {
      if (strongest->parsed())
        return omd::cmd_lp("strongest", strongest_spec.build(), std::cout,
                           std::cerr);
      if (contour->parsed())
        return omd::cmd_lp("contour", contour_spec.build(), std::cout,
                           std::cerr);
      if (welfare->parsed())
        return omd::cmd_lp("welfare", welfare_spec.build(), std::cout,
                           std::cerr);
    }
    if (bench->parsed())
      return omd::cmd_bench(bench_spec.build(), std::cout, std::cerr);
    if (games->parsed() && games_list->parsed())
      return omd::cmd_games_list(std::cout, std::cerr);
  } catch (const omd::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
