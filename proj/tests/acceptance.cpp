// Acceptance gate: ten end-to-end checks over the whole stack, printed one
// line each so a failing build names exactly what broke. Tolerances and time
// budgets are pinned here on purpose — loosening them is a code change that
// shows up in review, not a flag.
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "omdsim/benchmark_games.hpp"
#include "omdsim/cce_lp.hpp"
#include "omdsim/csv.hpp"
#include "omdsim/dynamics.hpp"
#include "omdsim/experiment.hpp"
#include "omdsim/game.hpp"
#include "omdsim/lp.hpp"
#include "omdsim/metrics.hpp"
#include "omdsim/polytope.hpp"
#include "omdsim/rng.hpp"
#include "oracles.hpp"

using namespace omd;
namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A criterion body throws CriterionFailed to report a FAIL with detail; a
// normal return is a PASS whose detail is the returned string.
struct CriterionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& detail) {
  if (!ok) throw CriterionFailed(detail);
}

std::string fmt(double v) { return format_double(v); }

// Runs recorded by criteria 4-6 so criterion 7 can audit every simplex run
// the gate produced.
struct SimplexRun {
  BimatrixGame game;
  Trace trace;
};

struct Gate {
  int failures = 0;
  std::vector<SimplexRun> simplex_runs;

  // budget_seconds <= 0 means the criterion has no pinned runtime.
  void criterion(int n, double budget_seconds,
                 const std::function<std::string()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
      detail = body();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (ok && budget_seconds > 0.0 && secs >= budget_seconds) {
      ok = false;
      detail = "over time budget of " + fmt(budget_seconds) + "s: " + detail;
    }
    failures += ok ? 0 : 1;
    std::ostringstream line;
    line << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " ("
         << std::fixed << std::setprecision(3) << secs << "s) — " << detail;
    std::cout << line.str() << "\n" << std::flush;
  }
};

Vec average_iterates(const std::vector<Vec>& xs) {
  // xs[0] is the starting point, which the average excludes.
  Vec avg(xs[1].size(), 0.0);
  for (std::size_t t = 1; t < xs.size(); ++t)
    for (std::size_t i = 0; i < avg.size(); ++i) avg[i] += xs[t][i];
  for (double& v : avg) v /= double(xs.size() - 1);
  return avg;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  require(bool(f), "cannot read back " + p.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// The same generator as the unit suite's random-LP test: box rows keep every
// program bounded, an optional equality or extra row makes some infeasible.
LinearProgram random_lp(SplitMix64& rng) {
  const int n = 2 + int(rng.next_below(5));
  LinearProgram lp;
  lp.objective.resize(n);
  for (double& c : lp.objective) c = rng.uniform(-1.0, 1.0);
  lp.var_lower.assign(n, 0.0);
  if (rng.next_below(2) == 0) lp.var_lower[rng.next_below(n)] = -kInf;
  for (int j = 0; j < n; ++j) {
    Vec row(n, 0.0);
    row[j] = 1.0;
    lp.ub_lhs.push_back(row);
    lp.ub_rhs.push_back(rng.uniform(0.5, 2.0));
    if (lp.var_lower[j] == -kInf) {
      row[j] = -1.0;
      lp.ub_lhs.push_back(row);
      lp.ub_rhs.push_back(rng.uniform(0.5, 2.0));
    }
  }
  if (rng.next_below(2) == 0) {
    Vec row(n);
    for (double& a : row) a = rng.uniform(-1.0, 1.0);
    lp.eq_lhs.push_back(row);
    lp.eq_rhs.push_back(rng.uniform(-0.5, 0.5));
  }
  if (rng.next_below(2) == 0) {
    Vec row(n);
    for (double& a : row) a = rng.uniform(-1.0, 1.0);
    lp.ub_lhs.push_back(row);
    lp.ub_rhs.push_back(rng.uniform(-0.2, 1.0));
  }
  return lp;
}

}  // namespace

int main() {
  Gate gate;

  // 1. The example game's unique Nash equilibrium, checked exactly.
  gate.criterion(1, 1e-3, [&] {
    const BimatrixGame g = example_game();
    const Vec x = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    const Vec y = {0.25, 0.5, 0.25};
    const double gap = nash_gap(g, x, y);
    const double welfare = g.payoff_x(x, y) + g.payoff_y(x, y);
    require(gap <= 1e-12, "NE gap " + fmt(gap) + " exceeds 1e-12");
    require(std::fabs(welfare - 7.0 / 12.0) <= 1e-12,
            "NE welfare " + fmt(welfare) + " is not 7/12");
    return "NE gap " + fmt(gap) + ", welfare " + fmt(welfare) + " = 7/12";
  });

  // 2. Strongest CCE incentive margin of the example game.
  gate.criterion(2, 1.0, [&] {
    const CceSolution s = strongest_cce(example_game());
    require(std::fabs(s.eps_star - 0.2083) <= 1e-4,
            "eps* " + fmt(s.eps_star) + " not within 1e-4 of 0.2083");
    return "eps* = " + fmt(s.eps_star);
  });

  // 3. Max-welfare CCE of the example game reaches full welfare.
  gate.criterion(3, 1.0, [&] {
    const WelfareSolution w = max_welfare_cce(example_game());
    require(std::fabs(w.welfare - 1.0) <= 1e-7,
            "welfare " + fmt(w.welfare) + " not within 1e-7 of 1.0");
    return "welfare = " + fmt(w.welfare);
  });

  // 4. The golden dynamics run: eta = 0.1, T = 1000, uniform start. Both
  // regrets go (and stay) negative, and the average play matches the known
  // strong margin, welfare, and joint distribution.
  gate.criterion(4, 1.0, [&] {
    const BimatrixGame g = example_game();
    RunConfig rc;
    rc.eta = 0.1;
    rc.horizon = 1000;
    const Trace trace = run(g, rc);
    const RegretSeries reg = regret(trace, g);
    for (int t = 100; t <= rc.horizon; ++t)
      require(reg.reg_x[t] < 0.0 && reg.reg_y[t] < 0.0,
              "regret not negative at t=" + std::to_string(t));
    const GapReport rep = cce_report(trace, g);
    require(std::fabs(rep.strong_eps - 0.1525) <= 0.01,
            "strong_eps " + fmt(rep.strong_eps) + " not within 0.01 of 0.1525");
    require(std::fabs(rep.welfare_avg - 0.9819) <= 0.01,
            "welfare_avg " + fmt(rep.welfare_avg) + " not within 0.01 of 0.9819");
    const Matrix mu = avg_correlated_play(trace);
    const double want[3][3] = {{0.1594, 0.1778, 0.0048},
                               {0.0029, 0.1614, 0.1607},
                               {0.1642, 0.0075, 0.1613}};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        worst = std::max(worst, std::fabs(mu(i, j) - want[i][j]));
    require(worst <= 2e-3,
            "avg joint distribution off by " + fmt(worst) + " (> 2e-3)");
    gate.simplex_runs.push_back({g, trace});
    return "regrets negative for t >= 100, strong_eps = " + fmt(rep.strong_eps) +
           ", welfare_avg = " + fmt(rep.welfare_avg) + ", mu err " + fmt(worst);
  });

  // 5. Zero-sum counterpart: average play approaches the equilibrium and the
  // near-stationarity detector fires with a verified certificate.
  gate.criterion(5, 1.0, [&] {
    const BimatrixGame g = normalize(zero_sum_counterpart(example_game())).first;
    RunConfig rc;
    rc.eta = 0.1;
    rc.horizon = 1000;
    const Trace trace = run(g, rc);
    const double gap =
        nash_gap(g, average_iterates(trace.x), average_iterates(trace.y));
    require(gap <= 0.05, "average-play NE gap " + fmt(gap) + " exceeds 0.05");
    const auto det = detect_ne(trace, g, 0.2, rc.eta, 1.0,
                               constants(g.polytope_x()), constants(g.polytope_y()));
    require(det.has_value(), "near-stationarity detector never fired");
    require(det->certificate_ok,
            "detector certificate broken: verified gap " +
                fmt(det->verified_nash_gap) + " vs bound " +
                fmt(det->certified_bound));
    gate.simplex_runs.push_back({g, trace});
    return "average-play NE gap " + fmt(gap) + ", detector fired at t=" +
           std::to_string(det->t) + " (verified gap " +
           fmt(det->verified_nash_gap) + " <= bound " +
           fmt(det->certified_bound) + ")";
  });

  // 6. Trajectory inequalities hold across a seeded sweep: regret bound,
  // step-size stability, and the balanced path-length relation.
  gate.criterion(6, 30.0, [&] {
    int runs = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const BimatrixGame g = random_game(3, 3, seed);
      for (double eta : {0.01, 0.05, 0.1}) {
        RunConfig rc;
        rc.eta = eta;
        rc.horizon = 500;
        const Trace trace = run(g, rc);
        const std::string at = g.name() + " eta=" + fmt(eta);
        require(!check_rvu(trace, g).violated, "rvu violated on " + at);
        require(!check_stability(trace, eta, 1.0).violated,
                "stability violated on " + at);
        require(!check_balanced(trace, g).violated, "balanced violated on " + at);
        gate.simplex_runs.push_back({g, trace});
        ++runs;
      }
    }
    return std::to_string(runs) + " runs, every inequality clean";
  });

  // 7. Folklore identity: the regret-derived CCE gap equals the gap measured
  // directly on the averaged joint distribution, on every simplex run above.
  gate.criterion(7, 0.0, [&] {
    require(!gate.simplex_runs.empty(), "no runs recorded by criteria 4-6");
    double worst = 0.0;
    for (const SimplexRun& sr : gate.simplex_runs) {
      const GapReport rep = cce_report(sr.trace, sr.game);
      require(rep.cce_gap_mu.has_value(), "joint-distribution gap missing");
      worst = std::max(worst, std::fabs(rep.cce_gap - *rep.cce_gap_mu));
    }
    require(worst <= 1e-9, "identity off by " + fmt(worst) + " (> 1e-9)");
    return std::to_string(gate.simplex_runs.size()) +
           " runs, worst discrepancy " + fmt(worst);
  });

  // 8. Implementations match their independent oracles: both projections,
  // treeplex best response, and the LP solver.
  gate.criterion(8, 60.0, [&] {
    SplitMix64 rng(2024);
    double worst_simplex = 0.0;
    for (int i = 0; i < 100; ++i) {
      Vec v(3);
      for (double& c : v) c = rng.uniform(-2.0, 2.0);
      const Vec got = project_simplex(v);
      const Vec want = oracle::grid_project_simplex3(v);
      double d2 = 0.0;
      for (int k = 0; k < 3; ++k) d2 += (got[k] - want[k]) * (got[k] - want[k]);
      worst_simplex = std::max(worst_simplex, std::sqrt(d2));
    }
    require(worst_simplex <= 1e-6,
            "simplex projection off by " + fmt(worst_simplex));

    const Treeplex tp2 = oracle::two_infoset_treeplex();
    double worst_tp = 0.0;
    for (int i = 0; i < 50; ++i) {
      Vec v(5);
      for (double& c : v) c = rng.uniform(-2.0, 2.0);
      const Vec got = project_treeplex(tp2, v);
      const Vec want = oracle::grid_project_treeplex2(v);
      double d2 = 0.0;
      for (int k = 0; k < 5; ++k) d2 += (got[k] - want[k]) * (got[k] - want[k]);
      worst_tp = std::max(worst_tp, std::sqrt(d2));
    }
    require(worst_tp <= 1e-5, "treeplex projection off by " + fmt(worst_tp));

    const Treeplex deep(9, {{0, 1, 3}, {1, 3, 5}, {2, 5, 8}, {3, 8, 9}});
    for (const Treeplex& tp : {tp2, deep}) {
      const StrategyPolytope p = tp;
      for (int i = 0; i < 100; ++i) {
        Vec u(tp.num_sequences());
        for (double& c : u) c = rng.uniform(-1.0, 1.0);
        const auto [vertex, value] = best_vertex(p, u);
        const auto [ovx, ovalue] = oracle::enumerate_best_vertex(tp, u);
        (void)ovx;
        require(std::fabs(value - ovalue) <= 1e-12,
                "best response value " + fmt(value) + " vs enumerated " +
                    fmt(ovalue));
        require(std::fabs(dot(vertex, u) - value) <= 1e-12,
                "best response value does not match its vertex");
        require(is_feasible(p, vertex, 1e-9), "best response vertex infeasible");
      }
    }

    SplitMix64 lp_rng(101);
    int optimal = 0, infeasible = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const LinearProgram lp = random_lp(lp_rng);
      const LpSolution got = solve_lp(lp);
      const oracle::BfsResult want = oracle::enumerate_lp(lp);
      if (want.feasible) {
        ++optimal;
        require(got.status == LpStatus::optimal,
                "solver missed a feasible optimum (trial " +
                    std::to_string(trial) + ")");
        require(std::fabs(got.value - want.value) <=
                    1e-7 * std::max(1.0, std::fabs(want.value)),
                "LP value " + fmt(got.value) + " vs enumerated " +
                    fmt(want.value));
      } else {
        ++infeasible;
        require(got.status == LpStatus::infeasible,
                "solver found a point in an infeasible program (trial " +
                    std::to_string(trial) + ")");
      }
    }
    return "simplex err " + fmt(worst_simplex) + ", treeplex err " +
           fmt(worst_tp) + ", best responses exact, LPs " +
           std::to_string(optimal) + " optimal / " + std::to_string(infeasible) +
           " infeasible all matched";
  });

  // 9. Benchmark suite at the automatic step size, T = 5000: the zero-sum
  // game's last iterate essentially reaches equilibrium, the general-sum game
  // reaches a strictly strong margin, and the two big zero-sum games at least
  // halve their initial gap.
  gate.criterion(9, 600.0, [&] {
    std::string detail;
    for (const std::string& name : benchmark_names()) {
      const BimatrixGame g = benchmark_game(name).game;
      RunConfig rc;
      rc.eta = auto_eta(g);
      rc.horizon = 5000;
      if (name == "battleship") {
        rc.init_mode = InitMode::deterministic_vertex;
        rc.vertex_index_x = 1;
        rc.vertex_index_y = 1;
      }
      const Trace trace = run(g, rc);
      const double initial = nash_gap(g, trace.x[1], trace.y[1]);
      const double final_gap =
          nash_gap(g, trace.x[rc.horizon], trace.y[rc.horizon]);
      if (name == "liars-dice") {
        require(final_gap <= 0.05, name + " final-iterate NE gap " +
                                       fmt(final_gap) + " exceeds 0.05");
      } else if (name == "goofspiel") {
        const double strong = cce_report(trace, g).strong_eps;
        require(strong >= 0.03, name + " strong margin " + fmt(strong) +
                                    " below 0.03");
        detail += name + " strong_eps " + fmt(strong) + "; ";
        continue;
      } else {
        require(final_gap <= initial / 2.0,
                name + " NE gap " + fmt(initial) + " -> " + fmt(final_gap) +
                    " did not halve");
      }
      detail += name + " gap " + fmt(initial) + " -> " + fmt(final_gap) + "; ";
    }
    detail.resize(detail.size() - 2);
    return detail;
  });

  // 10. Byte determinism of the run command.
  gate.criterion(10, 0.0, [&] {
    const fs::path dir =
        fs::temp_directory_path() /
        ("omdsim-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    ExperimentConfig cfg;
    cfg.game = "example-3x3";
    cfg.eta = "0.1";
    cfg.horizon = 1000;
    cfg.out = (dir / "trace.csv").string();
    std::ostringstream out1, err1;
    require(cmd_run(cfg, out1, err1) == 0, "first run failed: " + err1.str());
    const std::string first = slurp(cfg.out);
    std::ostringstream out2, err2;
    require(cmd_run(cfg, out2, err2) == 0, "second run failed: " + err2.str());
    const std::string second = slurp(cfg.out);
    require(first == second, "reruns differ");
    fs::remove_all(dir);
    return std::to_string(first.size()) + " bytes, byte-identical on rerun";
  });

  std::cout << "acceptance: " << (10 - gate.failures) << "/10 criteria passed"
            << std::endl;
  return gate.failures;
}
