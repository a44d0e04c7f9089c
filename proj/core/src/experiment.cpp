#include "omdsim/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "omdsim/benchmark_games.hpp"
#include "omdsim/cce_lp.hpp"
#include "omdsim/csv.hpp"
#include "omdsim/metrics.hpp"
#include "omdsim/svg_plot.hpp"

namespace omd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const std::string item =
        trim(comma == std::string::npos ? s.substr(start)
                                        : s.substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

long long config_int(const std::string& key, const std::string& value) {
  long long v = 0;
  const char* end = value.data() + value.size();
  const auto r = std::from_chars(value.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end)
    throw ConfigError("configuration key '" + key + "': '" + value +
                      "' is not an integer");
  return v;
}

std::uint64_t config_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const char* end = value.data() + value.size();
  const auto r = std::from_chars(value.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end)
    throw ConfigError("configuration key '" + key + "': '" + value +
                      "' is not a nonnegative integer");
  return v;
}

double config_real(const std::string& key, const std::string& value) {
  try {
    return parse_double(value);
  } catch (const std::invalid_argument&) {
    throw ConfigError("configuration key '" + key + "': '" + value +
                      "' is not a number");
  }
}

bool config_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on")
    return true;
  if (value == "0" || value == "false" || value == "no" || value == "off")
    return false;
  throw ConfigError("configuration key '" + key + "': '" + value +
                    "' is not a boolean");
}

const std::vector<std::string>& known_checkers() {
  static const std::vector<std::string> names = {"rvu", "stability", "balanced",
                                                 "dichotomy"};
  return names;
}

void apply_init_spec(RunConfig& rc, const std::string& spec) {
  if (spec == "uniform") {
    rc.init_mode = InitMode::regularizer_min;
    return;
  }
  if (spec.rfind("vertex:", 0) == 0) {
    const std::string body = spec.substr(7);
    const auto comma = body.find(',');
    if (comma == std::string::npos)
      throw ConfigError("init '" + spec + "' wants two indices: vertex:i,j");
    const long long i = config_int("init", trim(body.substr(0, comma)));
    const long long j = config_int("init", trim(body.substr(comma + 1)));
    if (i < 0 || j < 0) throw ConfigError("init vertex indices must be >= 0");
    rc.init_mode = InitMode::deterministic_vertex;
    rc.vertex_index_x = static_cast<int>(i);
    rc.vertex_index_y = static_cast<int>(j);
    return;
  }
  if (spec.rfind("random:", 0) == 0) {
    rc.init_mode = InitMode::seeded_random;
    rc.seed = config_u64("init", trim(spec.substr(7)));
    return;
  }
  throw ConfigError("init '" + spec +
                    "' not recognized (uniform | vertex:i,j | random:seed)");
}

std::string canonical_init(const RunConfig& rc) {
  switch (rc.init_mode) {
    case InitMode::regularizer_min:
      return "uniform";
    case InitMode::deterministic_vertex:
      return "vertex:" + std::to_string(rc.vertex_index_x) + "," +
             std::to_string(rc.vertex_index_y);
    case InitMode::seeded_random:
      return "random:" + std::to_string(rc.seed);
  }
  return "uniform";
}

// random-<N>x<M>-s<SEED>, e.g. random-3x3-s42.
bool parse_random_name(const std::string& name, int& n, int& m,
                       std::uint64_t& seed) {
  if (name.rfind("random-", 0) != 0) return false;
  const auto x = name.find('x', 7);
  if (x == std::string::npos) return false;
  const auto s = name.find("-s", x + 1);
  if (s == std::string::npos) return false;
  try {
    const long long rows = config_int("game", name.substr(7, x - 7));
    const long long cols = config_int("game", name.substr(x + 1, s - x - 1));
    if (rows < 1 || cols < 1) return false;
    n = static_cast<int>(rows);
    m = static_cast<int>(cols);
    seed = config_u64("game", name.substr(s + 2));
    return true;
  } catch (const ConfigError&) {
    return false;
  }
}

std::string fixed3(double v) {
  char buf[48];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 3);
  return std::string(buf, res.ptr);
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  f.close();
  if (!f) throw std::runtime_error("failed while writing '" + path + "'");
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

void print_matrix(std::ostream& out, const std::string& label, const Matrix& m) {
  out << label << " =\n";
  for (int i = 0; i < m.rows(); ++i) {
    out << " ";
    for (int j = 0; j < m.cols(); ++j) out << ' ' << format_double(m(i, j));
    out << "\n";
  }
}

// Largest utility-norm scale the game can produce; the stability checker's
// `s`. Exact for simplices, a safe upper bound for treeplexes, and exactly
// what normalize() would divide out.
double utility_scale_bound(const BimatrixGame& game) {
  const NormalizationReport rep = normalization_report(game);
  return std::max(rep.scale_a, rep.scale_b);
}

std::vector<std::pair<std::string, std::string>> run_header(
    const ExperimentConfig& cfg, const RunConfig& rc) {
  return {{"game", cfg.game},
          {"normalized", cfg.normalized ? "1" : "0"},
          {"eta", format_double(rc.eta)},
          {"horizon", std::to_string(rc.horizon)},
          {"init", canonical_init(rc)}};
}

std::string with_seed_suffix(const std::string& path, std::uint64_t seed) {
  const std::string tag = "-s" + std::to_string(seed);
  const auto dot = path.rfind('.');
  if (dot == std::string::npos || dot == 0) return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

}  // namespace

void apply_config_entry(ExperimentConfig& cfg, const std::string& raw_key,
                        const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "game") {
    cfg.game = value;
  } else if (key == "eta") {
    if (value != "auto" && config_real(key, value) <= 0.0)
      throw ConfigError("configuration key 'eta' must be positive or 'auto'");
    cfg.eta = value;
  } else if (key == "horizon") {
    const long long h = config_int(key, value);
    if (h < 1 || h > 100000000)
      throw ConfigError("configuration key 'horizon' must be in [1, 1e8]");
    cfg.horizon = static_cast<int>(h);
  } else if (key == "init") {
    RunConfig probe;
    apply_init_spec(probe, value);  // reject bad specs at parse time
    cfg.init = value;
  } else if (key == "normalized") {
    cfg.normalized = config_bool(key, value);
  } else if (key == "seeds") {
    cfg.seeds.clear();
    for (const std::string& item : split_list(value))
      cfg.seeds.push_back(config_u64(key, item));
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "trace") {
    cfg.trace = value;
  } else if (key == "kind") {
    if (value != "regret" && value != "gap")
      throw ConfigError("configuration key 'kind' must be regret or gap");
    cfg.kind = value;
  } else if (key == "checks") {
    const std::vector<std::string> items = split_list(value);
    if (items.empty()) throw ConfigError("configuration key 'checks' is empty");
    for (const std::string& c : items) {
      const auto& known = known_checkers();
      if (std::find(known.begin(), known.end(), c) == known.end())
        throw ConfigError("unknown checker '" + c +
                          "' (rvu | stability | balanced | dichotomy)");
    }
    cfg.checks = items;
  } else if (key == "eps") {
    const double v = config_real(key, value);
    if (v <= 0.0) throw ConfigError("configuration key 'eps' must be positive");
    cfg.eps = v;
  } else if (key == "grid") {
    const long long g = config_int(key, value);
    if (g < 2 || g > 2000)
      throw ConfigError("configuration key 'grid' must be in [2, 2000]");
    cfg.grid = static_cast<int>(g);
  } else if (key == "at_least") {
    cfg.at_least = config_bool(key, value);
  } else if (key == "games") {
    cfg.bench_games = split_list(value);
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("configuration line '" + stripped + "' is not key=value");
    apply_config_entry(cfg, stripped.substr(0, eq), stripped.substr(eq + 1));
  }
  return cfg;
}

BimatrixGame load_named_game(const std::string& name) {
  if (name == "example-3x3") return example_game();
  if (name == "example-3x3-zerosum") return zero_sum_counterpart(example_game());
  if (is_benchmark_name(name)) return benchmark_game(name).game;
  int n = 0, m = 0;
  std::uint64_t seed = 0;
  if (parse_random_name(name, n, m, seed)) return random_game(n, m, seed);
  return load_game_file(name);
}

std::vector<std::string> builtin_game_names() {
  std::vector<std::string> names = {"example-3x3", "example-3x3-zerosum"};
  for (const std::string& b : benchmark_names()) names.push_back(b);
  return names;
}

double auto_eta(const BimatrixGame& game) {
  const auto norm_or_zero = [](const Matrix& m) {
    return m.max_abs_entry() == 0.0 ? 0.0 : operator_norm(m);
  };
  // The game constructor rejects (0, 0), so the max is positive.
  const double worst = std::max(norm_or_zero(game.a()), norm_or_zero(game.b()));
  return 1.0 / (2.0 * worst);
}

RunConfig make_run_config(const ExperimentConfig& cfg, const BimatrixGame& game,
                          const std::string& game_name, int default_horizon) {
  RunConfig rc;
  rc.horizon = cfg.horizon.value_or(default_horizon);
  rc.eta = cfg.eta == "auto" ? auto_eta(game) : config_real("eta", cfg.eta);
  if (rc.eta <= 0.0) throw ConfigError("configuration key 'eta' must be positive");
  // Per-game protocol defaults. Battleship starts from a deterministic
  // strategy pair. Goofspiel is symmetric between the players, and the
  // simultaneous dynamics carry a symmetric state to a symmetric state, so
  // the uniform start sits on an unstable symmetric fixed point and never
  // leaves it; a fixed-seed interior start breaks the tie deterministically,
  // and the run settles in the strong-correlated regime the benchmark
  // measures instead of the knife-edge symmetric equilibrium.
  std::string default_init = "uniform";
  if (game_name == "battleship") default_init = "vertex:1,1";
  if (game_name == "goofspiel") default_init = "random:1";
  apply_init_spec(rc, cfg.init.value_or(default_init));
  if (!cfg.seeds.empty()) {
    if (rc.init_mode != InitMode::seeded_random)
      throw ConfigError("configuration key 'seeds' only applies with init random:...");
    rc.seed = cfg.seeds.front();
  }
  return rc;
}

int cmd_run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (cfg.game.empty()) throw ConfigError("run needs a game (key 'game')");
    BimatrixGame game = load_named_game(cfg.game);
    if (cfg.normalized) game = normalize(game).first;
    const RunConfig base = make_run_config(cfg, game, cfg.game, 1000);

    std::vector<std::uint64_t> seeds = {base.seed};
    if (base.init_mode == InitMode::seeded_random && cfg.seeds.size() > 1)
      seeds = cfg.seeds;
    const std::string base_out = cfg.out.empty() ? "trace.csv" : cfg.out;

    for (std::uint64_t seed : seeds) {
      RunConfig rc = base;
      rc.seed = seed;
      const std::string path =
          seeds.size() > 1 ? with_seed_suffix(base_out, seed) : base_out;
      const Trace trace = run(game, rc);
      std::ostringstream bytes;
      write_trace_csv(bytes, run_header(cfg, rc), trace, game);
      write_file(path, bytes.str());
      const GapReport report = cce_report(trace, game);
      out << path << ": T=" << rc.horizon << " eta=" << format_double(rc.eta)
          << " nash_gap=" << format_double(report.nash_gap_last)
          << " cce_gap=" << format_double(report.cce_gap)
          << " strong_eps=" << format_double(report.strong_eps) << "\n";
    }
    return 0;
  });
}

int cmd_metrics(const ExperimentConfig& cfg, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (cfg.trace.empty())
      throw ConfigError("metrics needs a trace CSV (key 'trace')");
    std::ifstream f(cfg.trace);
    if (!f) throw std::runtime_error("cannot read trace '" + cfg.trace + "'");
    const TraceCsv csv = read_trace_csv(f);

    // The trace header pins the run; --game (with --normalized) may override
    // where the data should be interpreted, e.g. for a renamed game file.
    const std::string game_name =
        !cfg.game.empty() ? cfg.game : config_value(csv, "game").value_or("");
    if (game_name.empty())
      throw ConfigError("trace header lacks game=...; pass a game explicitly");
    const bool normalized =
        cfg.game.empty() ? config_value(csv, "normalized").value_or("0") == "1"
                         : cfg.normalized;
    const auto header_eta = config_value(csv, "eta");
    const auto header_horizon = config_value(csv, "horizon");
    const auto header_init = config_value(csv, "init");
    if (!header_eta || !header_horizon || !header_init)
      throw std::runtime_error(
          "trace header is missing eta=/horizon=/init=; cannot replay the run");

    BimatrixGame game = load_named_game(game_name);
    if (normalized) game = normalize(game).first;
    RunConfig rc;
    rc.eta = config_real("eta", *header_eta);
    rc.horizon = static_cast<int>(config_int("horizon", *header_horizon));
    apply_init_spec(rc, *header_init);

    // The CSV stores only the per-iteration series; the checkers need the
    // iterates, so replay the (deterministic) run and cross-check the tail.
    const Trace trace = run(game, rc);
    if (static_cast<int>(csv.rows.size()) != rc.horizon)
      err << "warning: trace has " << csv.rows.size()
          << " rows but its header says horizon=" << rc.horizon
          << "; trusting the header\n";
    if (!csv.rows.empty()) {
      const int t_last = static_cast<int>(column_values(csv, "t").back());
      if (t_last >= 1 && t_last <= rc.horizon) {
        const double want = column_values(csv, "reg_x").back();
        const double got = regret(trace, game).reg_x[t_last];
        if (std::fabs(want - got) > 1e-9 * std::max(1.0, std::fabs(want)))
          err << "warning: replayed regret " << format_double(got)
              << " differs from the trace's " << format_double(want)
              << "; the trace may come from a different code version\n";
      }
    }

    struct Row {
      std::string checker;
      std::string at;
      double slack = 0.0;
      bool violated = false;
    };
    std::vector<Row> rows;
    std::optional<DichotomyReport> dichotomy;
    for (const std::string& c : cfg.checks) {
      if (c == "rvu") {
        const InequalityReport r = check_rvu(trace, game);
        rows.push_back({r.name, std::to_string(r.worst_t), r.worst_slack,
                        r.violated});
      } else if (c == "stability") {
        const InequalityReport r =
            check_stability(trace, rc.eta, utility_scale_bound(game));
        rows.push_back({r.name, std::to_string(r.worst_t), r.worst_slack,
                        r.violated});
      } else if (c == "balanced") {
        const InequalityReport r = check_balanced(trace, game);
        rows.push_back({r.name, std::to_string(r.worst_t), r.worst_slack,
                        r.violated});
      } else if (c == "dichotomy") {
        const DichotomyReport d = check_dichotomy(trace, game, cfg.eps);
        const double worst_regret = std::max(d.final_regret_x, d.final_regret_y);
        const double negative_margin = -worst_regret;
        const double equilibrium_margin =
            d.detection ? d.detection->certified_bound -
                              d.detection->verified_nash_gap
                        : -std::numeric_limits<double>::infinity();
        const bool bound_broken =
            d.theorem_compliant &&
            worst_regret > d.predicted_regret_bound +
                               1e-9 * std::max(1.0, std::fabs(d.predicted_regret_bound));
        rows.push_back({"dichotomy", "final",
                        std::max(negative_margin, equilibrium_margin),
                        d.observed_horn == "neither" || bound_broken});
        dichotomy = d;
      } else {
        throw ConfigError("unknown checker '" + c +
                          "' (rvu | stability | balanced | dichotomy)");
      }
    }

    std::ostringstream report;
    report << "checker,at,slack,violated\n";
    for (const Row& r : rows)
      report << r.checker << ',' << r.at << ',' << format_double(r.slack) << ','
             << (r.violated ? 1 : 0) << "\n";

    if (cfg.out.empty()) {
      out << report.str();
    } else {
      write_file(cfg.out, report.str());
      out << "wrote " << cfg.out << "\n";
      for (const Row& r : rows)
        out << "  " << r.checker << ": "
            << (r.violated ? "VIOLATED" : "ok") << " (worst slack "
            << format_double(r.slack) << " at " << r.at << ")\n";
    }
    if (dichotomy) {
      out << "dichotomy: " << dichotomy->observed_horn;
      if (!dichotomy->theorem_compliant) out << " (empirical; " << dichotomy->note << ")";
      out << "\n";
    }
    return 0;
  });
}

int cmd_plot(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (cfg.trace.empty())
      throw ConfigError("plot needs a trace CSV (key 'trace')");
    std::ifstream f(cfg.trace);
    if (!f) throw std::runtime_error("cannot read trace '" + cfg.trace + "'");
    const TraceCsv csv = read_trace_csv(f);
    if (csv.rows.empty())
      throw std::runtime_error("trace '" + cfg.trace + "' has no data rows");

    const std::string game = config_value(csv, "game").value_or(cfg.trace);
    PlotSpec spec;
    spec.x_label = "iteration t";
    const Vec t = column_values(csv, "t");
    if (cfg.kind == "regret") {
      spec.title = game + ": cumulative regret";
      spec.y_label = "cumulative regret";
      spec.series.push_back({"reg_x", t, column_values(csv, "reg_x")});
      spec.series.push_back({"reg_y", t, column_values(csv, "reg_y")});
    } else if (cfg.kind == "gap") {
      spec.title = game + ": equilibrium gaps";
      spec.y_label = "gap";
      spec.series.push_back({"nash_gap", t, column_values(csv, "nash_gap")});
      spec.series.push_back({"cce_gap", t, column_values(csv, "cce_gap")});
    } else {
      throw ConfigError("kind '" + cfg.kind + "' not recognized (regret | gap)");
    }

    // Render before touching the filesystem: a bad trace must not leave a file.
    const std::string svg = render_line_chart(spec);
    std::string path = cfg.out;
    if (path.empty()) {
      path = cfg.trace;
      if (path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
        path.resize(path.size() - 4);
      path += "-" + cfg.kind + ".svg";
    }
    write_file(path, svg);
    out << "wrote " << path << "\n";
    return 0;
  });
}

int cmd_lp(const std::string& op, const ExperimentConfig& cfg, std::ostream& out,
           std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (cfg.game.empty()) throw ConfigError("lp needs a game (key 'game')");
    BimatrixGame game = load_named_game(cfg.game);
    if (cfg.normalized) game = normalize(game).first;

    if (op == "strongest") {
      const CceSolution s = strongest_cce(game);
      out << "strongest CCE margin for '" << cfg.game
          << "': eps* = " << format_double(s.eps_star) << "\n";
      print_matrix(out, "mu", s.mu);
      return 0;
    }
    if (op == "welfare") {
      const WelfareSolution w = max_welfare_cce(game);
      out << "max CCE welfare for '" << cfg.game
          << "': " << format_double(w.welfare)
          << " (best entry of A+B: " << format_double(w.unconstrained_max)
          << ")\n";
      print_matrix(out, "mu", w.mu);
      return 0;
    }
    if (op == "contour") {
      const Matrix& a = game.a();
      const Matrix& b = game.b();
      double alo = a(0, 0), ahi = a(0, 0), blo = b(0, 0), bhi = b(0, 0);
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
          alo = std::min(alo, a(i, j));
          ahi = std::max(ahi, a(i, j));
          blo = std::min(blo, b(i, j));
          bhi = std::max(bhi, b(i, j));
        }
      std::ostringstream body;
      body << "w_x,w_y,eps_star\n";
      int feasible = 0;
      for (int i = 0; i < cfg.grid; ++i) {
        const double wx = alo + (ahi - alo) * i / (cfg.grid - 1);
        for (int j = 0; j < cfg.grid; ++j) {
          const double wy = blo + (bhi - blo) * j / (cfg.grid - 1);
          const auto sol = cce_with_utility_pair(game, wx, wy, cfg.at_least);
          const double eps = sol ? sol->eps_star
                                 : std::numeric_limits<double>::quiet_NaN();
          feasible += sol ? 1 : 0;
          body << format_double(wx) << ',' << format_double(wy) << ','
               << format_double(eps) << "\n";
        }
      }
      const std::string path = cfg.out.empty() ? "contour.csv" : cfg.out;
      write_file(path, body.str());
      out << "wrote " << path << ": " << cfg.grid * cfg.grid
          << " utility pairs, " << feasible << " achievable\n";
      return 0;
    }
    throw ConfigError("lp operation '" + op +
                      "' not recognized (strongest | contour | welfare)");
  });
}

int cmd_bench(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const std::vector<std::string> names =
        cfg.bench_games.empty() ? benchmark_names() : cfg.bench_games;
    std::ostringstream table;
    table << "game,status,eta,initial_nash_gap,final_nash_gap,cce_gap,"
             "strong_eps,seconds\n";
    bool any_failed = false;
    for (const std::string& name : names) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto elapsed = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
      };
      try {
        BimatrixGame game = load_named_game(name);
        if (cfg.normalized) game = normalize(game).first;
        const RunConfig rc = make_run_config(cfg, game, name, 5000);
        const Trace trace = run(game, rc);
        const GapReport report = cce_report(trace, game);
        const double gap_start = nash_gap(game, trace.x[1], trace.y[1]);
        const double secs = elapsed();
        table << name << ",ok," << format_double(rc.eta) << ','
              << format_double(gap_start) << ','
              << format_double(report.nash_gap_last) << ','
              << format_double(report.cce_gap) << ','
              << format_double(report.strong_eps) << ',' << fixed3(secs) << "\n";
        err << name << ": nash_gap " << format_double(gap_start) << " -> "
            << format_double(report.nash_gap_last) << ", strong_eps "
            << format_double(report.strong_eps) << " (" << fixed3(secs)
            << "s)\n";
      } catch (const std::exception& e) {
        any_failed = true;
        err << name << " failed: " << e.what() << "\n";
        table << name << ",failed,nan,nan,nan,nan,nan," << fixed3(elapsed())
              << "\n";
      }
    }
    if (cfg.out.empty()) {
      out << table.str();
    } else {
      write_file(cfg.out, table.str());
      out << "wrote " << cfg.out << "\n";
    }
    return any_failed ? 1 : 0;
  });
}

int cmd_games_list(std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    out << "built-in games:\n";
    out << "  example-3x3          3x3 normal form, general sum (the worked "
           "example)\n";
    out << "  example-3x3-zerosum  3x3 normal form, zero sum (A, -A of the "
           "example)\n";
    for (const std::string& name : benchmark_names()) {
      const SequenceFormGame sf = benchmark_game(name);
      std::string left = "  " + name;
      left.append(left.size() < 23 ? 23 - left.size() : 1, ' ');
      out << left << "sequence form " << sf.game.rows() << "x" << sf.game.cols()
          << (sf.game.is_zero_sum() ? ", zero sum" : ", general sum") << "\n";
    }
    out << "also: random-<N>x<M>-s<SEED> (seeded random game, normalized), "
           "or any path to a game file\n";
    return 0;
  });
}

}  // namespace omd
