#include "omdsim/benchmark_games.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "omdsim/rng.hpp"

namespace omd {
namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (int x : v) {
    if (!s.empty()) s += ",";
    s += std::to_string(x);
  }
  return s;
}

}  // namespace

GameTree build_liars_dice() {
  GameTree t;
  // Bid index b encodes (face f = b/2 + 1, count c = b%2 + 1); increasing b
  // is exactly the paper ordering with face precedence.
  constexpr int kNumBids = 8;
  auto bid_label = [](int b) {
    return std::to_string(b % 2 + 1) + "x" + std::to_string(b / 2 + 1);
  };
  auto bid_valid = [](int b, int rx, int ry) {
    const int face = b / 2 + 1, count = b % 2 + 1;
    return (rx == face ? 1 : 0) + (ry == face ? 1 : 0) >= count;
  };

  std::function<int(int, int, std::vector<int>&)> rec =
      [&](int rx, int ry, std::vector<int>& hist) -> int {
    const Player p = hist.size() % 2 == 0 ? Player::x : Player::y;
    const int my_roll = p == Player::x ? rx : ry;
    std::vector<GameTree::Action> actions;
    const int last = hist.empty() ? -1 : hist.back();
    for (int b = last + 1; b < kNumBids; ++b) {
      hist.push_back(b);
      const int child = rec(rx, ry, hist);
      hist.pop_back();
      actions.push_back({bid_label(b), child});
    }
    if (!hist.empty()) {
      // p challenges; the previous mover is the bidder under scrutiny.
      const bool bidder_wins = bid_valid(hist.back(), rx, ry);
      const double px = p == Player::x ? (bidder_wins ? -1.0 : 1.0)
                                       : (bidder_wins ? 1.0 : -1.0);
      actions.push_back({"liar", t.add_terminal(px, -px)});
    }
    std::ostringstream key;
    key << (p == Player::x ? "x" : "y") << "|roll" << my_roll << "|h"
        << join_ints(hist);
    const int infoset = t.intern_infoset(p, key.str());
    return t.add_decision(p, infoset, std::move(actions));
  };

  std::vector<GameTree::ChanceOutcome> outcomes;
  for (int rx = 1; rx <= 4; ++rx)
    for (int ry = 1; ry <= 4; ++ry) {
      std::vector<int> hist;
      outcomes.push_back({1.0 / 16.0, rec(rx, ry, hist)});
    }
  t.set_root(t.add_chance(std::move(outcomes)));
  return t;
}

GameTree build_sheriff() {
  GameTree t;
  auto terminal = [&](int n, int b2, bool accept) {
    if (accept) return t.add_terminal(n - b2, b2);
    return n == 0 ? t.add_terminal(3, -3) : t.add_terminal(-2 * n, 2 * n);
  };

  std::vector<GameTree::Action> pick_n;
  for (int n = 0; n <= 5; ++n) {
    std::vector<GameTree::Action> bribes1;
    for (int b1 = 0; b1 <= 3; ++b1) {
      std::vector<GameTree::Action> answers1;
      for (int a1 = 0; a1 < 2; ++a1) {
        const bool acc1 = a1 == 0;
        std::vector<GameTree::Action> bribes2;
        for (int b2 = 0; b2 <= 3; ++b2) {
          std::vector<GameTree::Action> answers2;
          for (int a2 = 0; a2 < 2; ++a2) {
            answers2.push_back({a2 == 0 ? "accept" : "inspect",
                                terminal(n, b2, a2 == 0)});
          }
          const int iset = t.intern_infoset(
              Player::y, "y|b1=" + std::to_string(b1) + "|a1=" +
                             (acc1 ? "accept" : "inspect") +
                             "|b2=" + std::to_string(b2));
          bribes2.push_back({std::to_string(b2),
                             t.add_decision(Player::y, iset, std::move(answers2))});
        }
        const int iset = t.intern_infoset(
            Player::x, "x|n=" + std::to_string(n) + "|b1=" + std::to_string(b1) +
                           "|a1=" + (acc1 ? "accept" : "inspect"));
        answers1.push_back({acc1 ? "accept" : "inspect",
                            t.add_decision(Player::x, iset, std::move(bribes2))});
      }
      const int iset = t.intern_infoset(Player::y, "y|b1=" + std::to_string(b1));
      bribes1.push_back({std::to_string(b1),
                         t.add_decision(Player::y, iset, std::move(answers1))});
    }
    const int iset = t.intern_infoset(Player::x, "x|n=" + std::to_string(n));
    pick_n.push_back({std::to_string(n),
                      t.add_decision(Player::x, iset, std::move(bribes1))});
  }
  t.set_root(t.add_decision(Player::x, t.intern_infoset(Player::x, "x|load"),
                            std::move(pick_n)));
  return t;
}

GameTree build_battleship() {
  GameTree t;
  auto outcome = [&](bool x_sunk, bool y_sunk) {
    return t.add_terminal(4.0 * (y_sunk ? 1 : 0) - 8.0 * (x_sunk ? 1 : 0),
                          4.0 * (x_sunk ? 1 : 0) - 8.0 * (y_sunk ? 1 : 0));
  };

  // Shots run X, Y, X, Y (turn 0..3 = two rounds each); every shot targets a
  // cell of the opponent's grid not previously shot by the same shooter.
  std::function<int(int, int, std::vector<int>&, std::vector<int>&, int)> shots =
      [&](int px, int py, std::vector<int>& xshots, std::vector<int>& yshots,
          int turn) -> int {
    if (turn == 4) return outcome(false, false);
    const Player shooter = turn % 2 == 0 ? Player::x : Player::y;
    std::vector<int>& mine = shooter == Player::x ? xshots : yshots;
    const int target = shooter == Player::x ? py : px;
    std::vector<GameTree::Action> actions;
    for (int cell = 0; cell < 4; ++cell) {
      if (std::find(mine.begin(), mine.end(), cell) != mine.end()) continue;
      int child;
      if (cell == target) {
        child = outcome(shooter == Player::y, shooter == Player::x);
      } else {
        mine.push_back(cell);
        child = shots(px, py, xshots, yshots, turn + 1);
        mine.pop_back();
      }
      actions.push_back({std::to_string(cell), child});
    }
    std::ostringstream key;
    key << (shooter == Player::x ? "x" : "y") << "|p"
        << (shooter == Player::x ? px : py) << "|xs" << join_ints(xshots) << "|ys"
        << join_ints(yshots);
    const int iset = t.intern_infoset(shooter, key.str());
    return t.add_decision(shooter, iset, std::move(actions));
  };

  std::vector<GameTree::Action> x_place;
  for (int px = 0; px < 4; ++px) {
    std::vector<GameTree::Action> y_place;
    for (int py = 0; py < 4; ++py) {
      std::vector<int> xs, ys;
      y_place.push_back({std::to_string(py), shots(px, py, xs, ys, 0)});
    }
    const int iset = t.intern_infoset(Player::y, "y|place");
    x_place.push_back({std::to_string(px),
                       t.add_decision(Player::y, iset, std::move(y_place))});
  }
  t.set_root(t.add_decision(Player::x, t.intern_infoset(Player::x, "x|place"),
                            std::move(x_place)));
  return t;
}

GameTree build_goofspiel(std::optional<std::uint64_t> shuffle_seed) {
  GameTree t;
  std::vector<int> prizes = {1, 2, 3};
  if (shuffle_seed) {
    SplitMix64 rng(*shuffle_seed);
    for (std::size_t i = prizes.size() - 1; i > 0; --i)
      std::swap(prizes[i], prizes[rng.next_below(i + 1)]);
  }

  auto payoffs = [&](const std::vector<int>& xb, const std::vector<int>& yb) {
    double px = 0.0, py = 0.0;
    for (std::size_t k = 0; k < prizes.size(); ++k) {
      if (xb[k] > yb[k]) px += prizes[k];
      if (yb[k] > xb[k]) py += prizes[k];
    }
    return std::make_pair(px, py);
  };

  // Each turn is an X decision followed by a Y decision whose infoset hides
  // X's bid (the limited-information convention: own past bids only).
  std::function<int(std::vector<int>&, std::vector<int>&)> rec =
      [&](std::vector<int>& xb, std::vector<int>& yb) -> int {
    if (xb.size() == prizes.size()) {
      const auto [px, py] = payoffs(xb, yb);
      return t.add_terminal(px, py);
    }
    auto unused = [](const std::vector<int>& bids, int c) {
      return std::find(bids.begin(), bids.end(), c) == bids.end();
    };
    std::vector<GameTree::Action> x_actions;
    for (int cx = 1; cx <= 3; ++cx) {
      if (!unused(xb, cx)) continue;
      xb.push_back(cx);
      std::vector<GameTree::Action> y_actions;
      for (int cy = 1; cy <= 3; ++cy) {
        if (!unused(yb, cy)) continue;
        yb.push_back(cy);
        y_actions.push_back({std::to_string(cy), rec(xb, yb)});
        yb.pop_back();
      }
      const int iset = t.intern_infoset(Player::y, "y|bids" + join_ints(yb));
      x_actions.push_back({std::to_string(cx),
                           t.add_decision(Player::y, iset, std::move(y_actions))});
      xb.pop_back();
    }
    const int iset = t.intern_infoset(Player::x, "x|bids" + join_ints(xb));
    return t.add_decision(Player::x, iset, std::move(x_actions));
  };

  std::vector<int> xb, yb;
  t.set_root(t.add_chance({{1.0, rec(xb, yb)}}));
  return t;
}

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names = {"liars-dice", "sheriff",
                                                 "battleship", "goofspiel"};
  return names;
}

bool is_benchmark_name(const std::string& name) {
  const auto& names = benchmark_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

GameTree build_benchmark_tree(const std::string& name) {
  if (name == "liars-dice") return build_liars_dice();
  if (name == "sheriff") return build_sheriff();
  if (name == "battleship") return build_battleship();
  if (name == "goofspiel") return build_goofspiel();
  throw std::invalid_argument("unknown benchmark game: " + name);
}

SequenceFormGame benchmark_game(const std::string& name) {
  return to_sequence_form(build_benchmark_tree(name), name);
}

}  // namespace omd
