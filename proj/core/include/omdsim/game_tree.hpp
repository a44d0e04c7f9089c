// Extensive-form game trees (chance / decision / terminal arena nodes) and
// the conversion to sequence form: one treeplex per player plus sparse
// payoff matrices indexed by sequence pairs.
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "omdsim/game.hpp"

namespace omd {

enum class Player { x, y };

inline int player_index(Player p) { return p == Player::x ? 0 : 1; }

class GameTree {
 public:
  struct ChanceOutcome {
    double probability = 0.0;
    int child = -1;
  };
  struct Action {
    std::string label;
    int child = -1;
  };
  struct ChanceNode {
    std::vector<ChanceOutcome> outcomes;
  };
  struct DecisionNode {
    Player player = Player::x;
    int infoset = -1;  // id from intern_infoset
    std::vector<Action> actions;
  };
  struct TerminalNode {
    double payoff_x = 0.0;
    double payoff_y = 0.0;
  };
  using Node = std::variant<ChanceNode, DecisionNode, TerminalNode>;

  // Infosets are interned by (player, key); the key is any string that is
  // identical exactly for the decision nodes the player cannot tell apart
  // (e.g. its private observations plus its own action history).
  int intern_infoset(Player p, const std::string& key);

  int add_chance(std::vector<ChanceOutcome> outcomes);
  int add_decision(Player p, int infoset, std::vector<Action> actions);
  int add_terminal(double payoff_x, double payoff_y);

  void set_root(int node) { root_ = node; }
  int root() const { return root_; }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::string& infoset_key(int infoset) const { return infoset_keys_[infoset]; }
  Player infoset_player(int infoset) const { return infoset_players_[infoset]; }
  int num_infosets() const { return static_cast<int>(infoset_keys_.size()); }

  std::size_t num_terminals() const;

  // Plain-text node listing for inspection (--dump-tree).
  std::string dump() const;

 private:
  std::vector<Node> nodes_;
  int root_ = -1;
  std::vector<std::string> infoset_keys_;
  std::vector<Player> infoset_players_;
  // (player, key) -> id; linear maps keyed by string are fine at our sizes
  std::vector<std::vector<std::pair<std::string, int>>> intern_ = {{}, {}};
};

struct SequenceFormGame {
  BimatrixGame game;  // payoff matrices indexed by (sequence_x, sequence_y)
  std::vector<std::string> seq_labels_x;
  std::vector<std::string> seq_labels_y;
};

// Builds both treeplexes (sequences in discovery order, empty sequence 0) and
// both payoff matrices in a single traversal accumulating chance probability:
// entry (sx, sy) sums chance_prob * payoff over the terminals reached exactly
// under that sequence pair. Throws a structured error naming the offending
// infoset if the tree violates perfect recall.
SequenceFormGame to_sequence_form(const GameTree& tree, const std::string& name);

// Expected payoffs of behavioral strategy profiles by direct tree traversal;
// behavior[p] holds, for each of player p's sequences, the probability of
// taking that sequence's last action at its infoset (entry 0 unused).
// Used to cross-check the bilinear sequence-form payoff.
std::pair<double, double> tree_expected_payoff(const GameTree& tree,
                                               const SequenceFormGame& sf,
                                               const Vec& behavior_x,
                                               const Vec& behavior_y);

// Realization plan of a behavioral strategy: z[c] = z[parent] * behavior[c].
Vec realization_plan(const Treeplex& tp, const Vec& behavior);

}  // namespace omd
