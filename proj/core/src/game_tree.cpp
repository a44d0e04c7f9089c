#include "omdsim/game_tree.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace omd {

int GameTree::intern_infoset(Player p, const std::string& key) {
  auto& table = intern_[player_index(p)];
  for (const auto& [k, id] : table)
    if (k == key) return id;
  const int id = static_cast<int>(infoset_keys_.size());
  infoset_keys_.push_back(key);
  infoset_players_.push_back(p);
  table.emplace_back(key, id);
  return id;
}

int GameTree::add_chance(std::vector<ChanceOutcome> outcomes) {
  double total = 0.0;
  for (const auto& o : outcomes) {
    if (o.probability < 0.0)
      throw std::invalid_argument("chance outcome with negative probability");
    total += o.probability;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw std::invalid_argument("chance outcome probabilities must sum to 1");
  nodes_.emplace_back(ChanceNode{std::move(outcomes)});
  return static_cast<int>(nodes_.size()) - 1;
}

int GameTree::add_decision(Player p, int infoset, std::vector<Action> actions) {
  if (actions.empty())
    throw std::invalid_argument("decision node needs at least one action");
  if (infoset < 0 || infoset >= num_infosets() || infoset_players_[infoset] != p)
    throw std::invalid_argument("decision node with foreign or unknown infoset");
  nodes_.emplace_back(DecisionNode{p, infoset, std::move(actions)});
  return static_cast<int>(nodes_.size()) - 1;
}

int GameTree::add_terminal(double payoff_x, double payoff_y) {
  nodes_.emplace_back(TerminalNode{payoff_x, payoff_y});
  return static_cast<int>(nodes_.size()) - 1;
}

std::size_t GameTree::num_terminals() const {
  std::size_t n = 0;
  for (const auto& node : nodes_) n += std::holds_alternative<TerminalNode>(node);
  return n;
}

std::string GameTree::dump() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    out << i << ": ";
    if (const auto* c = std::get_if<ChanceNode>(&nodes_[i])) {
      out << "chance";
      for (const auto& o : c->outcomes)
        out << " " << o.probability << "->" << o.child;
    } else if (const auto* d = std::get_if<DecisionNode>(&nodes_[i])) {
      out << "decision " << (d->player == Player::x ? "x" : "y") << " ["
          << infoset_keys_[d->infoset] << "]";
      for (const auto& a : d->actions) out << " " << a.label << "->" << a.child;
    } else {
      const auto& t = std::get<TerminalNode>(nodes_[i]);
      out << "terminal (" << t.payoff_x << ", " << t.payoff_y << ")";
    }
    out << "\n";
  }
  return out.str();
}

namespace {

// Sequence numbering shared by the conversion and the expectation check.
// Sequences are allocated per player in DFS discovery order: infoset h first
// seen while the player holds sequence s gets the next contiguous block of
// child sequences, one per action, with parent s. Perfect recall makes this
// parent unique; a revisit from a different own-sequence is exactly a recall
// violation.
struct SequenceAssignment {
  int seq_count[2] = {1, 1};
  std::vector<int> infoset_parent;       // by infoset id; -1 = not seen yet
  std::vector<int> infoset_child_begin;  // by infoset id
  std::vector<Treeplex::Infoset> infosets[2];
  std::vector<std::string> labels[2];
  std::vector<int> action_counts;  // per infoset, for consistency checks
};

SequenceAssignment assign_sequences(const GameTree& tree) {
  SequenceAssignment sa;
  sa.infoset_parent.assign(tree.num_infosets(), -1);
  sa.infoset_child_begin.assign(tree.num_infosets(), -1);
  sa.action_counts.assign(tree.num_infosets(), -1);
  sa.labels[0].push_back("(empty)");
  sa.labels[1].push_back("(empty)");

  std::function<void(int, int, int)> visit = [&](int node, int sx, int sy) {
    const auto& n = tree.nodes()[node];
    if (std::holds_alternative<GameTree::TerminalNode>(n)) return;
    if (const auto* c = std::get_if<GameTree::ChanceNode>(&n)) {
      for (const auto& o : c->outcomes) visit(o.child, sx, sy);
      return;
    }
    const auto& d = std::get<GameTree::DecisionNode>(n);
    const int pi = player_index(d.player);
    const int own_seq = d.player == Player::x ? sx : sy;
    if (sa.infoset_parent[d.infoset] < 0) {
      sa.infoset_parent[d.infoset] = own_seq;
      sa.infoset_child_begin[d.infoset] = sa.seq_count[pi];
      sa.action_counts[d.infoset] = static_cast<int>(d.actions.size());
      sa.seq_count[pi] += static_cast<int>(d.actions.size());
      sa.infosets[pi].push_back({own_seq, sa.infoset_child_begin[d.infoset],
                                 sa.seq_count[pi]});
      for (const auto& a : d.actions)
        sa.labels[pi].push_back(tree.infoset_key(d.infoset) + "/" + a.label);
    } else {
      if (sa.infoset_parent[d.infoset] != own_seq)
        throw std::runtime_error(
            "perfect recall violated at infoset '" + tree.infoset_key(d.infoset) +
            "': reached under two different own histories");
      if (sa.action_counts[d.infoset] != static_cast<int>(d.actions.size()))
        throw std::runtime_error("infoset '" + tree.infoset_key(d.infoset) +
                                 "' has inconsistent action counts");
    }
    const int begin = sa.infoset_child_begin[d.infoset];
    for (std::size_t k = 0; k < d.actions.size(); ++k) {
      const int child_seq = begin + static_cast<int>(k);
      if (d.player == Player::x)
        visit(d.actions[k].child, child_seq, sy);
      else
        visit(d.actions[k].child, sx, child_seq);
    }
  };
  visit(tree.root(), 0, 0);
  return sa;
}

}  // namespace

SequenceFormGame to_sequence_form(const GameTree& tree, const std::string& name) {
  SequenceAssignment sa = assign_sequences(tree);
  Matrix a(sa.seq_count[0], sa.seq_count[1]);
  Matrix b(sa.seq_count[0], sa.seq_count[1]);

  std::function<void(int, int, int, double)> fill = [&](int node, int sx, int sy,
                                                        double prob) {
    const auto& n = tree.nodes()[node];
    if (const auto* t = std::get_if<GameTree::TerminalNode>(&n)) {
      a(sx, sy) += prob * t->payoff_x;
      b(sx, sy) += prob * t->payoff_y;
      return;
    }
    if (const auto* c = std::get_if<GameTree::ChanceNode>(&n)) {
      for (const auto& o : c->outcomes) fill(o.child, sx, sy, prob * o.probability);
      return;
    }
    const auto& d = std::get<GameTree::DecisionNode>(n);
    const int begin = sa.infoset_child_begin[d.infoset];
    for (std::size_t k = 0; k < d.actions.size(); ++k) {
      const int child_seq = begin + static_cast<int>(k);
      if (d.player == Player::x)
        fill(d.actions[k].child, child_seq, sy, prob);
      else
        fill(d.actions[k].child, sx, child_seq, prob);
    }
  };
  fill(tree.root(), 0, 0, 1.0);

  Treeplex tx(sa.seq_count[0], std::move(sa.infosets[0]));
  Treeplex ty(sa.seq_count[1], std::move(sa.infosets[1]));
  BimatrixGame game(std::move(a), std::move(b), std::move(tx), std::move(ty), name);
  return SequenceFormGame{std::move(game), std::move(sa.labels[0]),
                          std::move(sa.labels[1])};
}

std::pair<double, double> tree_expected_payoff(const GameTree& tree,
                                               const SequenceFormGame& sf,
                                               const Vec& behavior_x,
                                               const Vec& behavior_y) {
  (void)sf;  // sequence numbering is re-derived; it is deterministic
  SequenceAssignment sa = assign_sequences(tree);
  double ex = 0.0, ey = 0.0;
  std::function<void(int, double)> visit = [&](int node, double prob) {
    const auto& n = tree.nodes()[node];
    if (const auto* t = std::get_if<GameTree::TerminalNode>(&n)) {
      ex += prob * t->payoff_x;
      ey += prob * t->payoff_y;
      return;
    }
    if (const auto* c = std::get_if<GameTree::ChanceNode>(&n)) {
      for (const auto& o : c->outcomes) visit(o.child, prob * o.probability);
      return;
    }
    const auto& d = std::get<GameTree::DecisionNode>(n);
    const int begin = sa.infoset_child_begin[d.infoset];
    const Vec& beh = d.player == Player::x ? behavior_x : behavior_y;
    for (std::size_t k = 0; k < d.actions.size(); ++k)
      visit(d.actions[k].child, prob * beh[begin + static_cast<int>(k)]);
  };
  visit(tree.root(), 1.0);
  return {ex, ey};
}

Vec realization_plan(const Treeplex& tp, const Vec& behavior) {
  if (behavior.size() != static_cast<std::size_t>(tp.num_sequences()))
    throw std::invalid_argument("realization_plan: dimension mismatch");
  Vec z(behavior.size(), 0.0);
  z[0] = 1.0;
  for (const auto& s : tp.infosets())
    for (int c = s.child_begin; c < s.child_end; ++c)
      z[c] = z[s.parent_sequence] * behavior[c];
  return z;
}

}  // namespace omd
