// The four built-in extensive-form benchmark games. All builders are
// deterministic; rule choices that the usual informal descriptions leave
// open are documented at each builder.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omdsim/game_tree.hpp"

namespace omd {

// Each player privately rolls one 4-face die (one chance node, 16 joint
// outcomes at probability 1/16). Player X opens with any bid (count c in
// {1,2}, face f in {1..4}); turns alternate with either a strictly higher
// bid — ordered lexicographically by (face, count), face taking precedence —
// or "liar". On "liar" the last bid is checked: if at least c dice among
// both rolls show face f the bidder wins (+1 / -1), otherwise the challenger
// does. Zero-sum.
GameTree build_liars_dice();

// Smuggler (X) secretly loads n in {0..5} illegal items; two bargaining
// rounds of a bribe proposal in {0..3} answered by the sheriff (Y) with
// accept/inspect; only the final answer is binding, earlier answers are
// observed cheap talk. Final accept: payoffs (n - b, b). Final inspect:
// (3, -3) when n = 0, else (-2n, 2n). The sheriff never observes n.
GameTree build_sheriff();

// 2x2 grids; each player secretly places one size-1 ship of value 4; two
// firing rounds, alternating shots starting with X, every hit/miss publicly
// observed, game ends as soon as a ship is sunk. Payoff: 4 per opponent
// ship sunk minus 8 (value doubled) per own ship lost.
GameTree build_battleship();

// h = 3 turns; the prize stack is the fixed order 1,2,3 (a single-outcome
// chance node) unless shuffle_seed is given, in which case the stack is the
// seeded uniform shuffle of {1,2,3}. Both players simultaneously bid one
// unused hand card 1..3; the higher bid wins the prize, ties discard it.
// Limited information: each player observes only its own past bids.
GameTree build_goofspiel(std::optional<std::uint64_t> shuffle_seed = std::nullopt);

// CLI names: "liars-dice", "sheriff", "battleship", "goofspiel".
const std::vector<std::string>& benchmark_names();
bool is_benchmark_name(const std::string& name);
GameTree build_benchmark_tree(const std::string& name);
SequenceFormGame benchmark_game(const std::string& name);

}  // namespace omd
