#pragma once

#include <cstdint>
#include <vector>

#include "segame/state_set.hpp"

namespace segame {

// Two-player min-parity game on an explicit graph. Side 0 wins a play iff
// the smallest color occurring infinitely often is even; `protagonist`
// marks the nodes where side 0 picks the successor. Every node must have
// at least one successor.
struct ParityGame {
  std::size_t size() const { return color.size(); }

  std::uint32_t add_node(bool side0_owned, unsigned node_color);
  void add_edge(std::uint32_t from, std::uint32_t to);

  std::vector<unsigned> color;
  std::vector<bool> owned0;
  std::vector<std::vector<std::uint32_t>> succ;
  std::vector<std::vector<std::uint32_t>> pred;
};

// Winning partition plus one positional strategy per side, defined on the
// nodes that side owns inside its own winning region (npos elsewhere).
struct ParitySolution {
  static constexpr std::uint32_t npos = UINT32_MAX;
  StateSet win0, win1;
  std::vector<std::uint32_t> strat0, strat1;
};

// Recursive fixpoint solver. Exact on all inputs; choice points break ties
// toward the lowest-index successor so repeated runs are identical.
ParitySolution solve_parity_game(const ParityGame& g);

// Least set containing `target` from which `side` can force reaching it
// inside `mask`: side-owned nodes with one successor in the set join, other
// nodes join when every masked successor is in the set. When `strat` is
// given, each side-owned node added gets its lowest-index successor that
// is strictly closer to the target.
StateSet attract_within(const ParityGame& g, int side, const StateSet& target,
                        const StateSet& mask,
                        std::vector<std::uint32_t>* strat);

} // namespace segame
