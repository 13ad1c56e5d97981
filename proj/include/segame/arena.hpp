#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "segame/errors.hpp"
#include "segame/state_set.hpp"

namespace segame {

using State = std::size_t;   // dense index into the arena's state table
using Player = unsigned;     // 1-based player number

// Turn-based multiplayer arena on a finite directed graph. Each state is
// owned by exactly one player, who picks the outgoing edge whenever a play
// visits it. States carry stable string ids for I/O; all algorithms work on
// the dense indices, assigned in insertion order.
class GameArena {
public:
  GameArena() = default;

  // Builder interface: add all states first, then edges (add_edge rejects
  // endpoints that have not been added yet).
  State add_state(const std::string& id, Player owner);
  void add_edge(const std::string& from, const std::string& to);
  void add_edge(State from, State to);
  void set_player_count(unsigned n) { n_players_ = n; }

  // Checks the structural invariants every algorithm relies on:
  // at least one state, owners within [1, player_count], and no dead ends
  // (every state has a successor).
  void validate() const;

  unsigned player_count() const { return n_players_; }
  std::size_t size() const { return states_.size(); }

  State index_of(const std::string& id) const;
  std::optional<State> find(const std::string& id) const;
  const std::string& id_of(State s) const { return states_.at(s).id; }
  Player owner(State s) const { return states_.at(s).owner; }

  const std::vector<State>& successors(State s) const {
    return states_.at(s).succ;
  }
  const std::vector<State>& predecessors(State s) const {
    return states_.at(s).pred;
  }

  StateSet all_states() const;
  StateSet owned_by(Player p) const;

  // Sub-arena induced by `keep`. Edges leaving `keep` are dropped; if that
  // strands a kept state without successors the restriction is rejected,
  // because plays could no longer continue from it. State ids carry over;
  // indices are re-densified in the original order.
  GameArena restrict(const StateSet& keep) const;

  // Largest subset of `keep` whose induced sub-arena has no dead ends
  // (greatest fixpoint of discarding stranded states).
  StateSet prune_dead_ends(const StateSet& keep) const;

  bool has_edge(State from, State to) const;

private:
  struct StateRec {
    std::string id;
    Player owner = 0;
    std::vector<State> succ;  // insertion order — drives deterministic choices
    std::vector<State> pred;
  };

  std::vector<StateRec> states_;
  std::unordered_map<std::string, State> by_id_;
  unsigned n_players_ = 0;
};

// Ultimately periodic play: stem s_0..s_{k-1} followed by the cycle
// c_0..c_{m-1} repeated forever. The cycle must be nonempty and closed
// (an edge from its last state back to its first).
struct Lasso {
  std::vector<State> stem;
  std::vector<State> cycle;

  // States visited infinitely often — exactly the cycle members.
  StateSet inf(std::size_t universe) const;

  // State at play position i (0-based), unrolling the cycle.
  State at(std::size_t i) const;

  void check(const GameArena& arena) const;
};

} // namespace segame
