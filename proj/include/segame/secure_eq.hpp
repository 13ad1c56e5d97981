#pragma once

#include <vector>

#include "segame/arena.hpp"
#include "segame/objectives.hpp"
#include "segame/zero_sum.hpp"

namespace segame {

// One objective per player; index k holds player k+1's objective.
using ObjectiveProfile = std::vector<ObjectiveExpr>;

// One win/lose bit per player, player 1 first.
struct PayoffProfile {
  std::vector<int> bits;
  bool operator==(const PayoffProfile& o) const { return bits == o.bits; }
};

// Demanded payoff profile: W = winners (bit 1), L = losers (bit 0).
struct Constraint {
  std::vector<int> bits;

  std::vector<Player> winners() const;
  std::vector<Player> losers() const;
  void check(std::size_t player_count) const;
};

// Finite-memory strategy in explicit table form. `update` folds the current
// state into the memory (total); `move` picks the successor on states the
// player owns (no_move elsewhere).
struct MooreStrategy {
  static constexpr State no_move = static_cast<State>(-1);

  Player player = 1;
  std::size_t memory_count = 1;
  std::size_t initial = 0;
  std::vector<std::vector<std::size_t>> update;  // [memory][state] -> memory
  std::vector<std::vector<State>> move;          // [memory][state] -> state

  std::size_t step(std::size_t mem, State s) const { return update[mem][s]; }
  State move_at(std::size_t mem, State s) const { return move[mem][s]; }
  void check_against(const GameArena& arena) const;
};

// One strategy per player, player k+1 at index k.
struct StrategyProfile {
  std::vector<MooreStrategy> players;
  void check_against(const GameArena& arena) const;
};

// Strict preference ≺_i: player i likes w better than v when i's own bit
// goes up, or stays equal while someone else's strictly drops (and none
// rises). Irreflexive and antisymmetric.
bool prefers(Player i, const PayoffProfile& v, const PayoffProfile& w);

// The unique play everyone following `profile` produces from s, folded
// into lasso form via cycle detection on the joint state×memory dynamics.
Lasso outcome(const GameArena& arena, const StrategyProfile& profile,
              State s);

// Bit per player: does the play satisfy that player's objective.
PayoffProfile payoff(const GameArena& arena, const Lasso& l,
                     const ObjectiveProfile& phi);

// What the coalition of everyone-but-i must force after i deviates:
// winners get φ_W ∪ φ_L ∪ ¬φ_i, losers get (φ_W ∪ φ_L) ∩ ¬φ_i, with
// φ_W = ⋂_{j∈W} φ_j (empty: all plays) and φ_L = ⋃_{j∈L} φ_j (empty: none).
ObjectiveExpr deviation_guard(const ObjectiveProfile& phi, const Constraint& v,
                              Player i);

// φ_W ∩ ¬φ_L: the plays whose payoff is exactly v.
ObjectiveExpr constrained_objective(const ObjectiveProfile& phi,
                                    const Constraint& v);

// Step 1: states where every player's deviation can be answered,
// A_v = ⋂_i ⟨⟨[1,n]∖{i}⟩⟩(deviation_guard(φ, v, i)).
Region compute_a_v(const GameArena& arena, const ObjectiveProfile& phi,
                   const Constraint& v);

// Step 2: states of the dead-end-free core of A_v from which a play inside
// that core satisfies φ_W ∩ ¬φ_L.
Region compute_se_v(const GameArena& arena, const ObjectiveProfile& phi,
                    const Constraint& v);

// Is there a secure equilibrium from s with payoff exactly v?
bool decide_constrained_se(const GameArena& arena, const ObjectiveProfile& phi,
                           State s, const Constraint& v);

// A strategy profile realizing the decision: everyone follows a cooperation
// lasso; the first player to leave it is retaliated against forever by the
// rest, using the coalition strategy for that player's deviation guard
// started at the state the deviation reached. Throws NoWitness when
// decide_constrained_se is false at s.
StrategyProfile build_witness(const GameArena& arena,
                              const ObjectiveProfile& phi, State s,
                              const Constraint& v);

} // namespace segame
