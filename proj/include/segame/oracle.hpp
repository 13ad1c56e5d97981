#pragma once

#include <optional>
#include <vector>

#include "segame/arena.hpp"
#include "segame/secure_eq.hpp"

namespace segame {

// Evidence that `player` can deviate from the checked profile and move the
// payoff to one it strictly prefers; `witness` is the deviating play,
// projected back onto the arena.
struct DeviationReport {
  Player player;
  PayoffProfile achievable;
  Lasso witness;
};

// Is the profile a secure equilibrium at s? Checks every player against
// every payoff it would prefer over the baseline by solving a one-chooser
// product (the other players' machines baked into the arena, the candidate
// free): nullopt when no player can reach a preferred payoff, else the
// first report found (players in order, payoff targets in ascending
// bit-vector order, player 1's bit most significant).
std::optional<DeviationReport> verify_se(const GameArena& arena,
                                         const ObjectiveProfile& phi,
                                         const StrategyProfile& profile,
                                         State s);

// Brute-force ⟨⟨P⟩⟩(e) by enumerating coalition strategies that look back
// at most `memory_bound` states (1 = positional, 2 = previous state; 0 is
// treated as 1): a state joins when some enumerated strategy forces every
// consistent play into e, checked exhaustively on the induced graph.
// Exact for objectives the coalition can win positionally. Instances are
// guarded (≤ 8 states, bound ≤ 2, enumeration within the solver budget);
// beyond the guard it raises BudgetExceeded.
Region brute_region(const GameArena& arena,
                    const std::vector<Player>& coalition,
                    const ObjectiveExpr& e, std::size_t memory_bound);

// Search all joint profiles within the same look-back bound for one that
// yields payoff v from s and passes verify_se. The first hit (odometer
// order) is returned; nullopt means no such profile within the bound,
// which is evidence against existence, not proof. Same instance guards.
std::optional<StrategyProfile> enumerate_bounded_se(const GameArena& arena,
                                                    const ObjectiveProfile& phi,
                                                    State s, const Constraint& v,
                                                    std::size_t memory_bound);

} // namespace segame
