#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "segame/arena.hpp"
#include "segame/objectives.hpp"
#include "segame/products.hpp"

namespace segame {

// Default cap on record/product/subset-search sizes. Exceeding a budget is
// a reported error (MemoryBudgetExceeded), never silent truncation.
inline constexpr std::size_t kDefaultBudget = 1'000'000;

std::size_t solver_budget();
void set_solver_budget(std::size_t budget);

// Two-player view of a multiplayer arena: the coalition P (protagonist)
// against everyone else. The protagonist wins plays satisfying `objective`.
struct CoalitionGame {
  GameArena arena;
  StateSet protagonist_states;
  ObjectiveExpr objective;
};

CoalitionGame make_coalition_game(const GameArena& arena,
                                  const std::vector<Player>& coalition,
                                  ObjectiveExpr objective);

// A set of states plus a tag naming the computation that produced it.
struct Region {
  StateSet states;
  std::string provenance;
};

// Finite-memory strategy for the protagonist side of a solved coalition
// game, in Moore form: memory folds the strict past, the move at state s
// with memory m consults the product node (s, m). Total `step`; `move` is
// defined on protagonist-owned states inside the winning region.
class CoalitionStrategy {
public:
  CoalitionStrategy();  // no-move strategy with trivial memory

  std::size_t initial_memory() const;
  std::size_t step(std::size_t mem, State s) const;
  std::optional<State> move(std::size_t mem, State s) const;
  std::size_t memory_count() const;

private:
  friend struct SolverAccess;
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Least set from which the protagonist can force reaching `target`.
Region attractor(const CoalitionGame& g, const StateSet& target);

// Exact winning region for a single parity / Muller objective leaf.
Region solve_parity(const CoalitionGame& g);
Region solve_muller(const CoalitionGame& g);

// ⟨⟨P⟩⟩(e): states from which coalition P can force e against the rest.
// Dispatch: collapse e to one base objective when the closure laws allow,
// else try the two guard-shape encodings, else translate to Muller.
// Büchi/co-Büchi/parity solve directly; Streett/Rabin/Muller go through
// their record products.
Region coalition_region(const GameArena& arena,
                        const std::vector<Player>& coalition,
                        const ObjectiveExpr& e);

struct CoalitionSolve {
  Region region;
  CoalitionStrategy strategy;
};

// coalition_region plus the winning strategy realizing it.
CoalitionSolve coalition_solve(const GameArena& arena,
                               const std::vector<Player>& coalition,
                               const ObjectiveExpr& e);

// ⟨⟨[1,n]⟩⟩(e): states admitting a single play satisfying e. `within`
// (optional) confines the whole play to a subset of states.
Region solve_cooperative(const GameArena& arena, const ObjectiveExpr& e);
Region solve_cooperative(const GameArena& arena, const ObjectiveExpr& e,
                         const StateSet& within);

// A lasso from `from` witnessing membership in the cooperative region.
// Throws NoWitness when `from` lies outside it.
Lasso cooperative_witness(const GameArena& arena, const ObjectiveExpr& e,
                          State from);
Lasso cooperative_witness(const GameArena& arena, const ObjectiveExpr& e,
                          State from, const StateSet& within);

} // namespace segame
