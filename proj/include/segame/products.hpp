#pragma once

#include <memory>
#include <vector>

#include "segame/arena.hpp"
#include "segame/formula.hpp"
#include "segame/objectives.hpp"
#include "segame/parity.hpp"

namespace segame {

// Deterministic finite memory folded over the states a play visits, with a
// parity color for every (record-so-far, current state) pair such that the
// smallest color seen infinitely often is even iff the play satisfies the
// objective the automaton was built for. Records are interned lazily;
// exceeding the budget raises MemoryBudgetExceeded.
class RecordAutomaton {
public:
  virtual ~RecordAutomaton() = default;

  // Record of the empty history.
  virtual std::size_t initial() const = 0;

  // Record after additionally visiting s. Total; may intern a new record.
  virtual std::size_t fold(std::size_t rec, State s) const = 0;

  // Color of being at s with strict-past record `rec_before`.
  virtual unsigned color(std::size_t rec_before, State s) const = 0;

  virtual std::size_t record_count() const = 0;
};

// Latest-appearance record for a Muller formula: permutations of the states
// the formula mentions, most recent first. Visiting s at depth h while the
// set visited since s's previous visit satisfies (or not) the formula gives
// an even (or odd) color, lower for deeper hits.
std::unique_ptr<RecordAutomaton> lar_automaton(const GameArena& arena,
                                               const Formula& phi,
                                               std::size_t budget);

// Index-appearance record for a pair list: permutations of pair indices,
// most recently granted first. `rabin_side` shifts every color by one,
// turning the Streett solution into the Rabin solution for the same pairs.
std::unique_ptr<RecordAutomaton> iar_automaton(const GameArena& arena,
                                               const std::vector<AccPair>& pairs,
                                               bool rabin_side,
                                               std::size_t budget);

// Memoryless automaton assigning each state its own parity color.
std::unique_ptr<RecordAutomaton> plain_automaton(std::vector<unsigned> colors);

// Arena × records, as a parity game. Node (s, r) carries r = record of the
// strict past; edges go to (t, fold(r, s)). Every base state gets an entry
// node (s, initial): by record-independence of the constructions, s is
// winning in the base game iff its entry node is winning in the product.
struct ProductGame {
  ParityGame game;
  std::vector<State> node_state;
  std::vector<std::size_t> node_rec;
  std::vector<std::uint32_t> entry;  // base state -> node id
  std::shared_ptr<const RecordAutomaton> records;

  // Node id for (s, rec), or npos when that pair was never reached.
  std::uint32_t find_node(State s, std::size_t rec) const;
  static constexpr std::uint32_t npos = UINT32_MAX;
};

ProductGame build_product(const GameArena& arena, const StateSet& protagonist,
                          std::shared_ptr<const RecordAutomaton> records,
                          std::size_t budget);

} // namespace segame
