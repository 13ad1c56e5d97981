#pragma once

// Shared helpers for building random games and objectives in tests.
// All generators take an explicit std::mt19937 so every test run is
// reproducible from the seed written next to the call site.

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "segame/arena.hpp"
#include "segame/objectives.hpp"

namespace testutil {

using segame::GameArena;
using segame::Lasso;
using segame::Objective;
using segame::State;
using segame::StateSet;

inline std::size_t pick(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return lo + rng() % (hi - lo + 1);
}

// Total arena with `n_states` states, owners drawn uniformly, and between one
// and `max_out` distinct successors per state.  Every state has at least one
// outgoing edge, so the arena always validates.
inline GameArena random_arena(std::mt19937& rng, std::size_t n_states,
                              unsigned players, std::size_t max_out = 3) {
  GameArena a;
  a.set_player_count(players);
  for (std::size_t i = 0; i < n_states; ++i) {
    a.add_state("s" + std::to_string(i),
                static_cast<unsigned>(1 + rng() % players));
  }
  for (State s = 0; s < static_cast<State>(n_states); ++s) {
    std::size_t degree = pick(rng, 1, std::min(max_out, n_states));
    std::vector<State> order(n_states);
    for (std::size_t i = 0; i < n_states; ++i) order[i] = static_cast<State>(i);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < degree; ++i) a.add_edge(s, order[i]);
  }
  a.validate();
  return a;
}

// Each state independently included with probability 1/2.
inline StateSet random_set(std::mt19937& rng, std::size_t n_states) {
  StateSet set(n_states);
  for (State s = 0; s < static_cast<State>(n_states); ++s)
    if (rng() & 1u) set.set(s);
  return set;
}

inline Objective random_buchi(std::mt19937& rng, std::size_t n_states) {
  return Objective::buchi(random_set(rng, n_states));
}

inline Objective random_cobuchi(std::mt19937& rng, std::size_t n_states) {
  return Objective::cobuchi(random_set(rng, n_states));
}

inline Objective random_parity(std::mt19937& rng, std::size_t n_states,
                               unsigned max_color = 3) {
  std::vector<unsigned> colors(n_states);
  for (auto& c : colors) c = rng() % (max_color + 1);
  return Objective::parity(std::move(colors));
}

// One of the three positionally determined classes, uniformly.
inline Objective random_positional(std::mt19937& rng, std::size_t n_states) {
  switch (rng() % 3) {
    case 0: return random_buchi(rng, n_states);
    case 1: return random_cobuchi(rng, n_states);
    default: return random_parity(rng, n_states);
  }
}

// The three-player round-robin game used across the suites: s0, s1, s2 form
// a clique owned by players 1, 2, 3; each also has a private sink s3/s4/s5.
// Player k wants to revisit the clique state owned by player k+1 (mod 3) or
// to end up in the sink reachable from that player's clique state.
inline GameArena fig1_arena() {
  GameArena a;
  a.set_player_count(3);
  a.add_state("s0", 1);
  a.add_state("s1", 2);
  a.add_state("s2", 3);
  a.add_state("s3", 1);
  a.add_state("s4", 1);
  a.add_state("s5", 1);
  a.add_edge("s0", "s1");
  a.add_edge("s0", "s2");
  a.add_edge("s0", "s3");
  a.add_edge("s1", "s0");
  a.add_edge("s1", "s2");
  a.add_edge("s1", "s4");
  a.add_edge("s2", "s0");
  a.add_edge("s2", "s1");
  a.add_edge("s2", "s5");
  a.add_edge("s3", "s3");
  a.add_edge("s4", "s4");
  a.add_edge("s5", "s5");
  a.validate();
  return a;
}

inline StateSet ids(const GameArena& a,
                    std::initializer_list<const char*> names) {
  StateSet set(a.size());
  for (const char* n : names) set.set(a.index_of(n));
  return set;
}

inline std::vector<segame::ObjectiveExpr> fig1_objectives(const GameArena& a) {
  using segame::ObjectiveExpr;
  return {ObjectiveExpr::lit(Objective::buchi(ids(a, {"s2", "s4"}))),
          ObjectiveExpr::lit(Objective::buchi(ids(a, {"s0", "s5"}))),
          ObjectiveExpr::lit(Objective::buchi(ids(a, {"s1", "s3"})))};
}

// Random lasso inside `a`: walk from a random state until a state repeats,
// then split the walk at the first occurrence of the repeated state.
inline Lasso random_lasso(std::mt19937& rng, const GameArena& a) {
  std::vector<State> walk;
  std::map<State, std::size_t> first_seen;
  State cur = static_cast<State>(rng() % a.size());
  while (true) {
    auto it = first_seen.find(cur);
    if (it != first_seen.end()) {
      Lasso lasso;
      lasso.stem.assign(walk.begin(), walk.begin() + it->second);
      lasso.cycle.assign(walk.begin() + it->second, walk.end());
      lasso.check(a);
      return lasso;
    }
    first_seen.emplace(cur, walk.size());
    walk.push_back(cur);
    const auto& succ = a.successors(cur);
    cur = succ[rng() % succ.size()];
  }
}

}  // namespace testutil
