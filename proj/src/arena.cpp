#include "segame/arena.hpp"

#include <algorithm>

namespace segame {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::ok: return "ok";
    case Errc::duplicate_state: return "duplicate_state";
    case Errc::unknown_owner: return "unknown_owner";
    case Errc::player_out_of_range: return "player_out_of_range";
    case Errc::dangling_edge: return "dangling_edge";
    case Errc::dead_end_state: return "dead_end_state";
    case Errc::unknown_state: return "unknown_state";
    case Errc::foreign_state: return "foreign_state";
    case Errc::empty_arena: return "empty_arena";
    case Errc::bad_objective: return "bad_objective";
    case Errc::shape_mismatch: return "shape_mismatch";
    case Errc::memory_budget_exceeded: return "memory_budget_exceeded";
    case Errc::budget_exceeded: return "budget_exceeded";
    case Errc::parse_error: return "parse_error";
    case Errc::invalid_lasso: return "invalid_lasso";
    case Errc::invalid_profile: return "invalid_profile";
    case Errc::no_witness: return "no_witness";
    case Errc::io_error: return "io_error";
    case Errc::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

State GameArena::add_state(const std::string& id, Player owner) {
  if (by_id_.count(id))
    fail(Errc::duplicate_state, "duplicate state id '" + id + "'");
  State s = states_.size();
  states_.push_back(StateRec{id, owner, {}, {}});
  by_id_.emplace(id, s);
  return s;
}

void GameArena::add_edge(const std::string& from, const std::string& to) {
  auto f = by_id_.find(from);
  if (f == by_id_.end())
    fail(Errc::dangling_edge, "edge source '" + from + "' is not a state");
  auto t = by_id_.find(to);
  if (t == by_id_.end())
    fail(Errc::dangling_edge, "edge target '" + to + "' is not a state");
  add_edge(f->second, t->second);
}

void GameArena::add_edge(State from, State to) {
  if (from >= states_.size())
    fail(Errc::dangling_edge, "edge source index out of range");
  if (to >= states_.size())
    fail(Errc::dangling_edge, "edge target index out of range");
  if (has_edge(from, to)) return;  // edges form a set: duplicates collapse
  states_[from].succ.push_back(to);
  states_[to].pred.push_back(from);
}

void GameArena::validate() const {
  if (states_.empty()) fail(Errc::empty_arena, "arena has no states");
  if (n_players_ == 0)
    fail(Errc::player_out_of_range, "player count must be at least 1");
  for (State s = 0; s < states_.size(); ++s) {
    const auto& rec = states_[s];
    if (rec.owner < 1 || rec.owner > n_players_)
      fail(Errc::unknown_owner, "state '" + rec.id + "' owner " +
                                    std::to_string(rec.owner) +
                                    " outside 1.." + std::to_string(n_players_));
    if (rec.succ.empty())
      fail(Errc::dead_end_state, "state '" + rec.id + "' has no successor");
  }
}

State GameArena::index_of(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end())
    fail(Errc::unknown_state, "unknown state id '" + id + "'");
  return it->second;
}

std::optional<State> GameArena::find(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

StateSet GameArena::all_states() const {
  StateSet s(states_.size());
  for (State i = 0; i < states_.size(); ++i) s.set(i);
  return s;
}

StateSet GameArena::owned_by(Player p) const {
  StateSet s(states_.size());
  for (State i = 0; i < states_.size(); ++i)
    if (states_[i].owner == p) s.set(i);
  return s;
}

GameArena GameArena::restrict(const StateSet& keep) const {
  if (keep.universe() != states_.size())
    fail(Errc::foreign_state, "restriction set built for a different arena");
  GameArena sub;
  sub.set_player_count(n_players_);
  std::vector<State> remap(states_.size(), static_cast<State>(-1));
  for (State s = 0; s < states_.size(); ++s)
    if (keep.test(s)) remap[s] = sub.add_state(states_[s].id, states_[s].owner);
  for (State s = 0; s < states_.size(); ++s) {
    if (!keep.test(s)) continue;
    bool any = false;
    for (State t : states_[s].succ) {
      if (!keep.test(t)) continue;
      sub.add_edge(remap[s], remap[t]);
      any = true;
    }
    if (!any)
      fail(Errc::dead_end_state, "restriction strands state '" + states_[s].id +
                                     "' without successors");
  }
  return sub;
}

StateSet GameArena::prune_dead_ends(const StateSet& keep) const {
  if (keep.universe() != states_.size())
    fail(Errc::foreign_state, "pruning set built for a different arena");
  StateSet live = keep;
  bool changed = true;
  while (changed) {
    changed = false;
    for (State s = 0; s < states_.size(); ++s) {
      if (!live.test(s)) continue;
      bool any = false;
      for (State t : states_[s].succ)
        if (live.test(t)) { any = true; break; }
      if (!any) {
        live.reset(s);
        changed = true;
      }
    }
  }
  return live;
}

bool GameArena::has_edge(State from, State to) const {
  const auto& succ = states_.at(from).succ;
  return std::find(succ.begin(), succ.end(), to) != succ.end();
}

StateSet Lasso::inf(std::size_t universe) const {
  StateSet s(universe);
  for (State c : cycle) s.set(c);
  return s;
}

State Lasso::at(std::size_t i) const {
  if (i < stem.size()) return stem[i];
  return cycle[(i - stem.size()) % cycle.size()];
}

void Lasso::check(const GameArena& arena) const {
  if (cycle.empty()) fail(Errc::invalid_lasso, "lasso cycle is empty");
  auto check_state = [&](State s) {
    if (s >= arena.size())
      fail(Errc::invalid_lasso, "lasso references state index out of range");
  };
  for (State s : stem) check_state(s);
  for (State s : cycle) check_state(s);
  auto check_step = [&](State a, State b) {
    if (!arena.has_edge(a, b))
      fail(Errc::invalid_lasso, "lasso step " + arena.id_of(a) + " -> " +
                                    arena.id_of(b) + " is not an edge");
  };
  for (std::size_t i = 0; i + 1 < stem.size(); ++i)
    check_step(stem[i], stem[i + 1]);
  if (!stem.empty()) check_step(stem.back(), cycle.front());
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i)
    check_step(cycle[i], cycle[i + 1]);
  check_step(cycle.back(), cycle.front());
}

} // namespace segame
