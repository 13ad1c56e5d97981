#include "segame/secure_eq.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace segame {

std::vector<Player> Constraint::winners() const {
  std::vector<Player> out;
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) out.push_back(static_cast<Player>(k + 1));
  return out;
}

std::vector<Player> Constraint::losers() const {
  std::vector<Player> out;
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (!bits[k]) out.push_back(static_cast<Player>(k + 1));
  return out;
}

void Constraint::check(std::size_t player_count) const {
  if (bits.size() != player_count)
    fail(Errc::shape_mismatch,
         "constraint has " + std::to_string(bits.size()) + " bits for " +
             std::to_string(player_count) + " players");
  for (int b : bits)
    if (b != 0 && b != 1)
      fail(Errc::invalid_argument, "constraint bits must be 0 or 1");
}

void MooreStrategy::check_against(const GameArena& arena) const {
  if (player < 1 || player > arena.player_count())
    fail(Errc::player_out_of_range, "strategy for unknown player");
  if (memory_count == 0 || initial >= memory_count)
    fail(Errc::invalid_profile, "strategy initial memory out of range");
  if (update.size() != memory_count || move.size() != memory_count)
    fail(Errc::invalid_profile, "strategy table has wrong row count");
  for (std::size_t m = 0; m < memory_count; ++m) {
    if (update[m].size() != arena.size() || move[m].size() != arena.size())
      fail(Errc::invalid_profile, "strategy table has wrong column count");
    for (State s = 0; s < arena.size(); ++s) {
      if (update[m][s] >= memory_count)
        fail(Errc::invalid_profile, "memory update leaves the memory set");
      if (arena.owner(s) == player) {
        if (move[m][s] == no_move || !arena.has_edge(s, move[m][s]))
          fail(Errc::invalid_profile,
               "move at " + arena.id_of(s) + " is not along an edge");
      } else if (move[m][s] != no_move) {
        fail(Errc::invalid_profile, "move given on a state the player "
                                    "does not own");
      }
    }
  }
}

void StrategyProfile::check_against(const GameArena& arena) const {
  if (players.size() != arena.player_count())
    fail(Errc::invalid_profile, "profile must hold one strategy per player");
  for (std::size_t k = 0; k < players.size(); ++k) {
    if (players[k].player != k + 1)
      fail(Errc::invalid_profile, "profile strategies out of player order");
    players[k].check_against(arena);
  }
}

bool prefers(Player i, const PayoffProfile& v, const PayoffProfile& w) {
  if (v.bits.size() != w.bits.size())
    fail(Errc::shape_mismatch, "payoff profiles of different lengths");
  if (i < 1 || i > v.bits.size())
    fail(Errc::player_out_of_range, "player outside the profile");
  std::size_t k = i - 1;
  if (v.bits[k] < w.bits[k]) return true;
  if (v.bits[k] != w.bits[k]) return false;
  bool some_drop = false;
  for (std::size_t j = 0; j < v.bits.size(); ++j) {
    if (v.bits[j] < w.bits[j]) return false;
    if (v.bits[j] > w.bits[j]) some_drop = true;
  }
  return some_drop;
}

Lasso outcome(const GameArena& arena, const StrategyProfile& profile,
              State s) {
  arena.validate();
  profile.check_against(arena);
  if (s >= arena.size()) fail(Errc::unknown_state, "outcome start missing");

  std::size_t n = profile.players.size();
  std::vector<std::size_t> mem(n);
  for (std::size_t k = 0; k < n; ++k) mem[k] = profile.players[k].initial;

  std::map<std::vector<std::size_t>, std::size_t> seen;
  std::vector<State> seq;
  State at = s;
  for (;;) {
    std::vector<std::size_t> key = mem;
    key.push_back(at);
    auto [it, fresh] = seen.emplace(std::move(key), seq.size());
    if (!fresh) {
      Lasso l;
      l.stem.assign(seq.begin(), seq.begin() + it->second);
      l.cycle.assign(seq.begin() + it->second, seq.end());
      l.check(arena);
      return l;
    }
    seq.push_back(at);
    Player owner = arena.owner(at);
    State next = profile.players[owner - 1].move_at(mem[owner - 1], at);
    for (std::size_t k = 0; k < n; ++k)
      mem[k] = profile.players[k].step(mem[k], at);
    at = next;
  }
}

PayoffProfile payoff(const GameArena& arena, const Lasso& l,
                     const ObjectiveProfile& phi) {
  if (phi.empty())
    fail(Errc::player_out_of_range, "payoff needs at least one objective");
  PayoffProfile p;
  for (const auto& obj : phi)
    p.bits.push_back(satisfies(arena, l, obj) ? 1 : 0);
  return p;
}

ObjectiveExpr deviation_guard(const ObjectiveProfile& phi, const Constraint& v,
                              Player i) {
  v.check(phi.size());
  if (i < 1 || i > phi.size())
    fail(Errc::player_out_of_range, "guard for unknown player");

  auto winners = v.winners();
  auto losers = v.losers();
  std::vector<ObjectiveExpr> w_lits;
  for (Player j : winners) w_lits.push_back(phi[j - 1]);

  std::vector<ObjectiveExpr> disjuncts;
  if (!winners.empty()) disjuncts.push_back(ObjectiveExpr::conj(w_lits));
  for (Player j : losers) disjuncts.push_back(phi[j - 1]);

  if (v.bits[i - 1]) {
    // Winner: φ_W ∪ φ_L ∪ ¬φ_i.
    disjuncts.push_back(ObjectiveExpr::negation(phi[i - 1]));
    return ObjectiveExpr::disj(std::move(disjuncts));
  }
  // Loser: (φ_W ∪ φ_L) ∩ ¬φ_i; with W empty the left side is all plays.
  if (winners.empty()) return ObjectiveExpr::negation(phi[i - 1]);
  return ObjectiveExpr::conj({ObjectiveExpr::disj(std::move(disjuncts)),
                              ObjectiveExpr::negation(phi[i - 1])});
}

ObjectiveExpr constrained_objective(const ObjectiveProfile& phi,
                                    const Constraint& v) {
  v.check(phi.size());
  std::vector<ObjectiveExpr> kids;
  for (Player j : v.winners()) kids.push_back(phi[j - 1]);
  for (Player j : v.losers())
    kids.push_back(ObjectiveExpr::negation(phi[j - 1]));
  return ObjectiveExpr::conj(std::move(kids));
}

namespace {

void check_pipeline_inputs(const GameArena& arena, const ObjectiveProfile& phi,
                           const Constraint& v) {
  arena.validate();
  if (phi.size() != arena.player_count())
    fail(Errc::shape_mismatch, "objective profile has " +
                                   std::to_string(phi.size()) +
                                   " entries for " +
                                   std::to_string(arena.player_count()) +
                                   " players");
  for (const auto& obj : phi) obj.check_against(arena);
  v.check(phi.size());
}

std::vector<Player> everyone_but(std::size_t n, Player i) {
  std::vector<Player> out;
  for (Player j = 1; j <= n; ++j)
    if (j != i) out.push_back(j);
  return out;
}

struct Step1 {
  std::vector<CoalitionSolve> solves;  // index i-1: coalition against i
  StateSet a_v;
};

Step1 step1(const GameArena& arena, const ObjectiveProfile& phi,
            const Constraint& v) {
  Step1 out;
  out.a_v = arena.all_states();
  std::size_t n = arena.player_count();
  for (Player i = 1; i <= n; ++i) {
    out.solves.push_back(coalition_solve(arena, everyone_but(n, i),
                                         deviation_guard(phi, v, i)));
    out.a_v &= out.solves.back().region.states;
  }
  return out;
}

} // namespace

Region compute_a_v(const GameArena& arena, const ObjectiveProfile& phi,
                   const Constraint& v) {
  check_pipeline_inputs(arena, phi, v);
  return Region{step1(arena, phi, v).a_v, "a-v"};
}

Region compute_se_v(const GameArena& arena, const ObjectiveProfile& phi,
                    const Constraint& v) {
  check_pipeline_inputs(arena, phi, v);
  StateSet core = arena.prune_dead_ends(step1(arena, phi, v).a_v);
  Region coop = solve_cooperative(arena, constrained_objective(phi, v), core);
  return Region{coop.states, "se-v"};
}

bool decide_constrained_se(const GameArena& arena, const ObjectiveProfile& phi,
                           State s, const Constraint& v) {
  if (s >= arena.size())
    fail(Errc::unknown_state, "decision state outside the arena");
  return compute_se_v(arena, phi, v).states.test(s);
}

// ---------------------------------------------------------------------------
// Witness construction.

namespace {

// Memory of the supervisory machine every player runs. `at` remembers the
// lasso position of the previous state while the play conforms; `ret`
// remembers whom to retaliate against, the coalition strategy's record,
// and whether the retaliation is the punitive one (deny the deviator's own
// objective) or the guard fallback.
struct Mem {
  enum class K { start, at, ret, lost } k = K::start;
  std::size_t q = 0;   // at: position of the previous state
  Player d = 0;        // ret: the deviating player
  std::size_t r = 0;   // ret: coalition record of the strict past
  bool p = false;      // ret: punitive strategy in force

  auto tie() const {
    return std::make_tuple(static_cast<int>(k), q, d, r, p);
  }
  bool operator<(const Mem& o) const { return tie() < o.tie(); }
};

struct WitnessBuild {
  const GameArena& arena;
  const std::vector<CoalitionSolve>& solves;
  // Per player, the harsher retaliation ⟨⟨-i⟩⟩(¬φ_i); solved only for
  // winners under v (for losers the guard already denies φ_i).
  const std::vector<CoalitionSolve>& punishments;
  const Lasso& lasso;

  std::vector<Mem> mems;
  std::map<Mem, std::size_t> ids;
  std::vector<std::vector<std::size_t>> update;  // shared by all players

  std::size_t lasso_len() const {
    return lasso.stem.size() + lasso.cycle.size();
  }
  State lasso_at(std::size_t q) const { return lasso.at(q); }
  std::size_t succ(std::size_t q) const {
    return q + 1 == lasso_len() ? lasso.stem.size() : q + 1;
  }

  std::size_t intern(const Mem& m) {
    auto [it, fresh] = ids.emplace(m, mems.size());
    if (fresh) {
      if (mems.size() >= solver_budget())
        fail(Errc::memory_budget_exceeded,
             "witness memory exceeds the configured budget");
      mems.push_back(m);
    }
    return it->second;
  }

  const CoalitionStrategy& retaliation(Player d, bool punitive) const {
    return punitive ? punishments[d - 1].strategy : solves[d - 1].strategy;
  }

  // Punish the deviator outright when its own objective can be denied from
  // the state the deviation lands on; otherwise fall back to the guard.
  bool punish_at(Player d, State t) const {
    const StateSet& can = punishments[d - 1].region.states;
    return can.universe() == arena.size() && can.test(t);
  }

  Mem after(const Mem& m, State t) {
    switch (m.k) {
      case Mem::K::start:
        if (t == lasso_at(0)) return {Mem::K::at, 0, 0, 0, false};
        return {Mem::K::lost, 0, 0, 0, false};
      case Mem::K::at: {
        std::size_t next = succ(m.q);
        if (t == lasso_at(next)) return {Mem::K::at, next, 0, 0, false};
        Player d = arena.owner(lasso_at(m.q));
        bool p = punish_at(d, t);
        const auto& strat = retaliation(d, p);
        return {Mem::K::ret, 0, d, strat.step(strat.initial_memory(), t), p};
      }
      case Mem::K::ret:
        return {Mem::K::ret, 0, m.d, retaliation(m.d, m.p).step(m.r, t), m.p};
      case Mem::K::lost: return m;
    }
    return m;
  }

  // Close the memory set under `after` over every state and fill the
  // shared update table.
  void closure() {
    intern(Mem{});
    for (std::size_t id = 0; id < mems.size(); ++id) {
      update.emplace_back(arena.size());
      for (State t = 0; t < arena.size(); ++t) {
        Mem next = after(mems[id], t);  // may grow `mems`
        update[id][t] = intern(next);
      }
    }
  }

  State first_succ(State t) const { return arena.successors(t).front(); }

  State retaliation_move(Player d, bool punitive, std::size_t rec,
                         State t) const {
    if (auto mv = retaliation(d, punitive).move(rec, t)) return *mv;
    return first_succ(t);
  }

  State move_for(Player i, const Mem& m, State t) const {
    switch (m.k) {
      case Mem::K::start:
        if (t == lasso_at(0)) return lasso_at(succ(0));
        return first_succ(t);
      case Mem::K::at: {
        std::size_t next = succ(m.q);
        if (t == lasso_at(next)) return lasso_at(succ(next));
        Player d = arena.owner(lasso_at(m.q));
        if (d == i) return first_succ(t);
        bool p = punish_at(d, t);
        return retaliation_move(d, p, retaliation(d, p).initial_memory(), t);
      }
      case Mem::K::ret:
        if (m.d == i) return first_succ(t);
        return retaliation_move(m.d, m.p, m.r, t);
      case Mem::K::lost: return first_succ(t);
    }
    return first_succ(t);
  }

  MooreStrategy strategy_for(Player i) const {
    MooreStrategy s;
    s.player = i;
    s.memory_count = mems.size();
    s.initial = 0;
    s.update = update;
    s.move.assign(mems.size(),
                  std::vector<State>(arena.size(), MooreStrategy::no_move));
    for (std::size_t id = 0; id < mems.size(); ++id)
      for (State t : arena.owned_by(i).members())
        s.move[id][t] = move_for(i, mems[id], t);
    return minimized(s);
  }

  // Merge memories with identical move rows and compatible updates
  // (standard partition refinement); keeps behavior identical.
  static MooreStrategy minimized(const MooreStrategy& s) {
    std::size_t m_count = s.memory_count;
    std::vector<std::size_t> cls(m_count);
    {
      std::map<std::vector<State>, std::size_t> by_row;
      for (std::size_t m = 0; m < m_count; ++m)
        cls[m] = by_row.emplace(s.move[m], by_row.size()).first->second;
    }
    for (;;) {
      std::map<std::vector<std::size_t>, std::size_t> by_sig;
      std::vector<std::size_t> next(m_count);
      for (std::size_t m = 0; m < m_count; ++m) {
        std::vector<std::size_t> sig{cls[m]};
        for (std::size_t u : s.update[m]) sig.push_back(cls[u]);
        next[m] = by_sig.emplace(std::move(sig), by_sig.size()).first->second;
      }
      bool stable = by_sig.size() ==
                    *std::max_element(cls.begin(), cls.end()) + 1;
      cls = std::move(next);
      if (stable) break;
    }
    std::size_t classes = *std::max_element(cls.begin(), cls.end()) + 1;
    std::vector<std::size_t> rep(classes, SIZE_MAX);
    for (std::size_t m = 0; m < m_count; ++m)
      if (rep[cls[m]] == SIZE_MAX) rep[cls[m]] = m;

    MooreStrategy out;
    out.player = s.player;
    out.memory_count = classes;
    out.initial = cls[s.initial];
    out.update.resize(classes);
    out.move.resize(classes);
    for (std::size_t c = 0; c < classes; ++c) {
      out.move[c] = s.move[rep[c]];
      out.update[c].reserve(s.update[rep[c]].size());
      for (std::size_t u : s.update[rep[c]]) out.update[c].push_back(cls[u]);
    }
    return out;
  }
};

} // namespace

StrategyProfile build_witness(const GameArena& arena,
                              const ObjectiveProfile& phi, State s,
                              const Constraint& v) {
  check_pipeline_inputs(arena, phi, v);
  if (s >= arena.size())
    fail(Errc::unknown_state, "witness start outside the arena");

  Step1 one = step1(arena, phi, v);
  StateSet core = arena.prune_dead_ends(one.a_v);
  Lasso coop;
  try {
    coop = cooperative_witness(arena, constrained_objective(phi, v), s, core);
  } catch (const Error& err) {
    if (err.code == Errc::no_witness)
      fail(Errc::no_witness, "no secure equilibrium with this payoff at " +
                                 arena.id_of(s));
    throw;
  }

  std::vector<CoalitionSolve> punishments(arena.player_count());
  for (Player i = 1; i <= arena.player_count(); ++i)
    if (v.bits[i - 1] == 1)
      punishments[i - 1] =
          coalition_solve(arena, everyone_but(arena.player_count(), i),
                          ObjectiveExpr::negation(phi[i - 1]));

  WitnessBuild build{arena, one.solves, punishments, coop, {}, {}, {}};
  build.closure();

  StrategyProfile profile;
  for (Player i = 1; i <= arena.player_count(); ++i)
    profile.players.push_back(build.strategy_for(i));
  profile.check_against(arena);
  return profile;
}

} // namespace segame
