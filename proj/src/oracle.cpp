#include "segame/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "segame/zero_sum.hpp"

namespace segame {

// ---------------------------------------------------------------------------
// verify_se: one-chooser products.

namespace {

// Arena × (everyone-but-chooser memories): the chooser picks freely on its
// own states, every other move is forced by that player's machine.
struct OneChooser {
  GameArena product;
  std::vector<State> base;  // product state -> arena state
  State entry;
};

OneChooser one_chooser(const GameArena& arena, const StrategyProfile& profile,
                       Player chooser, State start) {
  std::size_t n = profile.players.size();
  auto key_of = [&](State s, const std::vector<std::size_t>& mem) {
    std::vector<std::size_t> key = mem;
    key.push_back(s);
    return key;
  };

  std::vector<std::size_t> init(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    if (k + 1 != chooser) init[k] = profile.players[k].initial;

  OneChooser out;
  std::map<std::vector<std::size_t>, State> index;
  std::vector<std::pair<State, std::vector<std::size_t>>> nodes;
  auto intern = [&](State s, const std::vector<std::size_t>& mem) {
    auto [it, fresh] = index.emplace(key_of(s, mem), nodes.size());
    if (fresh) {
      nodes.emplace_back(s, mem);
      out.base.push_back(s);
      std::string id = arena.id_of(s) + "#" + std::to_string(it->second);
      out.product.add_state(id, 1);
    }
    return it->second;
  };

  out.product.set_player_count(1);
  out.entry = intern(start, init);
  std::vector<std::vector<State>> edges;
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    auto [s, mem] = nodes[id];
    std::vector<std::size_t> next_mem(n, 0);
    for (std::size_t k = 0; k < n; ++k)
      if (k + 1 != chooser) next_mem[k] = profile.players[k].step(mem[k], s);
    std::vector<State> targets;
    if (arena.owner(s) == chooser) {
      targets = arena.successors(s);
    } else {
      targets.push_back(
          profile.players[arena.owner(s) - 1].move_at(mem[arena.owner(s) - 1],
                                                      s));
    }
    edges.emplace_back();
    for (State t : targets) edges.back().push_back(intern(t, next_mem));
  }
  for (std::size_t id = 0; id < edges.size(); ++id)
    for (State t : edges[id]) out.product.add_edge(id, t);
  out.product.validate();
  return out;
}

// Objective over arena states, re-read on the product: a product node
// stands for its base state.
Objective lift_leaf(const Objective& o, const std::vector<State>& base,
                    std::size_t arena_size) {
  std::size_t m = base.size();
  auto lift_set = [&](const StateSet& s) {
    StateSet out(m);
    for (std::size_t id = 0; id < m; ++id)
      if (s.test(base[id])) out.set(id);
    return out;
  };
  switch (o.cls()) {
    case ObjClass::buchi: return Objective::buchi(lift_set(o.target()));
    case ObjClass::cobuchi: return Objective::cobuchi(lift_set(o.target()));
    case ObjClass::parity: {
      std::vector<unsigned> colors(m);
      for (std::size_t id = 0; id < m; ++id) colors[id] = o.colors()[base[id]];
      return Objective::parity(std::move(colors));
    }
    case ObjClass::streett:
    case ObjClass::rabin: {
      std::vector<AccPair> pairs;
      for (const auto& p : o.pairs())
        pairs.push_back({lift_set(p.fin), lift_set(p.inf)});
      return o.cls() == ObjClass::streett
                 ? Objective::streett(std::move(pairs))
                 : Objective::rabin(std::move(pairs));
    }
    case ObjClass::muller: {
      std::vector<std::vector<State>> preimage(arena_size);
      for (std::size_t id = 0; id < m; ++id) preimage[base[id]].push_back(id);
      Formula phi = o.formula().substitute([&](State s) {
        std::vector<Formula> alts;
        for (State id : preimage[s]) alts.push_back(Formula::atom(id));
        return Formula::disj(std::move(alts));
      });
      return Objective::muller(std::move(phi), m);
    }
  }
  return o;
}

ObjectiveExpr lift_expr(const ObjectiveExpr& e, const std::vector<State>& base,
                        std::size_t arena_size) {
  switch (e.kind()) {
    case ObjectiveExpr::Kind::lit:
      return ObjectiveExpr::lit(lift_leaf(e.leaf(), base, arena_size));
    case ObjectiveExpr::Kind::not_:
      return ObjectiveExpr::negation(
          lift_expr(e.kids().front(), base, arena_size));
    case ObjectiveExpr::Kind::and_:
    case ObjectiveExpr::Kind::or_: {
      std::vector<ObjectiveExpr> kids;
      for (const auto& k : e.kids())
        kids.push_back(lift_expr(k, base, arena_size));
      return e.kind() == ObjectiveExpr::Kind::and_
                 ? ObjectiveExpr::conj(std::move(kids))
                 : ObjectiveExpr::disj(std::move(kids));
    }
  }
  return e;
}

Lasso project_lasso(const Lasso& l, const std::vector<State>& base) {
  Lasso out;
  for (State id : l.stem) out.stem.push_back(base[id]);
  for (State id : l.cycle) out.cycle.push_back(base[id]);
  return out;
}

} // namespace

std::optional<DeviationReport> verify_se(const GameArena& arena,
                                         const ObjectiveProfile& phi,
                                         const StrategyProfile& profile,
                                         State s) {
  arena.validate();
  profile.check_against(arena);
  if (phi.size() != arena.player_count())
    fail(Errc::shape_mismatch, "objective profile has the wrong length");
  for (const auto& obj : phi) obj.check_against(arena);
  if (s >= arena.size()) fail(Errc::unknown_state, "check state missing");

  std::size_t n = phi.size();
  PayoffProfile baseline = payoff(arena, outcome(arena, profile, s), phi);

  for (Player i = 1; i <= n; ++i) {
    OneChooser oc = one_chooser(arena, profile, i, s);
    std::vector<ObjectiveExpr> lifted;
    for (const auto& obj : phi)
      lifted.push_back(lift_expr(obj, oc.base, arena.size()));

    for (std::size_t word = 0; word < (std::size_t(1) << n); ++word) {
      PayoffProfile target;
      for (std::size_t k = 0; k < n; ++k)
        target.bits.push_back((word >> (n - 1 - k)) & 1 ? 1 : 0);
      if (!prefers(i, baseline, target)) continue;

      std::vector<ObjectiveExpr> kids;
      for (std::size_t k = 0; k < n; ++k)
        kids.push_back(target.bits[k]
                           ? lifted[k]
                           : ObjectiveExpr::negation(lifted[k]));
      ObjectiveExpr want = ObjectiveExpr::conj(std::move(kids));
      Region reach = solve_cooperative(oc.product, want);
      if (reach.states.test(oc.entry)) {
        Lasso w = cooperative_witness(oc.product, want, oc.entry);
        return DeviationReport{i, target, project_lasso(w, oc.base)};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Bounded strategy enumeration.

namespace {

constexpr std::size_t kMaxOracleStates = 8;
constexpr std::size_t kMaxOracleBound = 2;

// A "look-back" machine: with bound 1 the move depends on the current state
// only; with bound 2 also on the previous state. Memory element 0 is "no
// history", element 1+p is "previous state was p".
struct Window {
  std::size_t width;  // 1 or 2
  std::size_t memory_count(std::size_t n) const {
    return width == 1 ? 1 : n + 1;
  }
  std::size_t fold(State s) const {
    return width == 1 ? 0 : 1 + s;
  }
};

struct DecisionPoint {
  std::size_t mem;
  State s;
};

// Decision points of the states in `mine`, in (state, memory) order; with
// width 2 only histories an actual play can produce are enumerated.
std::vector<DecisionPoint> decision_points(const GameArena& arena,
                                           const StateSet& mine,
                                           const Window& w) {
  std::vector<DecisionPoint> pts;
  for (State s : mine.members()) {
    pts.push_back({0, s});
    if (w.width == 2)
      for (State p : arena.predecessors(s)) pts.push_back({1 + p, s});
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return std::tie(a.s, a.mem) < std::tie(b.s, b.mem);
  });
  return pts;
}

std::size_t count_profiles(const GameArena& arena,
                           const std::vector<DecisionPoint>& pts,
                           std::size_t budget) {
  std::size_t count = 1;
  for (const auto& pt : pts) {
    std::size_t deg = arena.successors(pt.s).size();
    if (deg == 0 || count > budget / deg)
      fail(Errc::budget_exceeded,
           "strategy enumeration exceeds the configured budget");
    count *= deg;
  }
  return count;
}

// Odometer over the per-point successor choices; deterministic order.
struct Enumerator {
  const GameArena& arena;
  const std::vector<DecisionPoint>& pts;
  std::vector<std::size_t> digit;
  bool first = true;

  explicit Enumerator(const GameArena& a, const std::vector<DecisionPoint>& p)
      : arena(a), pts(p), digit(p.size(), 0) {}

  bool next() {
    if (first) {
      first = false;
      return true;
    }
    for (std::size_t k = digit.size(); k-- > 0;) {
      if (++digit[k] < arena.successors(pts[k].s).size()) return true;
      digit[k] = 0;
    }
    return false;
  }

  State choice(std::size_t k) const {
    return arena.successors(pts[k].s)[digit[k]];
  }
};

void check_guards(const GameArena& arena, std::size_t memory_bound) {
  if (arena.size() > kMaxOracleStates)
    fail(Errc::budget_exceeded, "oracle instance guard: more than " +
                                    std::to_string(kMaxOracleStates) +
                                    " states");
  if (memory_bound > kMaxOracleBound)
    fail(Errc::budget_exceeded, "oracle instance guard: look-back bound "
                                "above " +
                                    std::to_string(kMaxOracleBound));
}

// Local strongly-connected-component search (iterative Tarjan) over an
// explicit successor table restricted to `mask`; deliberately independent
// of the solver modules it cross-checks.
std::vector<std::vector<std::size_t>> local_sccs(
    const std::vector<std::vector<std::size_t>>& succ,
    const std::vector<bool>& mask) {
  std::size_t n = succ.size();
  std::vector<std::uint32_t> index(n, UINT32_MAX), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> sccs;
  std::uint32_t counter = 0;
  struct Frame {
    std::size_t v;
    std::size_t child;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (!mask[root] || index[root] != UINT32_MAX) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < succ[f.v].size()) {
        std::size_t t = succ[f.v][f.child++];
        if (!mask[t]) continue;
        if (index[t] == UINT32_MAX) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = true;
          frames.push_back({t, 0});
        } else if (on_stack[t]) {
          low[f.v] = std::min(low[f.v], index[t]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          std::vector<std::size_t> scc;
          std::size_t t;
          do {
            t = stack.back();
            stack.pop_back();
            on_stack[t] = false;
            scc.push_back(t);
          } while (t != f.v);
          std::sort(scc.begin(), scc.end());
          sccs.push_back(std::move(scc));
        }
        std::size_t done = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[done]);
      }
    }
  }
  return sccs;
}

} // namespace

Region brute_region(const GameArena& arena,
                    const std::vector<Player>& coalition,
                    const ObjectiveExpr& e, std::size_t memory_bound) {
  arena.validate();
  e.check_against(arena);
  check_guards(arena, memory_bound);

  std::size_t n = arena.size();
  StateSet mine(n);
  for (Player p : coalition) {
    if (p < 1 || p > arena.player_count())
      fail(Errc::player_out_of_range, "coalition member out of range");
    mine |= arena.owned_by(p);
  }

  Window w{memory_bound <= 1 ? std::size_t(1) : std::size_t(2)};
  auto pts = decision_points(arena, mine, w);
  count_profiles(arena, pts, solver_budget());

  // Which visited-state sets the objective rejects.
  std::vector<bool> rejected(std::size_t(1) << n, false);
  for (std::size_t bits = 1; bits < rejected.size(); ++bits) {
    StateSet inf(n);
    for (std::size_t k = 0; k < n; ++k)
      if (bits & (std::size_t(1) << k)) inf.set(k);
    rejected[bits] = !e.holds_on(inf);
  }

  std::size_t mcount = w.memory_count(n);
  std::size_t nodes = mcount * n;
  auto node_of = [&](std::size_t mem, State s) { return mem * n + s; };

  std::map<std::pair<std::size_t, State>, std::size_t> point_at;
  for (std::size_t k = 0; k < pts.size(); ++k)
    point_at[{pts[k].mem, pts[k].s}] = k;

  Region out{StateSet(n), "brute"};
  Enumerator en(arena, pts);
  while (en.next()) {
    // Graph of plays consistent with this coalition strategy.
    std::vector<std::vector<std::size_t>> succ(nodes);
    for (std::size_t mem = 0; mem < mcount; ++mem) {
      for (State s = 0; s < n; ++s) {
        std::size_t fold = w.fold(s);
        auto pt = point_at.find({mem, s});
        if (mine.test(s) && pt != point_at.end()) {
          succ[node_of(mem, s)].push_back(
              node_of(fold, en.choice(pt->second)));
        } else if (!mine.test(s)) {
          for (State t : arena.successors(s))
            succ[node_of(mem, s)].push_back(node_of(fold, t));
        }
        // Coalition states with an impossible history keep no successors;
        // no play reaches them.
      }
    }

    // Nodes on a cycle whose visited projection the objective rejects.
    std::vector<bool> bad(nodes, false);
    for (std::size_t bits = 1; bits < rejected.size(); ++bits) {
      if (!rejected[bits]) continue;
      std::vector<bool> mask(nodes, false);
      for (std::size_t id = 0; id < nodes; ++id)
        if (bits & (std::size_t(1) << (id % n))) mask[id] = true;
      for (const auto& scc : local_sccs(succ, mask)) {
        bool has_edge = scc.size() > 1;
        std::size_t proj = 0;
        for (std::size_t v : scc) {
          proj |= std::size_t(1) << (v % n);
          if (!has_edge)
            for (std::size_t t : succ[v])
              if (t == v) has_edge = true;
        }
        if (has_edge && proj == bits)
          for (std::size_t v : scc) bad[v] = true;
      }
    }

    // States whose entry node cannot reach a bad cycle are forced into e.
    std::vector<bool> doomed = bad;
    std::deque<std::size_t> work;
    for (std::size_t v = 0; v < nodes; ++v)
      if (doomed[v]) work.push_back(v);
    std::vector<std::vector<std::size_t>> pred(nodes);
    for (std::size_t v = 0; v < nodes; ++v)
      for (std::size_t t : succ[v]) pred[t].push_back(v);
    while (!work.empty()) {
      std::size_t v = work.front();
      work.pop_front();
      for (std::size_t p : pred[v])
        if (!doomed[p]) {
          doomed[p] = true;
          work.push_back(p);
        }
    }
    for (State s = 0; s < n; ++s)
      if (!doomed[node_of(0, s)]) out.states.set(s);
    if (out.states.count() == n) break;
  }
  return out;
}

namespace {

MooreStrategy window_strategy(const GameArena& arena, Player player,
                              const Window& w,
                              const std::vector<DecisionPoint>& pts,
                              const Enumerator& en, std::size_t pt_begin,
                              std::size_t pt_end) {
  std::size_t n = arena.size();
  MooreStrategy s;
  s.player = player;
  s.memory_count = w.memory_count(n);
  s.initial = 0;
  s.update.assign(s.memory_count, std::vector<std::size_t>(n));
  s.move.assign(s.memory_count,
                std::vector<State>(n, MooreStrategy::no_move));
  for (std::size_t mem = 0; mem < s.memory_count; ++mem)
    for (State st = 0; st < n; ++st) {
      s.update[mem][st] = w.fold(st);
      if (arena.owner(st) == player)
        s.move[mem][st] = arena.successors(st).front();
    }
  for (std::size_t k = pt_begin; k < pt_end; ++k)
    s.move[pts[k].mem][pts[k].s] = en.choice(k);
  return s;
}

} // namespace

std::optional<StrategyProfile> enumerate_bounded_se(const GameArena& arena,
                                                    const ObjectiveProfile& phi,
                                                    State s, const Constraint& v,
                                                    std::size_t memory_bound) {
  arena.validate();
  if (phi.size() != arena.player_count())
    fail(Errc::shape_mismatch, "objective profile has the wrong length");
  for (const auto& obj : phi) obj.check_against(arena);
  v.check(phi.size());
  if (s >= arena.size()) fail(Errc::unknown_state, "search state missing");
  check_guards(arena, memory_bound);

  Window w{memory_bound <= 1 ? std::size_t(1) : std::size_t(2)};
  auto pts = decision_points(arena, arena.all_states(), w);
  count_profiles(arena, pts, solver_budget());

  std::size_t n_players = arena.player_count();
  PayoffProfile want{std::vector<int>(v.bits)};
  Enumerator en(arena, pts);
  while (en.next()) {
    StrategyProfile profile;
    for (Player p = 1; p <= n_players; ++p) {
      MooreStrategy ms = window_strategy(arena, p, w, pts, en, 0, 0);
      for (std::size_t k = 0; k < pts.size(); ++k)
        if (arena.owner(pts[k].s) == p)
          ms.move[pts[k].mem][pts[k].s] = en.choice(k);
      profile.players.push_back(std::move(ms));
    }
    if (!(payoff(arena, outcome(arena, profile, s), phi) == want)) continue;
    if (!verify_se(arena, phi, profile, s)) return profile;
  }
  return std::nullopt;
}

} // namespace segame
