#include "segame/zero_sum.hpp"

#include <algorithm>
#include <atomic>
#include <deque>

namespace segame {

namespace {

std::atomic<std::size_t> g_budget{kDefaultBudget};

ParityGame parity_view(const GameArena& arena, const StateSet& protagonist,
                       const std::vector<unsigned>& colors) {
  ParityGame g;
  for (State s = 0; s < arena.size(); ++s)
    g.add_node(protagonist.test(s), colors.empty() ? 0 : colors[s]);
  for (State s = 0; s < arena.size(); ++s)
    for (State t : arena.successors(s))
      g.add_edge(static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t));
  return g;
}

} // namespace

std::size_t solver_budget() { return g_budget.load(); }
void set_solver_budget(std::size_t budget) {
  g_budget.store(budget ? budget : 1);
}

CoalitionGame make_coalition_game(const GameArena& arena,
                                  const std::vector<Player>& coalition,
                                  ObjectiveExpr objective) {
  arena.validate();
  objective.check_against(arena);
  StateSet prot(arena.size());
  for (Player p : coalition) {
    if (p < 1 || p > arena.player_count())
      fail(Errc::player_out_of_range,
           "coalition member " + std::to_string(p) + " outside 1.." +
               std::to_string(arena.player_count()));
    prot |= arena.owned_by(p);
  }
  return CoalitionGame{arena, prot, std::move(objective)};
}

struct SolverAccess {
  static CoalitionStrategy wrap(std::shared_ptr<const ProductGame> prod,
                                StateSet win0,
                                std::vector<std::uint32_t> strat0);
};

struct CoalitionStrategy::Impl {
  std::shared_ptr<const ProductGame> product;
  StateSet win0;
  std::vector<std::uint32_t> strat0;
};

CoalitionStrategy::CoalitionStrategy() : impl_(std::make_shared<Impl>()) {}

std::size_t CoalitionStrategy::initial_memory() const {
  return impl_->product ? impl_->product->records->initial() : 0;
}

std::size_t CoalitionStrategy::step(std::size_t mem, State s) const {
  return impl_->product ? impl_->product->records->fold(mem, s) : 0;
}

std::optional<State> CoalitionStrategy::move(std::size_t mem, State s) const {
  if (!impl_->product) return std::nullopt;
  std::uint32_t id = impl_->product->find_node(s, mem);
  if (id == ProductGame::npos || !impl_->win0.test(id)) return std::nullopt;
  std::uint32_t t = impl_->strat0[id];
  if (t == ParitySolution::npos) return std::nullopt;
  return impl_->product->node_state[t];
}

std::size_t CoalitionStrategy::memory_count() const {
  return impl_->product ? impl_->product->records->record_count() : 1;
}

CoalitionStrategy SolverAccess::wrap(std::shared_ptr<const ProductGame> prod,
                                     StateSet win0,
                                     std::vector<std::uint32_t> strat0) {
  CoalitionStrategy s;
  auto impl = std::make_shared<CoalitionStrategy::Impl>();
  impl->product = std::move(prod);
  impl->win0 = std::move(win0);
  impl->strat0 = std::move(strat0);
  s.impl_ = std::move(impl);
  return s;
}

Region attractor(const CoalitionGame& g, const StateSet& target) {
  if (target.universe() != g.arena.size())
    fail(Errc::foreign_state, "attractor target built for a different arena");
  ParityGame view = parity_view(g.arena, g.protagonist_states, {});
  StateSet all = g.arena.all_states();
  StateSet got = attract_within(view, 0, target, all, nullptr);
  return Region{got, "attractor"};
}

namespace {

struct Route {
  std::shared_ptr<const RecordAutomaton> records;
  std::string provenance;
};

Route route_for(const GameArena& arena, const ObjectiveExpr& e) {
  if (auto flat = flatten_same_class(e)) {
    switch (flat->cls()) {
      case ObjClass::buchi: {
        std::vector<unsigned> colors(arena.size(), 1);
        for (std::size_t s : flat->target().members()) colors[s] = 0;
        return {plain_automaton(std::move(colors)), "parity"};
      }
      case ObjClass::cobuchi: {
        std::vector<unsigned> colors(arena.size(), 2);
        for (std::size_t s : flat->target().members()) colors[s] = 1;
        return {plain_automaton(std::move(colors)), "parity"};
      }
      case ObjClass::parity:
        return {plain_automaton(flat->colors()), "parity"};
      case ObjClass::streett:
        return {iar_automaton(arena, flat->pairs(), false, solver_budget()),
                "iar-streett"};
      case ObjClass::rabin:
        return {iar_automaton(arena, flat->pairs(), true, solver_budget()),
                "iar-rabin"};
      case ObjClass::muller:
        return {lar_automaton(arena, flat->formula(), solver_budget()),
                "lar-muller"};
    }
  }
  try {
    Objective st = streett_encoding(e);
    return {iar_automaton(arena, st.pairs(), false, solver_budget()),
            "iar-streett"};
  } catch (const Error& err) {
    if (err.code != Errc::shape_mismatch) throw;
  }
  try {
    Objective rb = rabin_encoding(e);
    return {iar_automaton(arena, rb.pairs(), true, solver_budget()),
            "iar-rabin"};
  } catch (const Error& err) {
    if (err.code != Errc::shape_mismatch) throw;
  }
  Objective mu = to_muller(e);
  return {lar_automaton(arena, mu.formula(), solver_budget()), "lar-muller"};
}

CoalitionSolve solve_via(const GameArena& arena, const StateSet& protagonist,
                         Route route) {
  auto prod = std::make_shared<ProductGame>(
      build_product(arena, protagonist, route.records, solver_budget()));
  ParitySolution sol = solve_parity_game(prod->game);
  StateSet region(arena.size());
  for (State s = 0; s < arena.size(); ++s)
    if (sol.win0.test(prod->entry[s])) region.set(s);
  CoalitionStrategy strat = SolverAccess::wrap(prod, std::move(sol.win0),
                                               std::move(sol.strat0));
  return CoalitionSolve{Region{region, std::move(route.provenance)}, strat};
}

} // namespace

Region solve_parity(const CoalitionGame& g) {
  if (g.objective.kind() != ObjectiveExpr::Kind::lit ||
      g.objective.leaf().cls() != ObjClass::parity)
    fail(Errc::bad_objective, "solve_parity expects a parity objective");
  g.objective.check_against(g.arena);
  Route route{plain_automaton(g.objective.leaf().colors()), "parity"};
  return solve_via(g.arena, g.protagonist_states, std::move(route)).region;
}

Region solve_muller(const CoalitionGame& g) {
  if (g.objective.kind() != ObjectiveExpr::Kind::lit ||
      g.objective.leaf().cls() != ObjClass::muller)
    fail(Errc::bad_objective, "solve_muller expects a Muller objective");
  g.objective.check_against(g.arena);
  Route route{
      lar_automaton(g.arena, g.objective.leaf().formula(), solver_budget()),
      "lar-muller"};
  return solve_via(g.arena, g.protagonist_states, std::move(route)).region;
}

CoalitionSolve coalition_solve(const GameArena& arena,
                               const std::vector<Player>& coalition,
                               const ObjectiveExpr& e) {
  CoalitionGame g = make_coalition_game(arena, coalition, e);
  return solve_via(g.arena, g.protagonist_states, route_for(g.arena, e));
}

Region coalition_region(const GameArena& arena,
                        const std::vector<Player>& coalition,
                        const ObjectiveExpr& e) {
  return coalition_solve(arena, coalition, e).region;
}

// ---------------------------------------------------------------------------
// Cooperative (one-player) solving.

namespace {

// One disjunct of the decomposed objective: visit every `hit` set
// infinitely often while eventually avoiding `avoid`.
struct Conj {
  std::vector<StateSet> hit;
  StateSet avoid;
};

constexpr std::size_t kMaxDisjuncts = 512;

std::optional<std::vector<Conj>> decompose_leaf(const Objective& o,
                                                std::size_t n);

std::optional<std::vector<Conj>> cross(std::vector<Conj> a,
                                       const std::vector<Conj>& b) {
  if (a.size() * b.size() > kMaxDisjuncts) return std::nullopt;
  std::vector<Conj> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) {
      Conj c = x;
      c.hit.insert(c.hit.end(), y.hit.begin(), y.hit.end());
      c.avoid |= y.avoid;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::optional<std::vector<Conj>> decompose_leaf(const Objective& o,
                                                std::size_t n) {
  switch (o.cls()) {
    case ObjClass::buchi:
      return std::vector<Conj>{Conj{{o.target()}, StateSet(n)}};
    case ObjClass::cobuchi:
      return std::vector<Conj>{Conj{{}, o.target()}};
    case ObjClass::parity: {
      // One disjunct per even color: hit it, eventually avoid lower colors.
      std::vector<Conj> out;
      std::vector<unsigned> present = o.colors();
      std::sort(present.begin(), present.end());
      present.erase(std::unique(present.begin(), present.end()),
                    present.end());
      for (unsigned c : present) {
        if (c % 2) continue;
        Conj conj{{StateSet(n)}, StateSet(n)};
        for (State s = 0; s < n; ++s) {
          if (o.colors()[s] == c) conj.hit.front().set(s);
          if (o.colors()[s] < c) conj.avoid.set(s);
        }
        out.push_back(std::move(conj));
      }
      return out;
    }
    case ObjClass::streett: {
      // Distribute ⋂ (coBüchi(F) ∪ Büchi(G)) into disjuncts.
      std::vector<Conj> acc{Conj{{}, StateSet(n)}};
      for (const auto& p : o.pairs()) {
        std::vector<Conj> options{Conj{{}, p.fin}, Conj{{p.inf}, StateSet(n)}};
        auto next = cross(std::move(acc), options);
        if (!next) return std::nullopt;
        acc = std::move(*next);
      }
      return acc;
    }
    case ObjClass::rabin: {
      std::vector<Conj> out;
      for (const auto& p : o.pairs()) out.push_back(Conj{{p.fin}, p.inf});
      return out;
    }
    case ObjClass::muller: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<std::vector<Conj>> decompose(const ObjectiveExpr& e,
                                           bool negated, std::size_t n) {
  switch (e.kind()) {
    case ObjectiveExpr::Kind::lit:
      return decompose_leaf(negated ? negate(e.leaf()) : e.leaf(), n);
    case ObjectiveExpr::Kind::not_:
      return decompose(e.kids().front(), !negated, n);
    case ObjectiveExpr::Kind::and_:
    case ObjectiveExpr::Kind::or_: {
      bool conjunctive = (e.kind() == ObjectiveExpr::Kind::and_) != negated;
      if (conjunctive) {
        std::vector<Conj> acc{Conj{{}, StateSet(n)}};
        for (const auto& k : e.kids()) {
          auto part = decompose(k, negated, n);
          if (!part) return std::nullopt;
          auto next = cross(std::move(acc), *part);
          if (!next) return std::nullopt;
          acc = std::move(*next);
        }
        return acc;
      }
      std::vector<Conj> out;
      for (const auto& k : e.kids()) {
        auto part = decompose(k, negated, n);
        if (!part) return std::nullopt;
        if (out.size() + part->size() > kMaxDisjuncts) return std::nullopt;
        out.insert(out.end(), part->begin(), part->end());
      }
      return out;
    }
  }
  return std::nullopt;
}

// Strongly connected components of the sub-graph induced by `mask`, in a
// deterministic order (Tarjan, roots scanned in ascending state order).
std::vector<std::vector<State>> scc_decompose(const GameArena& arena,
                                              const StateSet& mask) {
  std::size_t n = arena.size();
  std::vector<std::uint32_t> index(n, UINT32_MAX), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::vector<std::vector<State>> sccs;
  std::uint32_t counter = 0;

  struct Frame {
    State s;
    std::size_t next_child;
  };
  for (State root = 0; root < n; ++root) {
    if (!mask.test(root) || index[root] != UINT32_MAX) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& succ = arena.successors(f.s);
      if (f.next_child < succ.size()) {
        State t = succ[f.next_child++];
        if (!mask.test(t)) continue;
        if (index[t] == UINT32_MAX) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = true;
          frames.push_back({t, 0});
        } else if (on_stack[t]) {
          low[f.s] = std::min(low[f.s], index[t]);
        }
      } else {
        if (low[f.s] == index[f.s]) {
          std::vector<State> scc;
          State t;
          do {
            t = stack.back();
            stack.pop_back();
            on_stack[t] = false;
            scc.push_back(t);
          } while (t != f.s);
          std::sort(scc.begin(), scc.end());
          sccs.push_back(std::move(scc));
        }
        State done = f.s;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().s] = std::min(low[frames.back().s], low[done]);
      }
    }
  }
  return sccs;
}

bool loop_connected(const GameArena& arena, const std::vector<State>& comp) {
  if (comp.size() > 1) return true;
  return arena.has_edge(comp.front(), comp.front());
}

// Subsets U of one SCC that carry a closed walk covering exactly U.
bool closed_walk_covers(const GameArena& arena, const StateSet& u) {
  auto members = u.members();
  if (members.empty()) return false;
  if (members.size() == 1) return arena.has_edge(members[0], members[0]);
  // Strong connectivity of the induced sub-graph.
  for (int dir = 0; dir < 2; ++dir) {
    StateSet seen(u.universe());
    std::deque<State> work{members.front()};
    seen.set(members.front());
    while (!work.empty()) {
      State s = work.front();
      work.pop_front();
      const auto& nbrs = dir == 0 ? arena.successors(s) : arena.predecessors(s);
      for (State t : nbrs) {
        if (u.test(t) && !seen.test(t)) {
          seen.set(t);
          work.push_back(t);
        }
      }
    }
    if (seen != u) return false;
  }
  return true;
}

StateSet backward_reach(const GameArena& arena, const StateSet& from,
                        const StateSet& within) {
  StateSet seen = from;
  std::deque<State> work;
  for (State s : from.members()) work.push_back(s);
  while (!work.empty()) {
    State s = work.front();
    work.pop_front();
    for (State p : arena.predecessors(s)) {
      if (within.test(p) && !seen.test(p)) {
        seen.set(p);
        work.push_back(p);
      }
    }
  }
  return seen;
}

// Good components: state sets carrying a closed walk whose visited set
// satisfies the objective, listed in a deterministic order.
std::vector<StateSet> good_components(const GameArena& arena,
                                      const ObjectiveExpr& e,
                                      const StateSet& within) {
  std::size_t n = arena.size();
  std::vector<StateSet> good;
  if (auto disjuncts = decompose(e, false, n)) {
    for (const auto& conj : *disjuncts) {
      StateSet mask = within - conj.avoid;
      for (const auto& comp : scc_decompose(arena, mask)) {
        if (!loop_connected(arena, comp)) continue;
        StateSet cs(n);
        for (State s : comp) cs.set(s);
        bool hits_all = true;
        for (const auto& h : conj.hit)
          if (!cs.intersects(h)) { hits_all = false; break; }
        if (hits_all) good.push_back(cs);
      }
    }
    return good;
  }
  // General fallback: per-SCC subset search, guarded by the budget.
  std::size_t budget = solver_budget();
  std::size_t work = 0;
  for (const auto& comp : scc_decompose(arena, within)) {
    if (comp.size() >= 63 || (std::size_t(1) << comp.size()) > budget ||
        (work += std::size_t(1) << comp.size()) > budget)
      fail(Errc::memory_budget_exceeded,
           "subset search exceeds the configured budget");
    std::uint64_t count = std::uint64_t(1) << comp.size();
    for (std::uint64_t bits = 1; bits < count; ++bits) {
      StateSet u(n);
      for (std::size_t i = 0; i < comp.size(); ++i)
        if (bits & (std::uint64_t(1) << i)) u.set(comp[i]);
      if (!closed_walk_covers(arena, u)) continue;
      if (e.holds_on(u)) good.push_back(u);
    }
  }
  return good;
}

} // namespace

Region solve_cooperative(const GameArena& arena, const ObjectiveExpr& e,
                         const StateSet& within) {
  arena.validate();
  e.check_against(arena);
  if (within.universe() != arena.size())
    fail(Errc::foreign_state, "restriction set built for a different arena");
  StateSet all_good(arena.size());
  for (const auto& u : good_components(arena, e, within)) all_good |= u;
  return Region{backward_reach(arena, all_good, within), "cooperative"};
}

Region solve_cooperative(const GameArena& arena, const ObjectiveExpr& e) {
  return solve_cooperative(arena, e, arena.all_states());
}

namespace {

// Shortest path via breadth-first search; returns the node sequence from
// `from` to the first reached member of `targets` (inclusive), staying in
// `within`.
std::optional<std::vector<State>> bfs_path(const GameArena& arena, State from,
                                           const StateSet& targets,
                                           const StateSet& within) {
  if (!within.test(from)) return std::nullopt;
  std::vector<State> parent(arena.size(), static_cast<State>(-1));
  StateSet seen(arena.size());
  seen.set(from);
  std::deque<State> work{from};
  State found = static_cast<State>(-1);
  if (targets.test(from)) {
    found = from;
  } else {
    while (!work.empty() && found == static_cast<State>(-1)) {
      State s = work.front();
      work.pop_front();
      for (State t : arena.successors(s)) {
        if (!within.test(t) || seen.test(t)) continue;
        seen.set(t);
        parent[t] = s;
        if (targets.test(t)) { found = t; break; }
        work.push_back(t);
      }
    }
  }
  if (found == static_cast<State>(-1)) return std::nullopt;
  std::vector<State> path;
  for (State s = found; s != static_cast<State>(-1); s = parent[s])
    path.push_back(s);
  std::reverse(path.begin(), path.end());
  return path;
}

} // namespace

Lasso cooperative_witness(const GameArena& arena, const ObjectiveExpr& e,
                          State from, const StateSet& within) {
  arena.validate();
  e.check_against(arena);
  if (from >= arena.size()) fail(Errc::unknown_state, "start state missing");
  for (const auto& u : good_components(arena, e, within)) {
    auto path = bfs_path(arena, from, u, within);
    if (!path) continue;
    // Closed walk covering u, starting at the reached member: hop between
    // members in ascending order through the induced sub-graph.
    State entry = path->back();
    auto members = u.members();
    std::rotate(members.begin(),
                std::find(members.begin(), members.end(), entry),
                members.end());
    std::vector<State> cycle;
    if (members.size() == 1) {
      cycle.push_back(entry);
    } else {
      for (std::size_t i = 0; i < members.size(); ++i) {
        StateSet next_target(arena.size());
        next_target.set(members[(i + 1) % members.size()]);
        auto hop = bfs_path(arena, members[i], next_target, u);
        if (!hop) fail(Errc::no_witness, "component lost its closed walk");
        cycle.insert(cycle.end(), hop->begin(), hop->end() - 1);
      }
    }
    Lasso l;
    l.stem.assign(path->begin(), path->end() - 1);
    l.cycle = std::move(cycle);
    l.check(arena);
    return l;
  }
  fail(Errc::no_witness, "state is outside the cooperative region");
}

Lasso cooperative_witness(const GameArena& arena, const ObjectiveExpr& e,
                          State from) {
  return cooperative_witness(arena, e, from, arena.all_states());
}

} // namespace segame
