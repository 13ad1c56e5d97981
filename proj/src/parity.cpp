#include "segame/parity.hpp"

#include <algorithm>
#include <deque>

#include "segame/errors.hpp"

namespace segame {

std::uint32_t ParityGame::add_node(bool side0_owned, unsigned node_color) {
  std::uint32_t id = static_cast<std::uint32_t>(color.size());
  color.push_back(node_color);
  owned0.push_back(side0_owned);
  succ.emplace_back();
  pred.emplace_back();
  return id;
}

void ParityGame::add_edge(std::uint32_t from, std::uint32_t to) {
  succ[from].push_back(to);
  pred[to].push_back(from);
}

StateSet attract_within(const ParityGame& g, int side, const StateSet& target,
                        const StateSet& mask,
                        std::vector<std::uint32_t>* strat) {
  std::size_t n = g.size();
  StateSet in(n);
  std::vector<std::uint32_t> layer(n, 0);
  // escape[s]: masked successors not yet attracted; opponent nodes join
  // only when this hits zero.
  std::vector<std::uint32_t> escapes(n, 0);
  std::deque<std::uint32_t> queue;

  for (std::size_t s = 0; s < n; ++s) {
    if (!mask.test(s)) continue;
    std::uint32_t cnt = 0;
    for (auto t : g.succ[s])
      if (mask.test(t)) ++cnt;
    escapes[s] = cnt;
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (mask.test(s) && target.test(s)) {
      in.set(s);
      queue.push_back(static_cast<std::uint32_t>(s));
    }
  }
  while (!queue.empty()) {
    std::uint32_t s = queue.front();
    queue.pop_front();
    for (auto p : g.pred[s]) {
      if (!mask.test(p) || in.test(p)) continue;
      bool side_owned = (g.owned0[p] == (side == 0));
      if (side_owned || --escapes[p] == 0) {
        in.set(p);
        layer[p] = layer[s] + 1;
        queue.push_back(p);
      }
    }
  }
  if (strat) {
    for (std::size_t s = 0; s < n; ++s) {
      if (!in.test(s) || target.test(s)) continue;
      if (g.owned0[s] != (side == 0)) continue;
      for (auto t : g.succ[s]) {
        if (mask.test(t) && in.test(t) && layer[t] < layer[s]) {
          (*strat)[s] = t;
          break;  // successors are scanned in insertion order; first hit wins
        }
      }
    }
  }
  return in;
}

namespace {

struct Zielonka {
  const ParityGame& g;
  ParitySolution& out;

  // Returns the winning partition of the subgame induced by `mask`,
  // recording positional strategies into out.strat0/out.strat1. Entries are
  // only trusted for nodes inside the final winning sets; inner recursions
  // may scribble on nodes a later stage reassigns.
  std::pair<StateSet, StateSet> solve(const StateSet& mask) {
    std::size_t n = g.size();
    if (mask.empty()) return {StateSet(n), StateSet(n)};

    unsigned p = 0;
    bool seen = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (!mask.test(s)) continue;
      if (!seen || g.color[s] < p) p = g.color[s];
      seen = true;
    }
    int side = (p % 2 == 0) ? 0 : 1;
    auto& strat_side = side == 0 ? out.strat0 : out.strat1;
    auto& strat_rival = side == 0 ? out.strat1 : out.strat0;

    StateSet top(n);
    for (std::size_t s = 0; s < n; ++s)
      if (mask.test(s) && g.color[s] == p) top.set(s);

    StateSet a = attract_within(g, side, top, mask, &strat_side);
    auto [w0, w1] = solve(mask - a);
    StateSet& sub_side = side == 0 ? w0 : w1;
    StateSet& sub_rival = side == 0 ? w1 : w0;

    if (sub_rival.empty()) {
      // The whole subgame is won by `side`: inherit the recursive strategy
      // outside the attractor, attract toward `top` inside it, and from
      // `top` itself any masked move keeps the play winning.
      for (std::size_t s : top.members()) {
        if (g.owned0[s] != (side == 0)) continue;
        for (auto t : g.succ[s]) {
          if (mask.test(t)) { strat_side[s] = t; break; }
        }
      }
      StateSet none(n);
      return side == 0 ? std::pair{mask, none} : std::pair{none, mask};
    }

    StateSet b = attract_within(g, 1 - side, sub_rival, mask, &strat_rival);
    auto [v0, v1] = solve(mask - b);
    StateSet& fin_side = side == 0 ? v0 : v1;
    StateSet& fin_rival = side == 0 ? v1 : v0;
    fin_rival |= b;
    (void)fin_side;
    (void)sub_side;
    return {v0, v1};
  }
};

} // namespace

ParitySolution solve_parity_game(const ParityGame& g) {
  for (std::size_t s = 0; s < g.size(); ++s)
    if (g.succ[s].empty())
      fail(Errc::dead_end_state, "parity game node without successor");
  ParitySolution sol;
  sol.strat0.assign(g.size(), ParitySolution::npos);
  sol.strat1.assign(g.size(), ParitySolution::npos);
  StateSet all(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) all.set(s);
  Zielonka z{g, sol};
  auto [w0, w1] = z.solve(all);
  sol.win0 = std::move(w0);
  sol.win1 = std::move(w1);
  // Drop strategy scribbles outside the final regions.
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (!(sol.win0.test(s) && g.owned0[s])) sol.strat0[s] = ParitySolution::npos;
    if (!(sol.win1.test(s) && !g.owned0[s])) sol.strat1[s] = ParitySolution::npos;
  }
  return sol;
}

} // namespace segame
