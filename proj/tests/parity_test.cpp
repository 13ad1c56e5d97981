#include <doctest.h>

#include <random>
#include <vector>

#include "segame/parity.hpp"

using namespace segame;

namespace {

// Follows fixed positional choices from `start` until a node repeats, then
// returns the smallest color on the cycle.
unsigned min_cycle_color(const ParityGame& g,
                         const std::vector<std::uint32_t>& choice,
                         std::uint32_t start) {
  std::vector<int> seen(g.size(), -1);
  std::vector<std::uint32_t> path;
  std::uint32_t cur = start;
  while (seen[cur] < 0) {
    seen[cur] = static_cast<int>(path.size());
    path.push_back(cur);
    cur = choice[cur];
  }
  unsigned best = UINT32_MAX;
  for (std::size_t i = seen[cur]; i < path.size(); ++i)
    best = std::min(best, g.color[path[i]]);
  return best;
}

// Exhaustively validates a solution: the partition is total, and the
// returned strategy for each side beats every positional opponent from
// every node of that side's region. Positional opponents are sufficient
// for parity games, so this check is complete for the tested game.
void check_solution(const ParityGame& g) {
  ParitySolution sol = solve_parity_game(g);
  std::size_t n = g.size();

  for (std::size_t v = 0; v < n; ++v)
    CHECK(sol.win0.test(v) != sol.win1.test(v));

  for (int side = 0; side <= 1; ++side) {
    const StateSet& mine = side == 0 ? sol.win0 : sol.win1;
    const auto& strat = side == 0 ? sol.strat0 : sol.strat1;

    // My strategy must be a real edge on my nodes inside my region.
    std::vector<std::uint32_t> opp_nodes;
    for (std::uint32_t v = 0; v < n; ++v) {
      bool i_own = g.owned0[v] == (side == 0);
      if (!mine.test(v)) continue;
      if (i_own) {
        REQUIRE(strat[v] != ParitySolution::npos);
        bool is_edge = false;
        for (auto t : g.succ[v]) is_edge |= (t == strat[v]);
        CHECK(is_edge);
      } else {
        opp_nodes.push_back(v);
      }
    }

    // Odometer over the opponent's positional strategies on its nodes.
    std::vector<std::size_t> digit(opp_nodes.size(), 0);
    while (true) {
      std::vector<std::uint32_t> choice(n, 0);
      for (std::uint32_t v = 0; v < n; ++v)
        if (g.owned0[v] == (side == 0))
          choice[v] = strat[v] != ParitySolution::npos ? strat[v]
                                                       : g.succ[v].front();
      for (std::size_t i = 0; i < opp_nodes.size(); ++i)
        choice[opp_nodes[i]] = g.succ[opp_nodes[i]][digit[i]];

      for (std::uint32_t start = 0; start < n; ++start) {
        if (!mine.test(start)) continue;
        unsigned best = min_cycle_color(g, choice, start);
        if (side == 0)
          CHECK((best & 1u) == 0);
        else
          CHECK((best & 1u) == 1);
      }

      std::size_t i = 0;
      for (; i < opp_nodes.size(); ++i) {
        if (++digit[i] < g.succ[opp_nodes[i]].size()) break;
        digit[i] = 0;
      }
      if (i == opp_nodes.size()) break;
    }
  }
}

ParityGame random_game(std::mt19937& rng, std::size_t n, unsigned max_color,
                       std::size_t max_deg) {
  ParityGame g;
  for (std::size_t i = 0; i < n; ++i)
    g.add_node(rng() & 1u, rng() % (max_color + 1));
  for (std::uint32_t v = 0; v < n; ++v) {
    std::size_t deg = 1 + rng() % max_deg;
    for (std::size_t k = 0; k < deg; ++k)
      g.add_edge(v, rng() % static_cast<std::uint32_t>(n));
  }
  return g;
}

}  // namespace

TEST_CASE("one-node loops are decided by color parity") {
  ParityGame even;
  std::uint32_t a = even.add_node(true, 0);
  even.add_edge(a, a);
  ParitySolution sol = solve_parity_game(even);
  CHECK(sol.win0.test(a));
  CHECK(sol.strat0[a] == a);

  ParityGame odd;
  std::uint32_t b = odd.add_node(true, 1);
  odd.add_edge(b, b);
  CHECK(solve_parity_game(odd).win1.test(b));
}

TEST_CASE("the chooser escapes a losing loop when an exit exists") {
  // Side 0 owns a color-1 node with a self-loop and an exit to a color-0
  // loop: it must take the exit.
  ParityGame g;
  std::uint32_t bad = g.add_node(true, 1);
  std::uint32_t good = g.add_node(false, 0);
  g.add_edge(bad, bad);
  g.add_edge(bad, good);
  g.add_edge(good, good);
  ParitySolution sol = solve_parity_game(g);
  CHECK(sol.win0.test(bad));
  CHECK(sol.win0.test(good));
  CHECK(sol.strat0[bad] == good);
}

TEST_CASE("the opponent controls the only escape") {
  // Side 1 owns the hub and can keep the play on odd colors forever.
  ParityGame g;
  std::uint32_t hub = g.add_node(false, 1);
  std::uint32_t odd = g.add_node(true, 3);
  std::uint32_t even = g.add_node(true, 0);
  g.add_edge(hub, odd);
  g.add_edge(odd, hub);
  g.add_edge(hub, even);
  g.add_edge(even, hub);
  ParitySolution sol = solve_parity_game(g);
  CHECK(sol.win1.test(hub));
  CHECK(sol.win1.test(odd));
  CHECK(sol.win1.test(even));
  CHECK(sol.strat1[hub] == odd);
}

TEST_CASE("alternation depth two is solved exactly") {
  // Side 0 must visit color 0 infinitely often but crossing a color-1 node
  // is harmless as long as a 0 comes after; the opponent tries to starve.
  ParityGame g;
  std::uint32_t a = g.add_node(true, 2);   // side 0 picks
  std::uint32_t b = g.add_node(false, 1);  // opponent detour
  std::uint32_t c = g.add_node(false, 0);  // reward
  g.add_edge(a, b);
  g.add_edge(a, c);
  g.add_edge(b, a);
  g.add_edge(b, b);
  g.add_edge(c, a);
  ParitySolution sol = solve_parity_game(g);
  // From a, side 0 goes straight to c and loops a->c forever: min color 0.
  CHECK(sol.win0.test(a));
  CHECK(sol.win0.test(c));
  CHECK(sol.strat0[a] == c);
  // b's self-loop keeps the play on color 1: opponent territory.
  CHECK(sol.win1.test(b));
  check_solution(g);
}

TEST_CASE("random games validate against every positional opponent") {
  std::mt19937 rng(60902);
  for (int i = 0; i < 60; ++i) {
    ParityGame g = random_game(rng, 2 + rng() % 5, 3, 3);
    check_solution(g);
  }
}

TEST_CASE("solver output is deterministic") {
  std::mt19937 rng(777);
  for (int i = 0; i < 10; ++i) {
    ParityGame g = random_game(rng, 6, 4, 3);
    ParitySolution s1 = solve_parity_game(g);
    ParitySolution s2 = solve_parity_game(g);
    CHECK(s1.win0 == s2.win0);
    CHECK(s1.strat0 == s2.strat0);
    CHECK(s1.strat1 == s2.strat1);
  }
}

TEST_CASE("attract_within honors side, mask, and layered strategies") {
  // n0 (side 0) -> n1 -> n2(self), n0 -> n0. n1 belongs to the opponent.
  ParityGame g;
  std::uint32_t n0 = g.add_node(true, 0);
  std::uint32_t n1 = g.add_node(false, 0);
  std::uint32_t n2 = g.add_node(false, 0);
  g.add_edge(n0, n0);
  g.add_edge(n0, n1);
  g.add_edge(n1, n2);
  g.add_edge(n2, n2);

  StateSet all(g.size());
  for (std::uint32_t v = 0; v < g.size(); ++v) all.set(v);
  StateSet target(g.size());
  target.set(n2);

  std::vector<std::uint32_t> strat(g.size(), ParitySolution::npos);
  StateSet reached = attract_within(g, 0, target, all, &strat);
  CHECK(reached == StateSet::of(3, {n0, n1, n2}));
  CHECK(strat[n0] == n1);  // the self-loop does not get closer
  CHECK(strat[n2] == ParitySolution::npos);  // target nodes keep no move

  // Masking out the middle node cuts the only path.
  StateSet mask = all;
  mask.reset(n1);
  CHECK(attract_within(g, 0, target, mask, nullptr) ==
        StateSet::of(3, {n2}));

  // For side 1 the roles flip: n0 is now an opponent node whose self-loop
  // lets it escape forever.
  CHECK(attract_within(g, 1, target, all, nullptr) ==
        StateSet::of(3, {n1, n2}));
}
