#include <doctest.h>

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "segame/zero_sum.hpp"
#include "test_util.hpp"

using namespace segame;

namespace {

ObjectiveExpr lit_buchi(const GameArena& a,
                        std::initializer_list<const char*> names) {
  return ObjectiveExpr::lit(Objective::buchi(testutil::ids(a, names)));
}

// Plays the coalition strategy against one fixed random positional choice
// for the opposing states and folds the run into a lasso.
Lasso play_against(const GameArena& a, const StateSet& protagonist,
                   const CoalitionStrategy& st, State start,
                   std::mt19937& rng) {
  std::map<std::pair<std::size_t, State>, std::size_t> seen;
  std::map<State, State> opponent;
  std::vector<State> seq;
  std::size_t mem = st.initial_memory();
  State cur = start;
  while (!seen.count({mem, cur})) {
    seen[{mem, cur}] = seq.size();
    seq.push_back(cur);
    State next;
    if (protagonist.test(cur)) {
      auto mv = st.move(mem, cur);
      REQUIRE(mv.has_value());
      REQUIRE(a.has_edge(cur, *mv));
      next = *mv;
    } else {
      auto it = opponent.find(cur);
      if (it == opponent.end()) {
        const auto& succ = a.successors(cur);
        it = opponent.emplace(cur, succ[rng() % succ.size()]).first;
      }
      next = it->second;
    }
    mem = st.step(mem, cur);
    cur = next;
  }
  std::size_t split = seen[{mem, cur}];
  Lasso l;
  l.stem.assign(seq.begin(), seq.begin() + split);
  l.cycle.assign(seq.begin() + split, seq.end());
  l.check(a);
  return l;
}

}  // namespace

TEST_CASE("attractor on the round-robin game") {
  GameArena a = testutil::fig1_arena();
  CoalitionGame g = make_coalition_game(
      a, {1}, lit_buchi(a, {"s3"}));  // objective unused by attractor

  // Only the owner of s0 can steer into the sink s3.
  Region r = attractor(g, testutil::ids(a, {"s3"}));
  CHECK(r.states == testutil::ids(a, {"s0", "s3"}));
  CHECK(r.provenance == "attractor");

  CHECK(attractor(g, a.all_states()).states == a.all_states());
  CHECK(attractor(g, StateSet(a.size())).states.empty());
}

TEST_CASE("solve_parity with everyone cooperating") {
  GameArena a = testutil::fig1_arena();
  // Even color exactly on s2 and s4: reaching either infinitely often wins.
  std::vector<unsigned> colors(a.size(), 1);
  colors[a.index_of("s2")] = 0;
  colors[a.index_of("s4")] = 0;
  CoalitionGame g = make_coalition_game(
      a, {1, 2, 3}, ObjectiveExpr::lit(Objective::parity(colors)));
  Region r = solve_parity(g);
  CHECK(r.states == testutil::ids(a, {"s0", "s1", "s2", "s4"}));
  CHECK(r.provenance == "parity");

  CHECK_THROWS_AS((void)solve_parity(make_coalition_game(
                      a, {1}, lit_buchi(a, {"s0"}))),
                  Error);
}

TEST_CASE("solve_muller on a one-state loop") {
  GameArena a;
  a.set_player_count(1);
  a.add_state("s", 1);
  a.add_edge("s", "s");
  a.validate();

  auto muller = [&](const char* text) {
    return make_coalition_game(
        a, {1},
        ObjectiveExpr::lit(
            Objective::muller(Formula::parse(text, a), a.size())));
  };
  CHECK(solve_muller(muller("s")).states == a.all_states());
  CHECK(solve_muller(muller("!s")).states.empty());
  CHECK(solve_muller(muller("s")).provenance == "lar-muller");
}

TEST_CASE("coalition_region reproduces the per-player winning sets") {
  GameArena a = testutil::fig1_arena();
  // Alone, each player can only guarantee its own sink: the two opponents
  // can always park the play in a sink the lone player dislikes.
  CHECK(coalition_region(a, {1}, lit_buchi(a, {"s2", "s4"})).states ==
        testutil::ids(a, {"s4"}));
  CHECK(coalition_region(a, {2}, lit_buchi(a, {"s0", "s5"})).states ==
        testutil::ids(a, {"s5"}));
  CHECK(coalition_region(a, {3}, lit_buchi(a, {"s1", "s3"})).states ==
        testutil::ids(a, {"s3"}));
  CHECK(coalition_region(a, {1}, lit_buchi(a, {})).states.empty());
}

TEST_CASE("coalition_region reproduces the pairwise guard regions") {
  GameArena a = testutil::fig1_arena();
  std::vector<ObjectiveExpr> phi = testutil::fig1_objectives(a);
  auto guard = [&](std::size_t dev) {
    return ObjectiveExpr::disj({ObjectiveExpr::conj(phi),
                                ObjectiveExpr::negation(phi[dev - 1])});
  };
  CHECK(coalition_region(a, {1, 2}, guard(3)).states ==
        testutil::ids(a, {"s0", "s1", "s2", "s4", "s5"}));
  CHECK(coalition_region(a, {2, 3}, guard(1)).states ==
        testutil::ids(a, {"s0", "s1", "s2", "s3", "s5"}));
  CHECK(coalition_region(a, {1, 3}, guard(2)).states ==
        testutil::ids(a, {"s0", "s1", "s2", "s3", "s4"}));
}

TEST_CASE("coalition strategies win their region against random play") {
  std::mt19937 rng(112233);
  for (int i = 0; i < 25; ++i) {
    std::size_t n = testutil::pick(rng, 2, 7);
    unsigned players = static_cast<unsigned>(testutil::pick(rng, 2, 3));
    GameArena a = testutil::random_arena(rng, n, players);
    std::vector<Player> coalition{1};
    if (players == 3 && (rng() & 1u)) coalition.push_back(3);
    ObjectiveExpr e = ObjectiveExpr::lit(testutil::random_positional(rng, n));

    CoalitionSolve solve = coalition_solve(a, coalition, e);
    CoalitionGame g = make_coalition_game(a, coalition, e);
    for (State s : solve.region.states.members())
      for (int trial = 0; trial < 4; ++trial) {
        Lasso l = play_against(a, g.protagonist_states, solve.strategy,
                               s, rng);
        CHECK(satisfies(a, l, e));
      }
  }
}

TEST_CASE("winning regions partition under complementation") {
  std::mt19937 rng(445566);
  for (int i = 0; i < 30; ++i) {
    std::size_t n = testutil::pick(rng, 2, 7);
    GameArena a = testutil::random_arena(rng, n, 2);
    ObjectiveExpr e = ObjectiveExpr::lit(testutil::random_positional(rng, n));
    StateSet mine = coalition_region(a, {1}, e).states;
    StateSet theirs =
        coalition_region(a, {2}, ObjectiveExpr::negation(e)).states;
    CHECK((mine | theirs) == a.all_states());
    CHECK(!mine.intersects(theirs));
  }
}

TEST_CASE("guard-shaped goals agree with their Muller translation") {
  std::mt19937 rng(778899);
  for (int i = 0; i < 20; ++i) {
    std::size_t n = testutil::pick(rng, 2, 6);
    GameArena a = testutil::random_arena(rng, n, 2);
    ObjectiveExpr guard = ObjectiveExpr::disj(
        {ObjectiveExpr::lit(testutil::random_buchi(rng, n)),
         ObjectiveExpr::negation(
             ObjectiveExpr::lit(testutil::random_buchi(rng, n)))});

    Region direct = coalition_region(a, {1}, guard);
    CHECK(direct.provenance == "iar-streett");
    Region via_muller = solve_muller(
        make_coalition_game(a, {1}, ObjectiveExpr::lit(to_muller(guard))));
    CHECK(direct.states == via_muller.states);
  }
}

TEST_CASE("solve_cooperative finds exactly the states with a good play") {
  GameArena a = testutil::fig1_arena();
  ObjectiveExpr all_three = ObjectiveExpr::conj(
      {lit_buchi(a, {"s2", "s4"}), lit_buchi(a, {"s0", "s5"}),
       lit_buchi(a, {"s1", "s3"})});

  // Only the clique can host a play that visits s2, s0, and s1 forever.
  Region everywhere = solve_cooperative(a, all_three);
  CHECK(everywhere.states == testutil::ids(a, {"s0", "s1", "s2"}));
  CHECK(everywhere.provenance == "cooperative");

  // Confined to the clique the answer is the same set.
  Region inside =
      solve_cooperative(a, all_three, testutil::ids(a, {"s0", "s1", "s2"}));
  CHECK(inside.states == testutil::ids(a, {"s0", "s1", "s2"}));

  // A co-Büchi objective over nothing is a tautology.
  CHECK(solve_cooperative(
            a, ObjectiveExpr::lit(Objective::cobuchi(StateSet(a.size()))))
            .states == a.all_states());

  // Visiting s2 and s5 infinitely often is impossible: s5 is a sink.
  CHECK(solve_cooperative(a, ObjectiveExpr::conj({lit_buchi(a, {"s2"}),
                                                  lit_buchi(a, {"s5"})}))
            .states.empty());
}

TEST_CASE("solve_cooperative agrees with full-coalition solving") {
  std::mt19937 rng(101010);
  for (int i = 0; i < 25; ++i) {
    std::size_t n = testutil::pick(rng, 2, 6);
    unsigned players = static_cast<unsigned>(testutil::pick(rng, 1, 3));
    GameArena a = testutil::random_arena(rng, n, players);
    std::vector<ObjectiveExpr> leaves{
        ObjectiveExpr::lit(testutil::random_positional(rng, n)),
        ObjectiveExpr::lit(testutil::random_positional(rng, n))};
    ObjectiveExpr e = (i & 1) ? ObjectiveExpr::conj(leaves)
                              : ObjectiveExpr::disj(leaves);

    std::vector<Player> everyone;
    for (Player p = 1; p <= players; ++p) everyone.push_back(p);
    CHECK(solve_cooperative(a, e).states ==
          coalition_region(a, everyone, e).states);
  }
}

TEST_CASE("cooperative_witness returns a checking lasso or refuses") {
  GameArena a = testutil::fig1_arena();
  ObjectiveExpr all_three = ObjectiveExpr::conj(
      {lit_buchi(a, {"s2", "s4"}), lit_buchi(a, {"s0", "s5"}),
       lit_buchi(a, {"s1", "s3"})});

  for (const char* id : {"s0", "s1", "s2"}) {
    Lasso l = cooperative_witness(a, all_three, a.index_of(id));
    l.check(a);
    CHECK(l.at(0) == a.index_of(id));
    CHECK(satisfies(a, l, all_three));
  }

  try {
    (void)cooperative_witness(a, all_three, a.index_of("s3"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Errc::no_witness);
  }
}

TEST_CASE("cooperative witnesses satisfy random objectives") {
  std::mt19937 rng(131313);
  for (int i = 0; i < 30; ++i) {
    std::size_t n = testutil::pick(rng, 2, 6);
    GameArena a = testutil::random_arena(rng, n, 2);
    ObjectiveExpr e = ObjectiveExpr::conj(
        {ObjectiveExpr::lit(testutil::random_positional(rng, n)),
         ObjectiveExpr::negation(
             ObjectiveExpr::lit(testutil::random_positional(rng, n)))});
    Region r = solve_cooperative(a, e);
    for (State s : r.states.members()) {
      Lasso l = cooperative_witness(a, e, s);
      CHECK(l.at(0) == s);
      CHECK(satisfies(a, l, e));
    }
  }
}

TEST_CASE("the solver budget guards record construction") {
  GameArena a = testutil::fig1_arena();
  std::size_t saved = solver_budget();
  set_solver_budget(4);
  try {
    ObjectiveExpr deep = ObjectiveExpr::lit(Objective::muller(
        Formula::parse("s0 & s1 & s2 & s4", a), a.size()));
    (void)coalition_region(a, {1}, deep);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Errc::memory_budget_exceeded);
  }
  set_solver_budget(saved);
  CHECK(solver_budget() == saved);
}
