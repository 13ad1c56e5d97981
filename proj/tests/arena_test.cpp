#include <doctest.h>

#include <functional>

#include "segame/arena.hpp"
#include "test_util.hpp"

using namespace segame;

namespace {

bool fails_with(Errc code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code == code;
  }
  return false;
}

}  // namespace

TEST_CASE("arena builder assigns dense indices in insertion order") {
  GameArena a = testutil::fig1_arena();
  CHECK(a.size() == 6);
  CHECK(a.player_count() == 3);
  CHECK(a.index_of("s0") == 0);
  CHECK(a.index_of("s5") == 5);
  CHECK(a.id_of(2) == "s2");
  CHECK(a.owner(a.index_of("s0")) == 1);
  CHECK(a.owner(a.index_of("s1")) == 2);
  CHECK(a.owner(a.index_of("s2")) == 3);
  CHECK(a.owner(a.index_of("s4")) == 1);
  CHECK(a.find("nope") == std::nullopt);
  CHECK(fails_with(Errc::unknown_state, [&] { (void)a.index_of("nope"); }));
}

TEST_CASE("successor lists preserve edge insertion order") {
  GameArena a = testutil::fig1_arena();
  const auto& succ = a.successors(a.index_of("s0"));
  REQUIRE(succ.size() == 3);
  CHECK(a.id_of(succ[0]) == "s1");
  CHECK(a.id_of(succ[1]) == "s2");
  CHECK(a.id_of(succ[2]) == "s3");

  const auto& pred = a.predecessors(a.index_of("s0"));
  REQUIRE(pred.size() == 2);
  CHECK(a.id_of(pred[0]) == "s1");
  CHECK(a.id_of(pred[1]) == "s2");

  CHECK(a.has_edge(a.index_of("s0"), a.index_of("s3")));
  CHECK(!a.has_edge(a.index_of("s3"), a.index_of("s0")));
}

TEST_CASE("validate rejects malformed arenas") {
  CHECK(fails_with(Errc::empty_arena, [] { GameArena{}.validate(); }));

  CHECK(fails_with(Errc::duplicate_state, [] {
    GameArena a;
    a.set_player_count(1);
    a.add_state("x", 1);
    a.add_state("x", 1);
  }));

  CHECK(fails_with(Errc::dangling_edge, [] {
    GameArena a;
    a.set_player_count(1);
    a.add_state("x", 1);
    a.add_edge("x", "y");
  }));

  CHECK(fails_with(Errc::unknown_owner, [] {
    GameArena a;
    a.set_player_count(2);
    a.add_state("x", 3);
    a.add_edge("x", "x");
    a.validate();
  }));

  CHECK(fails_with(Errc::dead_end_state, [] {
    GameArena a;
    a.set_player_count(1);
    a.add_state("x", 1);
    a.validate();
  }));
}

TEST_CASE("owned_by and all_states partition the arena") {
  GameArena a = testutil::fig1_arena();
  StateSet everyone = a.all_states();
  CHECK(everyone.count() == 6);
  StateSet unioned(a.size());
  for (Player p = 1; p <= 3; ++p) {
    StateSet mine = a.owned_by(p);
    CHECK(!mine.intersects(unioned));
    unioned |= mine;
  }
  CHECK(unioned == everyone);
  CHECK(a.owned_by(1).count() == 4);
}

TEST_CASE("restrict keeps ids and drops outside edges") {
  GameArena a = testutil::fig1_arena();
  GameArena clique = a.restrict(testutil::ids(a, {"s0", "s1", "s2"}));
  CHECK(clique.size() == 3);
  CHECK(clique.player_count() == 3);
  CHECK(clique.owner(clique.index_of("s2")) == 3);
  // s0's edge to s3 is gone, the clique edges survive in order.
  const auto& succ = clique.successors(clique.index_of("s0"));
  REQUIRE(succ.size() == 2);
  CHECK(clique.id_of(succ[0]) == "s1");
  CHECK(clique.id_of(succ[1]) == "s2");

  // s1 alone has no internal edge, so the restriction would strand it.
  CHECK(fails_with(Errc::dead_end_state,
                   [&] { (void)a.restrict(testutil::ids(a, {"s1"})); }));
  CHECK(fails_with(Errc::foreign_state,
                   [&] { (void)a.restrict(StateSet(2)); }));
}

TEST_CASE("prune_dead_ends reaches the largest live core") {
  GameArena a = testutil::fig1_arena();
  // {s0, s3} is already live: s0 -> s3 -> s3.
  CHECK(a.prune_dead_ends(testutil::ids(a, {"s0", "s3"})) ==
        testutil::ids(a, {"s0", "s3"}));
  // s1 alone dies, and removing it cannot strand anything else here.
  CHECK(a.prune_dead_ends(testutil::ids(a, {"s1"})).empty());
  // A chain that collapses completely: s1 -> s0 kept, s0's successors gone.
  GameArena chain;
  chain.set_player_count(1);
  chain.add_state("a", 1);
  chain.add_state("b", 1);
  chain.add_state("c", 1);
  chain.add_edge("a", "b");
  chain.add_edge("b", "c");
  chain.add_edge("c", "c");
  chain.validate();
  CHECK(chain.prune_dead_ends(testutil::ids(chain, {"a", "b"})).empty());
  CHECK(chain.prune_dead_ends(chain.all_states()) == chain.all_states());
}

TEST_CASE("lasso check accepts real plays and rejects broken ones") {
  GameArena a = testutil::fig1_arena();
  Lasso l;
  l.stem = {a.index_of("s0")};
  l.cycle = {a.index_of("s1"), a.index_of("s2")};
  l.check(a);
  CHECK(l.at(0) == a.index_of("s0"));
  CHECK(l.at(1) == a.index_of("s1"));
  CHECK(l.at(2) == a.index_of("s2"));
  CHECK(l.at(3) == a.index_of("s1"));
  CHECK(l.inf(a.size()) == testutil::ids(a, {"s1", "s2"}));

  Lasso empty_cycle;
  empty_cycle.stem = {0};
  CHECK(fails_with(Errc::invalid_lasso, [&] { empty_cycle.check(a); }));

  Lasso broken;
  broken.cycle = {a.index_of("s3"), a.index_of("s4")};  // no edge s3 -> s4
  CHECK(fails_with(Errc::invalid_lasso, [&] { broken.check(a); }));

  Lasso unclosed;
  unclosed.cycle = {a.index_of("s0"), a.index_of("s3")};  // s3 never returns
  CHECK(fails_with(Errc::invalid_lasso, [&] { unclosed.check(a); }));
}

TEST_CASE("random arenas from the test helper always validate") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 50; ++i) {
    std::size_t n = testutil::pick(rng, 1, 8);
    unsigned players = static_cast<unsigned>(testutil::pick(rng, 1, 3));
    GameArena a = testutil::random_arena(rng, n, players);
    CHECK(a.size() == n);
    for (State s = 0; s < static_cast<State>(n); ++s)
      CHECK(!a.successors(s).empty());
    Lasso l = testutil::random_lasso(rng, a);
    CHECK(!l.cycle.empty());
  }
}
