#include <doctest.h>

#include "segame/formula.hpp"
#include "test_util.hpp"

using namespace segame;

namespace {

GameArena tiny() {
  GameArena a;
  a.set_player_count(1);
  a.add_state("p", 1);
  a.add_state("q", 1);
  a.add_state("r", 1);
  a.add_edge("p", "q");
  a.add_edge("q", "r");
  a.add_edge("r", "p");
  a.validate();
  return a;
}

}  // namespace

TEST_CASE("parse respects precedence and produces NNF") {
  GameArena a = tiny();
  Formula f = Formula::parse("p | q & !r", a);
  REQUIRE(f.kind() == Formula::Kind::disj);
  REQUIRE(f.kids().size() == 2);
  CHECK(f.kids()[0] == Formula::atom(a.index_of("p")));
  const Formula& right = f.kids()[1];
  REQUIRE(right.kind() == Formula::Kind::conj);
  CHECK(right.kids()[0] == Formula::atom(a.index_of("q")));
  CHECK(right.kids()[1] == Formula::natom(a.index_of("r")));

  // Negation distributes over parenthesized groups during parsing.
  CHECK(Formula::parse("!(p | q)", a) ==
        Formula::conj({Formula::natom(a.index_of("p")),
                       Formula::natom(a.index_of("q"))}));
  CHECK(Formula::parse("!!p", a) == Formula::atom(a.index_of("p")));
}

TEST_CASE("parse reports malformed input") {
  GameArena a = tiny();
  auto code_of = [&](const std::string& text) {
    try {
      (void)Formula::parse(text, a);
    } catch (const Error& e) {
      return e.code;
    }
    return Errc::ok;
  };
  CHECK(code_of("p &") == Errc::parse_error);
  CHECK(code_of("(p | q") == Errc::parse_error);
  CHECK(code_of("p q") == Errc::parse_error);
  CHECK(code_of("") == Errc::parse_error);
  CHECK(code_of("nosuch") == Errc::unknown_state);
}

TEST_CASE("eval matches the truth table of the connectives") {
  GameArena a = tiny();
  Formula f = Formula::parse("p & (q | !r)", a);
  auto holds = [&](std::initializer_list<const char*> in) {
    return f.eval(testutil::ids(a, in));
  };
  CHECK(holds({"p", "q"}));
  CHECK(holds({"p"}));           // !r satisfied
  CHECK(holds({"p", "q", "r"})); // q satisfied
  CHECK(!holds({"p", "r"}));
  CHECK(!holds({"q"}));

  CHECK(Formula::tt().eval(StateSet(3)));
  CHECK(!Formula::ff().eval(StateSet(3)));
}

TEST_CASE("negated is an involutive De Morgan dual") {
  GameArena a = tiny();
  for (const char* text : {"p", "!p", "p & q", "p | !q", "p & (q | !r)"}) {
    Formula f = Formula::parse(text, a);
    CHECK(f.negated().negated() == f);
    // Semantic complement on every subset of the three states.
    for (std::size_t bits = 0; bits < 8; ++bits) {
      StateSet set(3);
      for (std::size_t i = 0; i < 3; ++i)
        if (bits & (1u << i)) set.set(i);
      CHECK(f.eval(set) == !f.negated().eval(set));
    }
  }
  CHECK(Formula::tt().negated() == Formula::ff());
}

TEST_CASE("to_string round-trips through parse") {
  GameArena a = tiny();
  for (const char* text :
       {"p", "!q", "p & q & r", "p | q", "p & (q | r)", "(p | q) & !r"}) {
    Formula f = Formula::parse(text, a);
    CHECK(Formula::parse(f.to_string(a), a) == f);
  }
  CHECK(Formula::tt().to_string(a) == "true");
  CHECK(Formula::ff().to_string(a) == "false");
}

TEST_CASE("mentioned collects exactly the referenced states") {
  GameArena a = tiny();
  Formula f = Formula::parse("p & !r", a);
  CHECK(f.mentioned(a.size()) == testutil::ids(a, {"p", "r"}));
  CHECK(Formula::tt().mentioned(a.size()).empty());
}

TEST_CASE("substitute rewrites atoms and flips under negated atoms") {
  GameArena a = tiny();
  State p = a.index_of("p");
  State q = a.index_of("q");
  State r = a.index_of("r");
  Formula f = Formula::parse("p | !q", a);
  // p -> q & r, q -> r: the negated atom becomes the negation of the image.
  Formula g = f.substitute([&](State s) {
    if (s == p) return Formula::conj({Formula::atom(q), Formula::atom(r)});
    if (s == q) return Formula::atom(r);
    return Formula::atom(s);
  });
  CHECK(g == Formula::parse("q & r | !r", a));

  // Substituting ff into a negated atom yields a tautologous branch.
  Formula h = Formula::parse("!p", a).substitute(
      [](State) { return Formula::ff(); });
  CHECK(h.eval(StateSet(3)));
  CHECK(h.eval(testutil::ids(a, {"p", "q", "r"})));
}

TEST_CASE("singleton conj and disj collapse to the child") {
  GameArena a = tiny();
  Formula atom = Formula::atom(a.index_of("p"));
  CHECK(Formula::conj({atom}) == atom);
  CHECK(Formula::disj({atom}) == atom);
}
