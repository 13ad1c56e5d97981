#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "segame/arena.hpp"
#include "segame/formula.hpp"
#include "segame/state_set.hpp"

namespace segame {

enum class ObjClass { buchi, cobuchi, parity, streett, rabin, muller };

// Acceptance pair for Streett/Rabin objectives. A play with infinitely-
// visited set I satisfies a Streett pair iff I∩fin=∅ or I∩inf≠∅, and a
// Rabin pair iff I∩fin≠∅ and I∩inf=∅. One pair list serves both classes,
// which is what makes Streett/Rabin negation a pure class swap.
struct AccPair {
  StateSet fin;
  StateSet inf;
  bool operator==(const AccPair& o) const {
    return fin == o.fin && inf == o.inf;
  }
};

// One base omega-regular objective, evaluated on the set of states a play
// visits infinitely often. Parity uses the min convention: the play is
// accepted iff the smallest color seen infinitely often is even.
class Objective {
public:
  static Objective buchi(StateSet b);
  static Objective cobuchi(StateSet c);
  static Objective parity(std::vector<unsigned> colors);
  static Objective streett(std::vector<AccPair> pairs);
  static Objective rabin(std::vector<AccPair> pairs);
  static Objective muller(Formula phi, std::size_t universe);

  ObjClass cls() const { return cls_; }
  const StateSet& target() const { return set_; }            // buchi/cobuchi
  const std::vector<unsigned>& colors() const { return colors_; }
  const std::vector<AccPair>& pairs() const { return pairs_; }
  const Formula& formula() const { return formula_; }

  std::size_t universe() const;

  bool holds_on(const StateSet& infinitely_visited) const;

  // Throws ForeignState when the payload was built for a different arena
  // (and BadObjective for a non-total parity coloring).
  void check_against(const GameArena& arena) const;

  bool operator==(const Objective& o) const;

private:
  Objective() : formula_(Formula::tt()) {}

  ObjClass cls_ = ObjClass::buchi;
  StateSet set_;
  std::vector<unsigned> colors_;
  std::vector<AccPair> pairs_;
  Formula formula_;
  std::size_t universe_ = 0;  // for classes whose payload doesn't carry it
};

// Complement objective with the same-shape payload: Büchi↔co-Büchi on the
// same set, parity with every color shifted up by one, Streett↔Rabin on the
// same pair list, Muller on the negated formula.
Objective negate(const Objective& o);

// Boolean combination of base objectives: leaves plus Not/And/Or nodes of
// arbitrary finite arity. Singleton And/Or collapse to their child.
class ObjectiveExpr {
public:
  enum class Kind { lit, not_, and_, or_ };

  static ObjectiveExpr lit(Objective o);
  static ObjectiveExpr negation(ObjectiveExpr e);
  static ObjectiveExpr conj(std::vector<ObjectiveExpr> kids);
  static ObjectiveExpr disj(std::vector<ObjectiveExpr> kids);

  Kind kind() const { return kind_; }
  const Objective& leaf() const { return *leaf_; }
  const std::vector<ObjectiveExpr>& kids() const { return kids_; }

  bool holds_on(const StateSet& infinitely_visited) const;
  void check_against(const GameArena& arena) const;
  std::size_t universe() const;

private:
  ObjectiveExpr() = default;

  Kind kind_ = Kind::and_;
  std::optional<Objective> leaf_;
  std::vector<ObjectiveExpr> kids_;
};

// Whether the infinite play stem·cycle^ω denoted by ℓ satisfies e; depends
// only on the cycle members (the infinitely-visited set).
bool satisfies(const GameArena& arena, const Lasso& l, const ObjectiveExpr& e);
bool satisfies(const GameArena& arena, const Lasso& l, const Objective& o);

// Collapses e into one base objective using the closure laws (union of
// Büchi is Büchi of the union, intersection of co-Büchi is co-Büchi of the
// union, negation via negate); nullopt when no law chain applies.
std::optional<Objective> flatten_same_class(const ObjectiveExpr& e);

// Equivalent Muller objective: each leaf unfolds to a Boolean formula over
// states, connectives map to formula connectives.
Objective to_muller(const ObjectiveExpr& e);

// Single-Streett-objective encodings for the two guard shapes
//   φ_W ∪ φ_L ∪ ¬φ_w        (disjunction with one negated leaf)
//   (φ_W ∪ φ_L) ∩ ¬φ_l      (that disjunction conjoined with a negated leaf)
// with every leaf a Büchi objective: pair (F,G) per winner i with F the
// negated leaf's set and G = B_i ∪ B_L. rabin_encoding handles the same
// shapes over co-Büchi leaves, pair per disjunct. Both throw ShapeMismatch
// when e is not of the supported form; both are lasso-equivalent to e.
Objective streett_encoding(const ObjectiveExpr& e);
Objective rabin_encoding(const ObjectiveExpr& e);

} // namespace segame
