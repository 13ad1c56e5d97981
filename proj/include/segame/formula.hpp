#pragma once

#include <functional>
#include <string>
#include <vector>

#include "segame/arena.hpp"
#include "segame/state_set.hpp"

namespace segame {

// Boolean formula over arena states, kept in negation normal form: negation
// only ever applies to atoms. Used for trace-class objectives evaluated on
// the set of states a play visits infinitely often (atom s holds iff s is in
// that set). Truth constants are the empty conjunction / disjunction.
class Formula {
public:
  enum class Kind { atom, natom, conj, disj };

  static Formula atom(State s) { return Formula(Kind::atom, s, {}); }
  static Formula natom(State s) { return Formula(Kind::natom, s, {}); }
  static Formula tt() { return Formula(Kind::conj, 0, {}); }
  static Formula ff() { return Formula(Kind::disj, 0, {}); }
  static Formula conj(std::vector<Formula> kids);
  static Formula disj(std::vector<Formula> kids);

  Kind kind() const { return kind_; }
  State state() const { return state_; }
  const std::vector<Formula>& kids() const { return kids_; }

  // Dual under De Morgan; stays in negation normal form.
  Formula negated() const;

  bool eval(const StateSet& infinitely_visited) const;

  // States mentioned anywhere in the formula.
  StateSet mentioned(std::size_t universe) const;

  // Replace each atom by replace(state); a negated atom becomes the
  // negation of replace(state). Used to transport formulas onto products.
  Formula substitute(const std::function<Formula(State)>& replace) const;

  // Concrete syntax: atoms are state ids; `!` negation binds tightest,
  // then `&`, then `|`; parentheses group. Ids are resolved in `arena`.
  static Formula parse(const std::string& text, const GameArena& arena);

  std::string to_string(const GameArena& arena) const;

  bool operator==(const Formula& o) const;

private:
  Formula(Kind k, State s, std::vector<Formula> kids)
      : kind_(k), state_(s), kids_(std::move(kids)) {}

  Kind kind_;
  State state_ = 0;         // meaningful for atom / natom only
  std::vector<Formula> kids_;
};

} // namespace segame
