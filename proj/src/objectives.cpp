#include "segame/objectives.hpp"

#include <algorithm>
#include <map>

namespace segame {

Objective Objective::buchi(StateSet b) {
  Objective o;
  o.cls_ = ObjClass::buchi;
  o.universe_ = b.universe();
  o.set_ = std::move(b);
  return o;
}

Objective Objective::cobuchi(StateSet c) {
  Objective o;
  o.cls_ = ObjClass::cobuchi;
  o.universe_ = c.universe();
  o.set_ = std::move(c);
  return o;
}

Objective Objective::parity(std::vector<unsigned> colors) {
  Objective o;
  o.cls_ = ObjClass::parity;
  o.universe_ = colors.size();
  o.colors_ = std::move(colors);
  return o;
}

Objective Objective::streett(std::vector<AccPair> pairs) {
  Objective o;
  o.cls_ = ObjClass::streett;
  o.universe_ = pairs.empty() ? 0 : pairs.front().fin.universe();
  o.pairs_ = std::move(pairs);
  return o;
}

Objective Objective::rabin(std::vector<AccPair> pairs) {
  Objective o;
  o.cls_ = ObjClass::rabin;
  o.universe_ = pairs.empty() ? 0 : pairs.front().fin.universe();
  o.pairs_ = std::move(pairs);
  return o;
}

Objective Objective::muller(Formula phi, std::size_t universe) {
  Objective o;
  o.cls_ = ObjClass::muller;
  o.universe_ = universe;
  o.formula_ = std::move(phi);
  return o;
}

std::size_t Objective::universe() const { return universe_; }

bool Objective::holds_on(const StateSet& inf) const {
  switch (cls_) {
    case ObjClass::buchi: return inf.intersects(set_);
    case ObjClass::cobuchi: return !inf.intersects(set_);
    case ObjClass::parity: {
      unsigned best = 0;
      bool seen = false;
      for (std::size_t s = 0; s < colors_.size(); ++s) {
        if (!inf.test(s)) continue;
        if (!seen || colors_[s] < best) best = colors_[s];
        seen = true;
      }
      return seen && best % 2 == 0;
    }
    case ObjClass::streett:
      for (const auto& p : pairs_)
        if (inf.intersects(p.fin) && !inf.intersects(p.inf)) return false;
      return true;
    case ObjClass::rabin:
      for (const auto& p : pairs_)
        if (inf.intersects(p.fin) && !inf.intersects(p.inf)) return true;
      return false;
    case ObjClass::muller: return formula_.eval(inf);
  }
  fail(Errc::bad_objective, "corrupt objective");
}

void Objective::check_against(const GameArena& arena) const {
  std::size_t n = arena.size();
  auto check_set = [&](const StateSet& s) {
    if (s.universe() != n)
      fail(Errc::foreign_state, "objective set built for a different arena");
  };
  switch (cls_) {
    case ObjClass::buchi:
    case ObjClass::cobuchi: check_set(set_); return;
    case ObjClass::parity:
      if (colors_.size() != n)
        fail(Errc::bad_objective, "parity coloring is not total on states");
      return;
    case ObjClass::streett:
    case ObjClass::rabin:
      for (const auto& p : pairs_) { check_set(p.fin); check_set(p.inf); }
      return;
    case ObjClass::muller: {
      StateSet used = formula_.mentioned(std::max(n, universe_));
      for (std::size_t s : used.members())
        if (s >= n)
          fail(Errc::foreign_state, "formula mentions a state outside arena");
      return;
    }
  }
}

bool Objective::operator==(const Objective& o) const {
  if (cls_ != o.cls_) return false;
  switch (cls_) {
    case ObjClass::buchi:
    case ObjClass::cobuchi: return set_ == o.set_;
    case ObjClass::parity: return colors_ == o.colors_;
    case ObjClass::streett:
    case ObjClass::rabin: return pairs_ == o.pairs_;
    case ObjClass::muller: return formula_ == o.formula_;
  }
  return false;
}

Objective negate(const Objective& o) {
  switch (o.cls()) {
    case ObjClass::buchi: return Objective::cobuchi(o.target());
    case ObjClass::cobuchi: return Objective::buchi(o.target());
    case ObjClass::parity: {
      std::vector<unsigned> shifted = o.colors();
      for (auto& c : shifted) ++c;
      return Objective::parity(std::move(shifted));
    }
    case ObjClass::streett: return Objective::rabin(o.pairs());
    case ObjClass::rabin: return Objective::streett(o.pairs());
    case ObjClass::muller:
      return Objective::muller(o.formula().negated(), o.universe());
  }
  fail(Errc::bad_objective, "corrupt objective");
}

ObjectiveExpr ObjectiveExpr::lit(Objective o) {
  ObjectiveExpr e;
  e.kind_ = Kind::lit;
  e.leaf_ = std::move(o);
  return e;
}

ObjectiveExpr ObjectiveExpr::negation(ObjectiveExpr inner) {
  ObjectiveExpr e;
  e.kind_ = Kind::not_;
  e.kids_.push_back(std::move(inner));
  return e;
}

ObjectiveExpr ObjectiveExpr::conj(std::vector<ObjectiveExpr> kids) {
  if (kids.size() == 1) return std::move(kids.front());
  ObjectiveExpr e;
  e.kind_ = Kind::and_;
  e.kids_ = std::move(kids);
  return e;
}

ObjectiveExpr ObjectiveExpr::disj(std::vector<ObjectiveExpr> kids) {
  if (kids.size() == 1) return std::move(kids.front());
  ObjectiveExpr e;
  e.kind_ = Kind::or_;
  e.kids_ = std::move(kids);
  return e;
}

bool ObjectiveExpr::holds_on(const StateSet& inf) const {
  switch (kind_) {
    case Kind::lit: return leaf_->holds_on(inf);
    case Kind::not_: return !kids_.front().holds_on(inf);
    case Kind::and_:
      for (const auto& k : kids_)
        if (!k.holds_on(inf)) return false;
      return true;
    case Kind::or_:
      for (const auto& k : kids_)
        if (k.holds_on(inf)) return true;
      return false;
  }
  fail(Errc::bad_objective, "corrupt objective expression");
}

void ObjectiveExpr::check_against(const GameArena& arena) const {
  if (kind_ == Kind::lit) {
    leaf_->check_against(arena);
    return;
  }
  for (const auto& k : kids_) k.check_against(arena);
}

std::size_t ObjectiveExpr::universe() const {
  if (kind_ == Kind::lit) return leaf_->universe();
  for (const auto& k : kids_) {
    std::size_t u = k.universe();
    if (u) return u;
  }
  return 0;
}

bool satisfies(const GameArena& arena, const Lasso& l, const ObjectiveExpr& e) {
  l.check(arena);
  e.check_against(arena);
  return e.holds_on(l.inf(arena.size()));
}

bool satisfies(const GameArena& arena, const Lasso& l, const Objective& o) {
  return satisfies(arena, l, ObjectiveExpr::lit(o));
}

std::optional<Objective> flatten_same_class(const ObjectiveExpr& e) {
  switch (e.kind()) {
    case ObjectiveExpr::Kind::lit: return e.leaf();
    case ObjectiveExpr::Kind::not_: {
      auto inner = flatten_same_class(e.kids().front());
      if (!inner) return std::nullopt;
      return negate(*inner);
    }
    case ObjectiveExpr::Kind::or_: {
      // Union of Büchi objectives is the Büchi objective of the union.
      StateSet acc;
      for (const auto& k : e.kids()) {
        auto o = flatten_same_class(k);
        if (!o || o->cls() != ObjClass::buchi) return std::nullopt;
        if (acc.universe() == 0) acc = o->target();
        else acc |= o->target();
      }
      if (e.kids().empty()) return std::nullopt;
      return Objective::buchi(acc);
    }
    case ObjectiveExpr::Kind::and_: {
      // Intersection of co-Büchi objectives is co-Büchi of the union.
      StateSet acc;
      for (const auto& k : e.kids()) {
        auto o = flatten_same_class(k);
        if (!o || o->cls() != ObjClass::cobuchi) return std::nullopt;
        if (acc.universe() == 0) acc = o->target();
        else acc |= o->target();
      }
      if (e.kids().empty()) return std::nullopt;
      return Objective::cobuchi(acc);
    }
  }
  return std::nullopt;
}

namespace {

Formula muller_of_leaf(const Objective& o) {
  switch (o.cls()) {
    case ObjClass::buchi: {
      std::vector<Formula> atoms;
      for (std::size_t s : o.target().members()) atoms.push_back(Formula::atom(s));
      return Formula::disj(std::move(atoms));
    }
    case ObjClass::cobuchi: {
      std::vector<Formula> atoms;
      for (std::size_t s : o.target().members()) atoms.push_back(Formula::natom(s));
      return Formula::conj(std::move(atoms));
    }
    case ObjClass::parity: {
      // Min color visited infinitely often is even: some even color c is
      // hit while every state of a smaller color is avoided.
      std::map<unsigned, std::vector<std::size_t>> by_color;
      for (std::size_t s = 0; s < o.colors().size(); ++s)
        by_color[o.colors()[s]].push_back(s);
      std::vector<Formula> cases;
      for (const auto& [c, states] : by_color) {
        if (c % 2) continue;
        std::vector<Formula> hit;
        for (std::size_t s : states) hit.push_back(Formula::atom(s));
        std::vector<Formula> part{Formula::disj(std::move(hit))};
        for (const auto& [c2, lower] : by_color) {
          if (c2 >= c) break;
          for (std::size_t s : lower) part.push_back(Formula::natom(s));
        }
        cases.push_back(Formula::conj(std::move(part)));
      }
      return Formula::disj(std::move(cases));
    }
    case ObjClass::streett: {
      std::vector<Formula> conjuncts;
      for (const auto& p : o.pairs())
        conjuncts.push_back(Formula::disj(
            {muller_of_leaf(Objective::cobuchi(p.fin)),
             muller_of_leaf(Objective::buchi(p.inf))}));
      return Formula::conj(std::move(conjuncts));
    }
    case ObjClass::rabin: {
      std::vector<Formula> disjuncts;
      for (const auto& p : o.pairs())
        disjuncts.push_back(Formula::conj(
            {muller_of_leaf(Objective::buchi(p.fin)),
             muller_of_leaf(Objective::cobuchi(p.inf))}));
      return Formula::disj(std::move(disjuncts));
    }
    case ObjClass::muller: return o.formula();
  }
  fail(Errc::bad_objective, "corrupt objective");
}

Formula muller_of_expr(const ObjectiveExpr& e) {
  switch (e.kind()) {
    case ObjectiveExpr::Kind::lit: return muller_of_leaf(e.leaf());
    case ObjectiveExpr::Kind::not_:
      return muller_of_expr(e.kids().front()).negated();
    case ObjectiveExpr::Kind::and_: {
      std::vector<Formula> kids;
      for (const auto& k : e.kids()) kids.push_back(muller_of_expr(k));
      return Formula::conj(std::move(kids));
    }
    case ObjectiveExpr::Kind::or_: {
      std::vector<Formula> kids;
      for (const auto& k : e.kids()) kids.push_back(muller_of_expr(k));
      return Formula::disj(std::move(kids));
    }
  }
  fail(Errc::bad_objective, "corrupt objective expression");
}

// Decomposition of the two guard shapes shared by both encodings.
//   disjunctive: winners… ∪ others… ∪ ¬neg      (Or with one Not leaf)
//   conjunctive: (winners… ∪ others…) ∩ ¬neg    (And with one Not leaf)
// `winners` are leaves under an intersection (the all-winners-win block),
// `others` are bare disjuncts. A lone negated leaf matches either reading.
struct GuardShape {
  std::vector<StateSet> winners;
  std::vector<StateSet> others;
  StateSet neg;
  bool conjunctive = false;
};

StateSet leaf_set(const ObjectiveExpr& e, ObjClass want) {
  if (e.kind() != ObjectiveExpr::Kind::lit || e.leaf().cls() != want)
    fail(Errc::shape_mismatch, "guard leaf is not of the expected class");
  return e.leaf().target();
}

StateSet negated_leaf_set(const ObjectiveExpr& e, ObjClass want) {
  if (e.kind() != ObjectiveExpr::Kind::not_)
    fail(Errc::shape_mismatch, "expected a negated leaf");
  return leaf_set(e.kids().front(), want);
}

// Splits the disjunction kids into the intersection block and bare leaves.
void split_disjuncts(const std::vector<ObjectiveExpr>& kids, ObjClass want,
                     GuardShape& out, bool allow_neg) {
  bool have_neg = false;
  for (const auto& k : kids) {
    switch (k.kind()) {
      case ObjectiveExpr::Kind::lit:
        out.others.push_back(leaf_set(k, want));
        break;
      case ObjectiveExpr::Kind::and_:
        if (!out.winners.empty())
          fail(Errc::shape_mismatch, "more than one intersection block");
        for (const auto& w : k.kids()) out.winners.push_back(leaf_set(w, want));
        if (out.winners.empty())
          fail(Errc::shape_mismatch, "empty intersection block");
        break;
      case ObjectiveExpr::Kind::not_:
        if (!allow_neg || have_neg)
          fail(Errc::shape_mismatch, "unexpected negated disjunct");
        out.neg = negated_leaf_set(k, want);
        have_neg = true;
        break;
      case ObjectiveExpr::Kind::or_:
        fail(Errc::shape_mismatch, "nested disjunction in guard");
    }
  }
  if (allow_neg && !have_neg)
    fail(Errc::shape_mismatch, "disjunctive guard lacks a negated leaf");
}

GuardShape match_guard(const ObjectiveExpr& e, ObjClass want) {
  GuardShape shape;
  switch (e.kind()) {
    case ObjectiveExpr::Kind::not_:
      shape.neg = negated_leaf_set(e, want);
      shape.conjunctive = true;
      return shape;
    case ObjectiveExpr::Kind::or_:
      split_disjuncts(e.kids(), want, shape, /*allow_neg=*/true);
      return shape;
    case ObjectiveExpr::Kind::and_: {
      shape.conjunctive = true;
      bool have_neg = false;
      std::vector<ObjectiveExpr> positive;
      for (const auto& k : e.kids()) {
        if (k.kind() == ObjectiveExpr::Kind::not_) {
          if (have_neg) fail(Errc::shape_mismatch, "two negated conjuncts");
          shape.neg = negated_leaf_set(k, want);
          have_neg = true;
        } else {
          positive.push_back(k);
        }
      }
      if (!have_neg)
        fail(Errc::shape_mismatch, "conjunctive guard lacks a negated leaf");
      if (positive.size() == 1 &&
          positive.front().kind() == ObjectiveExpr::Kind::or_) {
        split_disjuncts(positive.front().kids(), want, shape,
                        /*allow_neg=*/false);
      } else {
        // Remaining conjuncts are the all-winners-win intersection.
        for (const auto& p : positive) {
          if (p.kind() == ObjectiveExpr::Kind::lit) {
            shape.winners.push_back(leaf_set(p, want));
          } else if (p.kind() == ObjectiveExpr::Kind::and_) {
            for (const auto& w : p.kids())
              shape.winners.push_back(leaf_set(w, want));
          } else {
            fail(Errc::shape_mismatch, "unsupported conjunct in guard");
          }
        }
      }
      return shape;
    }
    case ObjectiveExpr::Kind::lit:
      fail(Errc::shape_mismatch, "bare objective is not a guard shape");
  }
  fail(Errc::shape_mismatch, "corrupt objective expression");
}

StateSet union_of(const std::vector<StateSet>& sets, std::size_t n) {
  StateSet u(n);
  for (const auto& s : sets) u |= s;
  return u;
}

} // namespace

Objective to_muller(const ObjectiveExpr& e) {
  return Objective::muller(muller_of_expr(e), e.universe());
}

Objective streett_encoding(const ObjectiveExpr& e) {
  GuardShape g = match_guard(e, ObjClass::buchi);
  std::size_t n = g.neg.universe();
  StateSet others = union_of(g.others, n);
  StateSet all(n);
  for (std::size_t s = 0; s < n; ++s) all.set(s);
  std::vector<AccPair> pairs;
  if (g.conjunctive) {
    // (⋂_i (Büchi(B_i ∪ B_L) ∪ CoBüchi(S))) ∩ (CoBüchi(neg) ∪ Büchi(∅))
    if (!g.winners.empty()) {
      for (const auto& w : g.winners) pairs.push_back({all, w | others});
    } else if (!g.others.empty()) {
      pairs.push_back({all, others});
    }
    pairs.push_back({g.neg, StateSet(n)});
  } else {
    // ⋂_i (CoBüchi(neg) ∪ Büchi(B_i ∪ B_L))
    if (!g.winners.empty()) {
      for (const auto& w : g.winners) pairs.push_back({g.neg, w | others});
    } else {
      pairs.push_back({g.neg, others});
    }
  }
  return Objective::streett(std::move(pairs));
}

Objective rabin_encoding(const ObjectiveExpr& e) {
  GuardShape g = match_guard(e, ObjClass::cobuchi);
  std::size_t n = g.neg.universe();
  StateSet all(n);
  for (std::size_t s = 0; s < n; ++s) all.set(s);
  StateSet winners = union_of(g.winners, n);
  std::vector<AccPair> pairs;
  if (g.conjunctive) {
    // (Büchi(neg) ∩ CoBüchi(C_W)) ∪ ⋃_i (Büchi(neg) ∩ CoBüchi(C_i))
    if (!g.winners.empty()) pairs.push_back({g.neg, winners});
    for (const auto& c : g.others) pairs.push_back({g.neg, c});
    if (pairs.empty()) pairs.push_back({g.neg, StateSet(n)});
  } else {
    // (Büchi(S) ∩ CoBüchi(C_W)) ∪ ⋃_i (Büchi(S) ∩ CoBüchi(C_i))
    //   ∪ (Büchi(neg) ∩ CoBüchi(∅))
    if (!g.winners.empty()) pairs.push_back({all, winners});
    for (const auto& c : g.others) pairs.push_back({all, c});
    pairs.push_back({g.neg, StateSet(n)});
  }
  return Objective::rabin(std::move(pairs));
}

} // namespace segame
