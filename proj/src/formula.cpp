#include "segame/formula.hpp"

#include <cctype>
#include <sstream>

namespace segame {

Formula Formula::conj(std::vector<Formula> kids) {
  if (kids.size() == 1) return std::move(kids.front());
  return Formula(Kind::conj, 0, std::move(kids));
}

Formula Formula::disj(std::vector<Formula> kids) {
  if (kids.size() == 1) return std::move(kids.front());
  return Formula(Kind::disj, 0, std::move(kids));
}

Formula Formula::negated() const {
  switch (kind_) {
    case Kind::atom: return natom(state_);
    case Kind::natom: return atom(state_);
    case Kind::conj:
    case Kind::disj: {
      std::vector<Formula> flipped;
      flipped.reserve(kids_.size());
      for (const auto& k : kids_) flipped.push_back(k.negated());
      return Formula(kind_ == Kind::conj ? Kind::disj : Kind::conj, 0,
                     std::move(flipped));
    }
  }
  fail(Errc::bad_objective, "corrupt formula node");
}

bool Formula::eval(const StateSet& inf) const {
  switch (kind_) {
    case Kind::atom: return inf.test(state_);
    case Kind::natom: return !inf.test(state_);
    case Kind::conj:
      for (const auto& k : kids_)
        if (!k.eval(inf)) return false;
      return true;
    case Kind::disj:
      for (const auto& k : kids_)
        if (k.eval(inf)) return true;
      return false;
  }
  fail(Errc::bad_objective, "corrupt formula node");
}

StateSet Formula::mentioned(std::size_t universe) const {
  StateSet out(universe);
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f.kind_ == Kind::atom || f.kind_ == Kind::natom) {
      out.set(f.state_);
      return;
    }
    for (const auto& k : f.kids_) walk(k);
  };
  walk(*this);
  return out;
}

Formula Formula::substitute(
    const std::function<Formula(State)>& replace) const {
  switch (kind_) {
    case Kind::atom: return replace(state_);
    case Kind::natom: return replace(state_).negated();
    case Kind::conj:
    case Kind::disj: {
      std::vector<Formula> mapped;
      mapped.reserve(kids_.size());
      for (const auto& k : kids_) mapped.push_back(k.substitute(replace));
      return Formula(kind_, 0, std::move(mapped));
    }
  }
  fail(Errc::bad_objective, "corrupt formula node");
}

bool Formula::operator==(const Formula& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::atom || kind_ == Kind::natom) return state_ == o.state_;
  return kids_ == o.kids_;
}

namespace {

// Recursive-descent parser. Polarity is threaded through rather than
// building explicit negation nodes, so the result is born in NNF while the
// source-level precedence (! over & over |) still shapes the tree.
struct Parser {
  const std::string& text;
  const GameArena& arena;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void err(const std::string& what) {
    fail(Errc::parse_error,
         "formula parse error at offset " + std::to_string(pos) + ": " + what);
  }

  static bool ident_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '!' &&
           c != '&' && c != '|' && c != '(' && c != ')';
  }

  Formula parse_expr(bool positive) {
    std::vector<Formula> kids{parse_term(positive)};
    while (eat('|')) kids.push_back(parse_term(positive));
    return positive ? Formula::disj(std::move(kids))
                    : Formula::conj(std::move(kids));
  }

  Formula parse_term(bool positive) {
    std::vector<Formula> kids{parse_factor(positive)};
    while (eat('&')) kids.push_back(parse_factor(positive));
    return positive ? Formula::conj(std::move(kids))
                    : Formula::disj(std::move(kids));
  }

  Formula parse_factor(bool positive) {
    if (eat('!')) return parse_factor(!positive);
    if (eat('(')) {
      Formula inner = parse_expr(positive);
      if (!eat(')')) err("expected ')'");
      return inner;
    }
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    if (pos == start) err("expected a state id");
    std::string id = text.substr(start, pos - start);
    auto s = arena.find(id);
    if (!s)
      fail(Errc::unknown_state, "formula mentions unknown state '" + id + "'");
    return positive ? Formula::atom(*s) : Formula::natom(*s);
  }
};

} // namespace

Formula Formula::parse(const std::string& text, const GameArena& arena) {
  Parser p{text, arena};
  Formula f = p.parse_expr(true);
  p.skip_ws();
  if (p.pos != text.size()) p.err("trailing input");
  return f;
}

std::string Formula::to_string(const GameArena& arena) const {
  std::ostringstream out;
  std::function<void(const Formula&, bool)> print = [&](const Formula& f,
                                                        bool parenthesize) {
    switch (f.kind_) {
      case Kind::atom: out << arena.id_of(f.state_); return;
      case Kind::natom: out << '!' << arena.id_of(f.state_); return;
      case Kind::conj:
        if (f.kids_.empty()) { out << "true"; return; }
        if (parenthesize) out << '(';
        for (std::size_t i = 0; i < f.kids_.size(); ++i) {
          if (i) out << " & ";
          print(f.kids_[i], f.kids_[i].kind_ == Kind::disj);
        }
        if (parenthesize) out << ')';
        return;
      case Kind::disj:
        if (f.kids_.empty()) { out << "false"; return; }
        if (parenthesize) out << '(';
        for (std::size_t i = 0; i < f.kids_.size(); ++i) {
          if (i) out << " | ";
          print(f.kids_[i], false);
        }
        if (parenthesize) out << ')';
        return;
    }
  };
  print(*this, false);
  return out.str();
}

} // namespace segame
