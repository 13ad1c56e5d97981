#include "segame/products.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace segame {

namespace {

// Shared interning of permutation records.
class PermTable {
public:
  explicit PermTable(std::size_t budget) : budget_(budget) {}

  std::size_t intern(std::vector<std::uint32_t> perm) const {
    auto it = ids_.find(perm);
    if (it != ids_.end()) return it->second;
    if (perms_.size() >= budget_)
      fail(Errc::memory_budget_exceeded,
           "record space exceeds the configured budget");
    std::size_t id = perms_.size();
    perms_.push_back(perm);
    ids_.emplace(std::move(perm), id);
    return id;
  }

  const std::vector<std::uint32_t>& at(std::size_t id) const {
    return perms_[id];
  }
  std::size_t size() const { return perms_.size(); }

private:
  std::size_t budget_;
  mutable std::vector<std::vector<std::uint32_t>> perms_;
  mutable std::map<std::vector<std::uint32_t>, std::size_t> ids_;
};

// Latest-appearance record over the formula's mentioned states. The color
// of visiting s with past record r: h = position of s in r (1-based); the
// states at positions 1..h are exactly those visited since the previous
// visit of s, so once the play settles, maximal h equals |inf ∩ mentioned|
// and the corresponding hit set equals inf ∩ mentioned. Parity of the
// minimal recurring color therefore matches the formula's verdict on inf.
class LarAutomaton final : public RecordAutomaton {
public:
  LarAutomaton(const GameArena& arena, const Formula& phi, std::size_t budget)
      : phi_(phi), universe_(arena.size()), perms_(budget) {
    for (std::size_t s : phi.mentioned(universe_).members())
      gamma_.push_back(static_cast<std::uint32_t>(s));
    pos_in_gamma_.assign(universe_, UINT32_MAX);
    for (std::size_t i = 0; i < gamma_.size(); ++i)
      pos_in_gamma_[gamma_[i]] = static_cast<std::uint32_t>(i);
    initial_ = perms_.intern(gamma_);
    empty_verdict_ = phi_.eval(StateSet(universe_));
  }

  std::size_t initial() const override { return initial_; }

  std::size_t fold(std::size_t rec, State s) const override {
    if (pos_in_gamma_[s] == UINT32_MAX) return rec;
    std::vector<std::uint32_t> perm = perms_.at(rec);
    auto it = std::find(perm.begin(), perm.end(),
                        static_cast<std::uint32_t>(s));
    std::rotate(perm.begin(), it, it + 1);
    return perms_.intern(std::move(perm));
  }

  unsigned color(std::size_t rec_before, State s) const override {
    std::size_t k = gamma_.size();
    if (pos_in_gamma_[s] == UINT32_MAX)
      return 2 * static_cast<unsigned>(k) + (empty_verdict_ ? 0 : 1);
    const auto& perm = perms_.at(rec_before);
    std::size_t h = 0;
    StateSet hitset(universe_);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      hitset.set(perm[i]);
      if (perm[i] == s) { h = i + 1; break; }
    }
    bool good = phi_.eval(hitset);
    return 2 * static_cast<unsigned>(k - h) + (good ? 0 : 1);
  }

  std::size_t record_count() const override { return perms_.size(); }

private:
  Formula phi_;
  std::size_t universe_;
  std::vector<std::uint32_t> gamma_;
  std::vector<std::uint32_t> pos_in_gamma_;
  PermTable perms_;
  std::size_t initial_;
  bool empty_verdict_;
};

// Index-appearance record for Streett pairs. Grant events (visits to a
// pair's inf-set) move the pair index to the front. A visit requesting at
// depth q (deepest pair whose fin-set is hit) while granting at depth g
// emits max-parity color 2q-1 when the request is deeper, else 2g; the
// stable suffix of the record makes the maximal recurring color even iff
// every pair requested infinitely often is also granted infinitely often.
// Colors are converted to the min-parity convention (and shifted by one on
// the Rabin side, where the complement language is the protagonist's).
class IarAutomaton final : public RecordAutomaton {
public:
  IarAutomaton(const GameArena& arena, const std::vector<AccPair>& pairs,
               bool rabin_side, std::size_t budget)
      : pairs_(pairs), rabin_(rabin_side), perms_(budget) {
    for (const auto& p : pairs_) {
      if (p.fin.universe() != arena.size() || p.inf.universe() != arena.size())
        fail(Errc::foreign_state, "pair sets built for a different arena");
    }
    std::vector<std::uint32_t> id(pairs_.size());
    for (std::size_t i = 0; i < id.size(); ++i)
      id[i] = static_cast<std::uint32_t>(i);
    initial_ = perms_.intern(std::move(id));
  }

  std::size_t initial() const override { return initial_; }

  std::size_t fold(std::size_t rec, State s) const override {
    const auto& perm = perms_.at(rec);
    std::vector<std::uint32_t> granted, rest;
    for (auto j : perm)
      (pairs_[j].inf.test(s) ? granted : rest).push_back(j);
    if (granted.empty()) return rec;
    granted.insert(granted.end(), rest.begin(), rest.end());
    return perms_.intern(std::move(granted));
  }

  unsigned color(std::size_t rec_before, State s) const override {
    const auto& perm = perms_.at(rec_before);
    unsigned k = static_cast<unsigned>(perm.size());
    unsigned q = 0, g = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (pairs_[perm[i]].fin.test(s)) q = static_cast<unsigned>(i + 1);
      if (pairs_[perm[i]].inf.test(s)) g = static_cast<unsigned>(i + 1);
    }
    unsigned cmax = q > g ? 2 * q - 1 : 2 * g;
    unsigned cmin = 2 * k - cmax;
    return cmin + (rabin_ ? 1 : 0);
  }

  std::size_t record_count() const override { return perms_.size(); }

private:
  std::vector<AccPair> pairs_;
  bool rabin_;
  PermTable perms_;
  std::size_t initial_;
};

class PlainAutomaton final : public RecordAutomaton {
public:
  explicit PlainAutomaton(std::vector<unsigned> colors)
      : colors_(std::move(colors)) {}

  std::size_t initial() const override { return 0; }
  std::size_t fold(std::size_t, State) const override { return 0; }
  unsigned color(std::size_t, State s) const override { return colors_[s]; }
  std::size_t record_count() const override { return 1; }

private:
  std::vector<unsigned> colors_;
};

} // namespace

std::unique_ptr<RecordAutomaton> lar_automaton(const GameArena& arena,
                                               const Formula& phi,
                                               std::size_t budget) {
  return std::make_unique<LarAutomaton>(arena, phi, budget);
}

std::unique_ptr<RecordAutomaton> iar_automaton(const GameArena& arena,
                                               const std::vector<AccPair>& pairs,
                                               bool rabin_side,
                                               std::size_t budget) {
  return std::make_unique<IarAutomaton>(arena, pairs, rabin_side, budget);
}

std::unique_ptr<RecordAutomaton> plain_automaton(std::vector<unsigned> colors) {
  return std::make_unique<PlainAutomaton>(std::move(colors));
}

std::uint32_t ProductGame::find_node(State s, std::size_t rec) const {
  for (std::uint32_t id = 0; id < node_state.size(); ++id)
    if (node_state[id] == s && node_rec[id] == rec) return id;
  return npos;
}

ProductGame build_product(const GameArena& arena, const StateSet& protagonist,
                          std::shared_ptr<const RecordAutomaton> records,
                          std::size_t budget) {
  ProductGame prod;
  prod.records = records;
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  auto key = [&](State s, std::size_t rec) {
    return static_cast<std::uint64_t>(rec) * arena.size() + s;
  };
  std::deque<std::uint32_t> work;
  auto node_of = [&](State s, std::size_t rec) {
    auto it = ids.find(key(s, rec));
    if (it != ids.end()) return it->second;
    if (prod.node_state.size() >= budget)
      fail(Errc::memory_budget_exceeded,
           "product game exceeds the configured budget");
    std::uint32_t id = prod.game.add_node(protagonist.test(s),
                                          records->color(rec, s));
    prod.node_state.push_back(s);
    prod.node_rec.push_back(rec);
    ids.emplace(key(s, rec), id);
    work.push_back(id);
    return id;
  };

  std::size_t r0 = records->initial();
  prod.entry.resize(arena.size());
  for (State s = 0; s < arena.size(); ++s) prod.entry[s] = node_of(s, r0);
  while (!work.empty()) {
    std::uint32_t id = work.front();
    work.pop_front();
    State s = prod.node_state[id];
    std::size_t after = records->fold(prod.node_rec[id], s);
    for (State t : arena.successors(s))
      prod.game.add_edge(id, node_of(t, after));
  }
  return prod;
}

} // namespace segame
