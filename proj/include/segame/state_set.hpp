#pragma once

#include <cstdint>
#include <vector>

namespace segame {

// Dense bitset over state indices [0, n). Cheap to copy for the sizes this
// library deals with; all region arithmetic goes through it.
class StateSet {
public:
  StateSet() = default;
  explicit StateSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t universe() const { return n_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
  }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  StateSet& operator|=(const StateSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  StateSet& operator&=(const StateSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  StateSet& operator-=(const StateSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  StateSet complement() const {
    StateSet r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.trim();
    return r;
  }

  bool operator==(const StateSet& o) const {
    return n_ == o.n_ && words_ == o.words_;
  }
  bool operator!=(const StateSet& o) const { return !(*this == o); }

  bool intersects(const StateSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool subset_of(const StateSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  // Members in increasing index order.
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  static StateSet of(std::size_t n, std::initializer_list<std::size_t> xs) {
    StateSet s(n);
    for (auto x : xs) s.set(x);
    return s;
  }

private:
  void trim() {
    if (n_ & 63) words_.back() &= (std::uint64_t(1) << (n_ & 63)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace segame
