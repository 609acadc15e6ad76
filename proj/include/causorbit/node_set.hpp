#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace causorbit {

/// Subset of a fixed universe {0, ..., universe()-1}, stored as a bitset.
/// Iteration and `members()` are in ascending index order.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64) {}
  NodeSet(std::size_t universe, std::initializer_list<std::size_t> members) : NodeSet(universe) {
    for (auto m : members) insert(m);
  }
  static NodeSet full(std::size_t universe) {
    NodeSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }
  template <typename Range>
  static NodeSet of(std::size_t universe, const Range& members) {
    NodeSet s(universe);
    for (auto m : members) s.insert(static_cast<std::size_t>(m));
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(std::size_t i) const {
    return i < universe_ && (words_[i / 64] >> (i % 64) & 1u) != 0;
  }
  void insert(std::size_t i) { words_.at(i / 64) |= std::uint64_t{1} << (i % 64); }
  void erase(std::size_t i) { words_.at(i / 64) &= ~(std::uint64_t{1} << (i % 64)); }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      for (auto w = words_[k]; w != 0; w &= w - 1) {
        out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      }
    }
    return out;
  }
  /// Smallest member, or universe() when empty.
  std::size_t front() const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    }
    return universe_;
  }

  NodeSet& operator|=(const NodeSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  NodeSet& operator&=(const NodeSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  /// Set difference.
  NodeSet& operator-=(const NodeSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

  bool is_subset_of(const NodeSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if ((words_[k] & ~o.words_[k]) != 0) return false;
    }
    return true;
  }
  bool intersects(const NodeSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if ((words_[k] & o.words_[k]) != 0) return true;
    }
    return false;
  }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace causorbit
