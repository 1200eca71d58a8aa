#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace assumekit {

using StateIndex = std::uint32_t;

/// Dense subset of the states {0, ..., n-1} of one graph.
/// Iteration (members()) is in ascending index order, which is the
/// lexicographic id order of the owning GameGraph.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe) : bits_(universe, false) {}
  StateSet(std::size_t universe, std::initializer_list<StateIndex> members)
      : bits_(universe, false) {
    for (auto s : members) insert(s);
  }

  static StateSet full(std::size_t universe) {
    StateSet s;
    s.bits_.assign(universe, true);
    s.count_ = universe;
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t count() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(StateIndex s) const { return s < bits_.size() && bits_[s]; }

  void insert(StateIndex s) {
    if (!bits_[s]) {
      bits_[s] = true;
      ++count_;
    }
  }

  void erase(StateIndex s) {
    if (bits_[s]) {
      bits_[s] = false;
      --count_;
    }
  }

  std::vector<StateIndex> members() const {
    std::vector<StateIndex> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(static_cast<StateIndex>(i));
    return out;
  }

  StateSet complement() const {
    StateSet out(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (!bits_[i]) out.insert(static_cast<StateIndex>(i));
    return out;
  }

  StateSet& operator|=(const StateSet& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (o.bits_[i]) insert(static_cast<StateIndex>(i));
    return *this;
  }

  StateSet& operator&=(const StateSet& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (!o.bits_[i]) erase(static_cast<StateIndex>(i));
    return *this;
  }

  StateSet& operator-=(const StateSet& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (o.bits_[i]) erase(static_cast<StateIndex>(i));
    return *this;
  }

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  bool subset_of(const StateSet& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !o.bits_[i]) return false;
    return true;
  }

  bool operator==(const StateSet& o) const { return bits_ == o.bits_; }

 private:
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

}  // namespace assumekit
