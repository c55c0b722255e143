#pragma once

// Folded subgroup graphs. A finite list of words spans a subgroup; folding
// the wedge of loops at a base vertex yields a labeled graph whose reduced
// loops at the base are exactly the subgroup elements. Used to certify that
// candidate bases really generate the whole group and for membership tests.

#include <map>
#include <utility>
#include <vector>

#include "sepcay/word.hpp"

namespace sepcay {

class SubgroupGraph {
 public:
  SubgroupGraph(int rank, const std::vector<Word>& generators) : rank_(rank) {
    check_rank(rank);
    parent_.push_back(0);  // base vertex
    for (const Word& g : generators) {
      check_letters(rank, g.letters);
      int at = 0;
      for (int i = 0; i < g.size(); ++i) {
        const Letter l = g.letters[i];
        int next = (i + 1 == g.size()) ? 0 : new_vertex();
        arcs_.push_back({at, order_key(l), next});
        arcs_.push_back({next, order_key(-l), at});
        at = next;
      }
    }
    fold();
    trim();
  }

  // True iff the subgroup is the whole free group of this rank. The folded
  // graph covers the rose; it is the rose itself exactly when the base is
  // the only vertex left and carries every one of the 2n arc labels.
  bool generates_whole() const {
    if (transitions_.size() != 1) return false;
    auto it = transitions_.find(find(0));
    return it != transitions_.end() &&
           static_cast<int>(it->second.size()) == 2 * rank_;
  }

  // Membership of a reduced word in the subgroup.
  bool contains(const Word& w) const {
    check_letters(rank_, w.letters);
    int at = find(0);
    for (Letter l : w.letters) {
      auto row = transitions_.find(at);
      if (row == transitions_.end()) return false;
      auto it = row->second.find(order_key(l));
      if (it == row->second.end()) return false;
      at = it->second;
    }
    return at == find(0);
  }

 private:
  struct Arc {
    int from, key, to;
  };

  int rank_;
  std::vector<int> parent_;
  std::vector<Arc> arcs_;
  std::map<int, std::map<int, int>> transitions_;

  int new_vertex() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }

  int find(int v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }

  // Roots are minima, so the base vertex 0 is always its own root.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  // Merge targets until no vertex has two same-labeled outgoing arcs.
  void fold() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<std::pair<int, int>, int> seen;  // (vertex, key) -> target
      for (const Arc& a : arcs_) {
        const int from = find(a.from), to = find(a.to);
        auto [it, inserted] = seen.try_emplace({from, a.key}, to);
        if (!inserted && it->second != to) {
          unite(it->second, to);
          changed = true;
          break;
        }
      }
    }
    for (const Arc& a : arcs_)
      transitions_[find(a.from)][a.key] = find(a.to);
  }

  // Remove hanging trees: a reduced word never enters a degree-one vertex
  // and comes back, so membership is unaffected. The base stays. Arcs come
  // in inverse pairs, so erasing the partner arc leaves no dangling target.
  void trim() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = transitions_.begin(); it != transitions_.end(); ++it) {
        if (it->first == find(0) || it->second.size() != 1) continue;
        const auto [key, to] = *it->second.begin();
        transitions_[to].erase(order_key(-letter_from_key(key)));
        transitions_.erase(it);
        changed = true;
        break;
      }
    }
  }
};

// A list of words is a basis iff it has full size and generates everything
// (free groups are Hopfian, so n generators of F_n are a basis).
inline bool is_basis(int rank, const std::vector<Word>& words) {
  if (static_cast<int>(words.size()) != rank) return false;
  return SubgroupGraph(rank, words).generates_whole();
}

}  // namespace sepcay
