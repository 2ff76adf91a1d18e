#pragma once

// Backtracking engine shared by the brute-force counters and the window
// extension search. Cells are assigned in order; each choice hits one target
// slot; a slot may be hit at most once. Some slots must be hit, and that is
// checked as soon as every cell that could hit them has been assigned.

#include <cstdint>
#include <functional>
#include <vector>

#include "permlattice/common.hpp"

namespace permlattice::detail {

struct InjectiveSearch {
  int targets = 0;
  // choice_target[c][k]: slot hit by choice k at cell c.
  std::vector<std::vector<int>> choice_target;
  // choice_label[c][k]: value recorded for choice k (index into A).
  std::vector<std::vector<int>> choice_label;
  // deadline[c]: slots that must be hit once cells 0..c are assigned.
  std::vector<std::vector<int>> deadline;

  void resize(int cells) {
    choice_target.assign(cells, {});
    choice_label.assign(cells, {});
    deadline.assign(cells, {});
  }
  int cells() const { return static_cast<int>(choice_target.size()); }

  // Adds slot t as required, given the set of cells able to hit it.
  void require(int t, const std::vector<int>& hitters) {
    int last = -1;
    for (int c : hitters) last = std::max(last, c);
    if (last < 0) {
      impossible = true;
      return;
    }
    deadline[last].push_back(t);
  }
  bool impossible = false;

  // Counts all complete assignments, splitting the top of the tree across
  // workers. Listing is optional and keeps lexicographic order.
  BigInt count(unsigned threads, std::vector<std::vector<int>>* listing) const;

  // First complete assignment in lexicographic order. Existence is decided by
  // bipartite matching; backtracking gets max_nodes nodes, then placement
  // continues cell by cell with a matching test per choice.
  bool first(std::vector<int>& labels, std::uint64_t max_nodes) const;

  // Whether a complete assignment exists with cell c restricted to choice
  // fixed[c] when fixed[c] >= 0.
  bool feasible(const std::vector<int>& fixed) const;
};

}  // namespace permlattice::detail
