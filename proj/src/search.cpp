#include "search.hpp"

#include <atomic>
#include <thread>

namespace permlattice::detail {

namespace {

struct Walker {
  const InjectiveSearch& s;
  std::vector<char> used;
  std::vector<int> pick;
  std::vector<std::vector<int>>* listing = nullptr;
  std::uint64_t leaves = 0;
  std::uint64_t nodes = 0;
  std::uint64_t max_nodes = 0;
  bool stop_at_first = false;
  bool found = false;

  // Forward checking state: choices per slot, free choices per unassigned
  // cell, and unassigned hitters per slot.
  std::vector<std::vector<std::pair<int, int>>> hits;
  std::vector<char> required;
  std::vector<int> avail;
  std::vector<int> live;

  explicit Walker(const InjectiveSearch& search)
      : s(search), used(search.targets, 0), pick(search.cells(), -1), hits(search.targets),
        required(search.targets, 0), avail(search.cells(), 0), live(search.targets, 0) {
    for (int c = 0; c < s.cells(); ++c) {
      for (std::size_t k = 0; k < s.choice_target[c].size(); ++k) {
        int t = s.choice_target[c][k];
        if (t < 0) continue;
        hits[t].emplace_back(c, static_cast<int>(k));
        ++avail[c];
        ++live[t];
      }
      for (int t : s.deadline[c]) required[t] = 1;
    }
  }

  // Applies choice k at cell c; returns false (and leaves state unchanged) if
  // it collides, starves a later cell or leaves a required slot unreachable.
  bool place(int c, int k) {
    int t = s.choice_target[c][k];
    if (t < 0 || used[t]) return false;
    if (avail[c] == 0) return false;
    used[t] = 1;
    bool ok = true;
    for (const auto& [c2, k2] : hits[t])
      if (c2 != c && pick[c2] < 0 && --avail[c2] == 0) ok = false;
    const int choices = static_cast<int>(s.choice_target[c].size());
    for (int k2 = 0; k2 < choices; ++k2) {
      int t2 = s.choice_target[c][k2];
      if (k2 == k || t2 < 0 || used[t2]) continue;
      if (--live[t2] == 0 && required[t2]) ok = false;
    }
    pick[c] = k;
    if (!ok) unplace(c);
    return ok;
  }
  void unplace(int c) {
    const int k = pick[c];
    const int t = s.choice_target[c][k];
    const int choices = static_cast<int>(s.choice_target[c].size());
    for (int k2 = 0; k2 < choices; ++k2) {
      int t2 = s.choice_target[c][k2];
      if (k2 == k || t2 < 0 || used[t2]) continue;
      ++live[t2];
    }
    pick[c] = -1;
    for (const auto& [c2, k2] : hits[t])
      if (c2 != c && pick[c2] < 0) ++avail[c2];
    used[t] = 0;
  }

  // Places every single-choice cell up front so conflicts between fixed cells
  // surface before any branching. Returns false when they already conflict.
  bool place_forced() {
    for (int c = 0; c < s.cells(); ++c)
      if (s.choice_target[c].size() == 1 && !place(c, 0)) return false;
    return true;
  }

  void record() {
    ++leaves;
    if (listing) {
      std::vector<int> labels(s.cells());
      for (int c = 0; c < s.cells(); ++c) labels[c] = s.choice_label[c][pick[c]];
      listing->push_back(std::move(labels));
    }
  }

  void dfs(int c) {
    if (found) return;
    if (max_nodes && ++nodes > max_nodes) throw BudgetExceeded("window extension search exceeded node budget");
    if (c == s.cells()) {
      record();
      if (stop_at_first) found = true;
      return;
    }
    if (pick[c] >= 0) {
      dfs(c + 1);
      return;
    }
    const int choices = static_cast<int>(s.choice_target[c].size());
    for (int k = 0; k < choices; ++k) {
      if (!place(c, k)) continue;
      dfs(c + 1);
      if (found) return;
      unplace(c);
    }
  }
};

// Enumerates valid prefixes of the given depth in lexicographic order.
void prefixes(Walker& w, int c, int depth, std::vector<std::vector<int>>& out) {
  if (c == depth) {
    out.emplace_back(w.pick.begin(), w.pick.begin() + depth);
    return;
  }
  if (w.pick[c] >= 0) {
    prefixes(w, c + 1, depth, out);
    return;
  }
  const int choices = static_cast<int>(w.s.choice_target[c].size());
  for (int k = 0; k < choices; ++k) {
    if (!w.place(c, k)) continue;
    prefixes(w, c + 1, depth, out);
    w.unplace(c);
  }
}

}  // namespace

BigInt InjectiveSearch::count(unsigned threads, std::vector<std::vector<int>>* listing) const {
  if (impossible) return 0;
  if (threads <= 1 || cells() < 4) {
    Walker w(*this);
    w.listing = listing;
    if (w.place_forced()) w.dfs(0);
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(w.leaves), 0, 0, &w.leaves);
    return r;
  }
  // Split deep enough to give every worker several tasks.
  int depth = 1;
  std::size_t width = 1;
  while (depth < cells() - 1) {
    width *= std::max<std::size_t>(1, choice_target[depth - 1].size());
    if (width >= 8u * threads) break;
    ++depth;
  }
  std::vector<std::vector<int>> tasks;
  {
    Walker w(*this);
    if (!w.place_forced()) return 0;
    prefixes(w, 0, depth, tasks);
  }
  std::vector<std::uint64_t> counts(tasks.size(), 0);
  std::vector<std::vector<std::vector<int>>> lists(listing ? tasks.size() : 0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      Walker w(*this);
      w.place_forced();
      for (int c = 0; c < depth; ++c)
        if (w.pick[c] < 0) w.place(c, tasks[i][c]);
      if (listing) w.listing = &lists[i];
      w.dfs(depth);
      counts[i] = w.leaves;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  BigInt total = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    BigInt c;
    mpz_import(c.get_mpz_t(), 1, 1, sizeof(counts[i]), 0, 0, &counts[i]);
    total += c;
    if (listing)
      for (auto& l : lists[i]) listing->push_back(std::move(l));
  }
  return total;
}

namespace {

// Kuhn augmenting paths on cells x slots.
struct Bipartite {
  std::vector<std::vector<int>> adj;  // cell -> slots
  std::vector<int> slot_of, cell_of;
  std::vector<int> seen;
  int stamp = 0;

  bool augment(int c) {
    for (int t : adj[c]) {
      if (seen[t] == stamp) continue;
      seen[t] = stamp;
      if (cell_of[t] < 0 || augment(cell_of[t])) {
        cell_of[t] = c;
        slot_of[c] = t;
        return true;
      }
    }
    return false;
  }
};

}  // namespace

bool InjectiveSearch::feasible(const std::vector<int>& fixed) const {
  if (impossible) return false;
  const int n = cells();
  Bipartite b;
  b.adj.resize(n);
  std::vector<std::vector<int>> hitters(targets);
  for (int c = 0; c < n; ++c)
    for (std::size_t k = 0; k < choice_target[c].size(); ++k) {
      int t = choice_target[c][k];
      if (t < 0 || (fixed[c] >= 0 && fixed[c] != static_cast<int>(k))) continue;
      b.adj[c].push_back(t);
      hitters[t].push_back(c);
    }
  // Every cell gets its own slot.
  b.slot_of.assign(n, -1);
  b.cell_of.assign(targets, -1);
  b.seen.assign(targets, 0);
  for (int c = 0; c < n; ++c) {
    ++b.stamp;
    if (!b.augment(c)) return false;
  }
  // Every required slot gets its own cell. With both, a matching covering
  // all cells and all required slots exists (Mendelsohn-Dulmage).
  std::vector<char> required(targets, 0);
  for (const auto& d : deadline)
    for (int t : d) required[t] = 1;
  Bipartite r;
  r.adj.resize(targets);
  for (int t = 0; t < targets; ++t)
    if (required[t]) r.adj[t] = hitters[t];
  r.slot_of.assign(targets, -1);
  r.cell_of.assign(n, -1);
  r.seen.assign(n, 0);
  for (int t = 0; t < targets; ++t) {
    if (!required[t]) continue;
    ++r.stamp;
    if (!r.augment(t)) return false;
  }
  return true;
}

bool InjectiveSearch::first(std::vector<int>& labels, std::uint64_t max_nodes) const {
  if (impossible) return false;
  std::vector<int> fixed(cells(), -1);
  if (!feasible(fixed)) return false;
  try {
    Walker w(*this);
    w.stop_at_first = true;
    w.max_nodes = max_nodes;
    std::vector<std::vector<int>> one;
    w.listing = &one;
    if (w.place_forced()) w.dfs(0);
    if (w.found) {
      labels = one.front();
      return true;
    }
    throw InternalError("backtracking found no assignment although a matching exists");
  } catch (const BudgetExceeded&) {
  }
  // Lexicographically first choice per cell that keeps a solution reachable.
  labels.assign(cells(), -1);
  for (int c = 0; c < cells(); ++c) {
    const int choices = static_cast<int>(choice_target[c].size());
    for (int k = 0; k < choices && fixed[c] < 0; ++k) {
      fixed[c] = k;
      if (!feasible(fixed)) fixed[c] = -1;
    }
    if (fixed[c] < 0) throw InternalError("matching-guided placement lost feasibility");
    labels[c] = choice_label[c][fixed[c]];
  }
  return true;
}

}  // namespace permlattice::detail
