#pragma once

#include <optional>
#include <utility>

#include "permlattice/lattice.hpp"

namespace permlattice {

class DirectedGraph {
 public:
  explicit DirectedGraph(int n = 0) : out_(n) {}
  int vertex_count() const { return static_cast<int>(out_.size()); }
  void add_edge(int v, int u);
  // Out-neighbours in insertion order; repeats and self-loops are allowed.
  const std::vector<int>& out(int v) const { return out_[v]; }
  std::size_t edge_count() const;

  std::vector<Vec> labels;

 private:
  std::vector<std::vector<int>> out_;
};

// G_A on the torus [n]: vertex m has one out-edge per displacement of A, in
// canonical order, to (m + a) mod n. Labels are the cells.
DirectedGraph build_torus_digraph(const RestrictionSet& a, const Vec& n);

class UndirectedGraph {
 public:
  using Edge = std::pair<int, int>;

  explicit UndirectedGraph(int n = 0, bool allow_parallel = false) : inc_(n), parallel_(allow_parallel) {}
  int vertex_count() const { return static_cast<int>(inc_.size()); }
  std::size_t edge_count() const { return edges_.size(); }
  // Returns the edge index. Without allow_parallel a repeated pair is merged
  // and the existing index returned. Self-loops are rejected.
  int add_edge(int v, int u);
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& incident(int v) const { return inc_[v]; }
  int other(int e, int v) const { return edges_[e].first == v ? edges_[e].second : edges_[e].first; }
  int find_edge(int v, int u) const;
  bool allows_parallel() const { return parallel_; }

  std::vector<Vec> labels;
  // 0/1 class per vertex when the graph is built bipartite.
  std::vector<int> side;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> inc_;
  bool parallel_;
};

// A set of edge indices of a host graph, kept sorted.
struct Matching {
  std::vector<int> edges;
  bool operator==(const Matching&) const = default;
  auto operator<=>(const Matching&) const = default;
};

bool is_matching(const UndirectedGraph& g, const Matching& m);
bool is_perfect_matching(const UndirectedGraph& g, const Matching& m);
// Perfect cover of V': every V' vertex covered once, no shared vertex, every
// edge meets V'.
bool is_perfect_cover(const UndirectedGraph& g, const std::vector<int>& vprime, const Matching& m);

// Vertices (O,v) = v and (I,v) = |V| + v; edge {(O,v),(I,u)} for every edge
// (v,u), parallel edges kept so that edge index = position in the out-lists.
UndirectedGraph build_duplicated_graph(const DirectedGraph& g);
int dup_out(int v);
int dup_in(const DirectedGraph& g, int v);

// A restricted bijection given by one out-edge choice per vertex.
using EdgeChoice = std::vector<int>;

Matching perm_to_matching(const DirectedGraph& g, const UndirectedGraph& dup, const EdgeChoice& pi);
EdgeChoice matching_to_perm(const DirectedGraph& g, const UndirectedGraph& dup, const Matching& m);

// Undirected collapse of a bipartite directed graph, edges deduplicated.
UndirectedGraph collapse(const DirectedGraph& g, const std::vector<int>& side);
std::pair<Matching, Matching> perm_to_matching_pair(const DirectedGraph& g, const UndirectedGraph& collapsed,
                                                    const std::vector<int>& side, const std::vector<int>& target);
// Returns pi as a target vector.
std::vector<int> matching_pair_to_perm(const UndirectedGraph& collapsed, const std::vector<int>& side,
                                       const Matching& m1, const Matching& m2);

struct EnumOptions {
  std::uint64_t max_results = 50'000'000;
};

std::vector<Matching> enumerate_matchings(const UndirectedGraph& g, const EnumOptions& opt = {});
std::vector<Matching> enumerate_covers(const UndirectedGraph& g, const std::vector<int>& vprime,
                                       const EnumOptions& opt = {});
BigInt count_matchings(const UndirectedGraph& g);
BigInt count_covers(const UndirectedGraph& g, const std::vector<int>& vprime);

// Weighted sum over perfect matchings of products of edge weights.
Rational weighted_matching_sum(const UndirectedGraph& g, const std::vector<Rational>& w);

// Square-lattice dimer code: one A_plus displacement index per cell.
struct DimerCode {
  Vec size;
  bool torus = false;
  std::vector<int> code;
};

DimerCode dimer_encode(const UndirectedGraph& g, const Vec& size, bool torus, const Matching& m);
Matching dimer_decode(const UndirectedGraph& g, const DimerCode& c);
// Scan for the forbidden configuration w(n) != -w(n + w(n)) on every 2x2 block.
bool dimer_code_valid(const DimerCode& c);

// Honeycomb quotient by nZ^2: black (O) vertex v and white (I) vertex
// n^2 + v per cell; black cell m joins white m, m+(1,0), m+(0,1) mod n.
// Parallel edges appear for n = 1.
UndirectedGraph build_honeycomb_quotient(int n);
UndirectedGraph build_square_grid(int n1, int n2);
// Edges between cells at mod-(n,n) l1 distance 1, as a set.
UndirectedGraph build_square_torus(int n);
// Same torus taken as the quotient multigraph (one edge per lattice edge).
UndirectedGraph build_square_torus_multigraph(int n);
UndirectedGraph build_cycle(int n);

}  // namespace permlattice
