#include "permlattice/graph.hpp"

#include <algorithm>

namespace permlattice {

void DirectedGraph::add_edge(int v, int u) {
  if (v < 0 || u < 0 || v >= vertex_count() || u >= vertex_count()) throw InvalidInput("edge endpoint out of range");
  out_[v].push_back(u);
}

std::size_t DirectedGraph::edge_count() const {
  std::size_t e = 0;
  for (const auto& o : out_) e += o.size();
  return e;
}

DirectedGraph build_torus_digraph(const RestrictionSet& a, const Vec& n) {
  if (static_cast<int>(n.size()) != a.dim()) throw InvalidInput("torus dimension mismatch");
  Region box = Region::box(n);
  DirectedGraph g(static_cast<int>(box.size()));
  g.labels = box.cells();
  for (std::size_t v = 0; v < box.size(); ++v)
    for (const auto& e : a.elements()) g.add_edge(static_cast<int>(v), static_cast<int>(box_index(mod(add(box[v], e), n), n)));
  return g;
}

int UndirectedGraph::add_edge(int v, int u) {
  if (v < 0 || u < 0 || v >= vertex_count() || u >= vertex_count()) throw InvalidInput("edge endpoint out of range");
  if (v == u) throw InvalidInput("self-loops are not allowed in undirected graphs");
  if (!parallel_) {
    int e = find_edge(v, u);
    if (e >= 0) return e;
  }
  edges_.emplace_back(std::min(v, u), std::max(v, u));
  int e = static_cast<int>(edges_.size()) - 1;
  inc_[v].push_back(e);
  inc_[u].push_back(e);
  return e;
}

int UndirectedGraph::find_edge(int v, int u) const {
  for (int e : inc_[v])
    if (other(e, v) == u) return e;
  return -1;
}

bool is_matching(const UndirectedGraph& g, const Matching& m) {
  std::vector<char> used(g.vertex_count(), 0);
  for (int e : m.edges) {
    if (e < 0 || e >= static_cast<int>(g.edge_count())) return false;
    auto [a, b] = g.edge(e);
    if (used[a] || used[b]) return false;
    used[a] = used[b] = 1;
  }
  return true;
}

bool is_perfect_matching(const UndirectedGraph& g, const Matching& m) {
  return is_matching(g, m) && 2 * m.edges.size() == static_cast<std::size_t>(g.vertex_count());
}

bool is_perfect_cover(const UndirectedGraph& g, const std::vector<int>& vprime, const Matching& m) {
  if (!is_matching(g, m)) return false;
  std::vector<char> in(g.vertex_count(), 0), covered(g.vertex_count(), 0);
  for (int v : vprime) in[v] = 1;
  for (int e : m.edges) {
    auto [a, b] = g.edge(e);
    if (!in[a] && !in[b]) return false;
    covered[a] = covered[b] = 1;
  }
  for (int v : vprime)
    if (!covered[v]) return false;
  return true;
}

int dup_out(int v) { return v; }
int dup_in(const DirectedGraph& g, int v) { return g.vertex_count() + v; }

UndirectedGraph build_duplicated_graph(const DirectedGraph& g) {
  const int n = g.vertex_count();
  UndirectedGraph d(2 * n, true);
  d.side.assign(2 * n, 0);
  for (int v = 0; v < n; ++v) d.side[n + v] = 1;
  if (!g.labels.empty()) {
    d.labels = g.labels;
    d.labels.insert(d.labels.end(), g.labels.begin(), g.labels.end());
  }
  for (int v = 0; v < n; ++v)
    for (int u : g.out(v)) d.add_edge(dup_out(v), dup_in(g, u));
  return d;
}

// Edge index in the duplicated graph of out-edge k of v.
static int dup_edge_index(const DirectedGraph& g, int v, int k) {
  int e = 0;
  for (int w = 0; w < v; ++w) e += static_cast<int>(g.out(w).size());
  return e + k;
}

Matching perm_to_matching(const DirectedGraph& g, const UndirectedGraph& dup, const EdgeChoice& pi) {
  const int n = g.vertex_count();
  if (static_cast<int>(pi.size()) != n) throw PreconditionError("permutation needs one choice per vertex");
  std::vector<char> hit(n, 0);
  Matching m;
  for (int v = 0; v < n; ++v) {
    if (pi[v] < 0 || pi[v] >= static_cast<int>(g.out(v).size())) throw PreconditionError("permutation is not restricted by the graph");
    int u = g.out(v)[pi[v]];
    if (hit[u]) throw PreconditionError("map is not a bijection");
    hit[u] = 1;
    m.edges.push_back(dup_edge_index(g, v, pi[v]));
  }
  std::sort(m.edges.begin(), m.edges.end());
  if (!is_perfect_matching(dup, m)) throw InternalError("image of a bijection is not a perfect matching");
  return m;
}

EdgeChoice matching_to_perm(const DirectedGraph& g, const UndirectedGraph& dup, const Matching& m) {
  if (!is_perfect_matching(dup, m)) throw PreconditionError("matching is not perfect");
  const int n = g.vertex_count();
  EdgeChoice pi(n, -1);
  for (int e : m.edges) {
    int v = 0, base = 0;
    while (base + static_cast<int>(g.out(v).size()) <= e) base += static_cast<int>(g.out(v++).size());
    pi[v] = e - base;
  }
  return pi;
}

UndirectedGraph collapse(const DirectedGraph& g, const std::vector<int>& side) {
  const int n = g.vertex_count();
  if (static_cast<int>(side.size()) != n) throw PreconditionError("bipartition must cover every vertex");
  UndirectedGraph u(n, false);
  u.side = side;
  u.labels = g.labels;
  for (int v = 0; v < n; ++v)
    for (int w : g.out(v)) {
      if (side[v] == side[w]) throw PreconditionError("graph is not bipartite under the given classes");
      u.add_edge(v, w);
    }
  return u;
}

std::pair<Matching, Matching> perm_to_matching_pair(const DirectedGraph& g, const UndirectedGraph& collapsed,
                                                    const std::vector<int>& side, const std::vector<int>& target) {
  const int n = g.vertex_count();
  if (static_cast<int>(target.size()) != n) throw PreconditionError("permutation needs one target per vertex");
  Matching m1, m2;
  std::vector<char> hit(n, 0);
  for (int v = 0; v < n; ++v) {
    int u = target[v];
    const auto& o = g.out(v);
    if (u < 0 || u >= n || std::find(o.begin(), o.end(), u) == o.end()) throw PreconditionError("permutation is not restricted by the graph");
    if (side[v] == side[u]) throw PreconditionError("graph is not bipartite under the given classes");
    if (hit[u]) throw PreconditionError("map is not a bijection");
    hit[u] = 1;
    int e = collapsed.find_edge(v, u);
    (side[v] == 0 ? m1 : m2).edges.push_back(e);
  }
  std::sort(m1.edges.begin(), m1.edges.end());
  std::sort(m2.edges.begin(), m2.edges.end());
  return {m1, m2};
}

std::vector<int> matching_pair_to_perm(const UndirectedGraph& collapsed, const std::vector<int>& side,
                                       const Matching& m1, const Matching& m2) {
  if (!is_perfect_matching(collapsed, m1) || !is_perfect_matching(collapsed, m2))
    throw PreconditionError("both matchings must be perfect");
  const int n = collapsed.vertex_count();
  std::vector<int> pi(n, -1);
  for (int e : m1.edges) {
    auto [a, b] = collapsed.edge(e);
    int v = side[a] == 0 ? a : b;
    pi[v] = collapsed.other(e, v);
  }
  for (int e : m2.edges) {
    auto [a, b] = collapsed.edge(e);
    int u = side[a] == 1 ? a : b;
    pi[u] = collapsed.other(e, u);
  }
  return pi;
}

namespace {

// Branch on the lowest uncovered vertex of the required set.
struct CoverWalk {
  const UndirectedGraph& g;
  std::vector<char> required, used;
  std::vector<int> order;  // required vertices ascending
  std::vector<int> chosen;
  std::vector<Matching>* out = nullptr;
  const std::vector<Rational>* weight = nullptr;
  Rational wsum = 0;
  std::uint64_t count = 0;
  std::uint64_t cap = 0;

  CoverWalk(const UndirectedGraph& graph, const std::vector<int>& vprime) : g(graph), required(graph.vertex_count(), 0), used(graph.vertex_count(), 0) {
    for (int v : vprime) required[v] = 1;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (required[v]) order.push_back(v);
  }

  void leaf(const Rational& w) {
    ++count;
    if (cap && count > cap) throw BudgetExceeded("matching enumeration exceeded its result budget");
    if (out) {
      Matching m{chosen};
      std::sort(m.edges.begin(), m.edges.end());
      out->push_back(std::move(m));
    }
    if (weight) wsum += w;
  }

  void dfs(std::size_t pos, const Rational& w) {
    while (pos < order.size() && used[order[pos]]) ++pos;
    if (pos == order.size()) {
      leaf(w);
      return;
    }
    int v = order[pos];
    used[v] = 1;
    for (int e : g.incident(v)) {
      int u = g.other(e, v);
      if (used[u]) continue;
      used[u] = 1;
      chosen.push_back(e);
      if (weight)
        dfs(pos + 1, w * (*weight)[e]);
      else
        dfs(pos + 1, w);
      chosen.pop_back();
      used[u] = 0;
    }
    used[v] = 0;
  }
};

std::vector<int> all_vertices(const UndirectedGraph& g) {
  std::vector<int> v(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) v[i] = i;
  return v;
}

BigInt to_big(std::uint64_t x) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
  return r;
}

}  // namespace

std::vector<Matching> enumerate_covers(const UndirectedGraph& g, const std::vector<int>& vprime, const EnumOptions& opt) {
  for (int v : vprime)
    if (v < 0 || v >= g.vertex_count()) throw InvalidInput("cover vertex out of range");
  CoverWalk w(g, vprime);
  std::vector<Matching> out;
  w.out = &out;
  w.cap = opt.max_results;
  w.dfs(0, 1);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Matching> enumerate_matchings(const UndirectedGraph& g, const EnumOptions& opt) {
  if (g.vertex_count() % 2) return {};
  return enumerate_covers(g, all_vertices(g), opt);
}

BigInt count_covers(const UndirectedGraph& g, const std::vector<int>& vprime) {
  CoverWalk w(g, vprime);
  w.dfs(0, 1);
  return to_big(w.count);
}

BigInt count_matchings(const UndirectedGraph& g) {
  if (g.vertex_count() % 2) return 0;
  return count_covers(g, all_vertices(g));
}

Rational weighted_matching_sum(const UndirectedGraph& g, const std::vector<Rational>& w) {
  if (w.size() != g.edge_count()) throw InvalidInput("one weight per edge required");
  if (g.vertex_count() % 2) return 0;
  CoverWalk walk(g, all_vertices(g));
  walk.weight = &w;
  walk.dfs(0, 1);
  return walk.wsum;
}

// ---------------------------------------------------------------- dimers

namespace {

const RestrictionSet& aplus() {
  static const RestrictionSet s = preset_Aplus();
  return s;
}

Vec cell_of(int idx, const Vec& size) { return {idx / size[1], idx % size[1]}; }

bool step_to(const Vec& from, const Vec& d, const Vec& size, bool torus, Vec& to) {
  to = add(from, d);
  if (torus) {
    to = mod(to, size);
    return true;
  }
  return to[0] >= 0 && to[0] < size[0] && to[1] >= 0 && to[1] < size[1];
}

}  // namespace

DimerCode dimer_encode(const UndirectedGraph& g, const Vec& size, bool torus, const Matching& m) {
  const int cells = size.empty() ? 0 : size[0] * size[1];
  if (g.vertex_count() != cells) throw PreconditionError("host is not a square-lattice build of this size");
  if (!is_perfect_matching(g, m)) throw PreconditionError("dimer code needs a perfect matching");
  DimerCode c{size, torus, std::vector<int>(cells, -1)};
  for (int e : m.edges) {
    auto [a, b] = g.edge(e);
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      Vec from = cell_of(x, size), to = cell_of(y, size);
      Vec raw = sub(to, from);
      int k = aplus().index_of(raw);
      if (k < 0 && torus)
        for (std::size_t j = 0; j < aplus().size() && k < 0; ++j)
          if (mod(add(from, aplus()[j]), size) == to) k = static_cast<int>(j);
      if (k < 0) throw PreconditionError("matched edge is not a lattice step");
      c.code[x] = k;
    }
  }
  return c;
}

Matching dimer_decode(const UndirectedGraph& g, const DimerCode& c) {
  const int cells = c.size.empty() ? 0 : c.size[0] * c.size[1];
  if (static_cast<int>(c.code.size()) != cells || g.vertex_count() != cells) throw InvalidInput("malformed dimer code: size mismatch");
  Matching m;
  for (int x = 0; x < cells; ++x) {
    if (c.code[x] < 0 || c.code[x] >= static_cast<int>(aplus().size())) throw InvalidInput("malformed dimer code: value out of range");
    Vec to;
    if (!step_to(cell_of(x, c.size), aplus()[c.code[x]], c.size, c.torus, to)) throw InvalidInput("malformed dimer code: partner outside window");
    int y = to[0] * c.size[1] + to[1];
    Vec back;
    step_to(to, aplus()[c.code[y]], c.size, c.torus, back);
    if (back != cell_of(x, c.size)) throw InvalidInput("malformed dimer code: partners disagree");
    if (x < y) {
      int e = g.find_edge(x, y);
      if (e < 0) throw InvalidInput("malformed dimer code: no such edge");
      m.edges.push_back(e);
    }
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

bool dimer_code_valid(const DimerCode& c) {
  const Vec& s = c.size;
  if (s.empty() || static_cast<int>(c.code.size()) != s[0] * s[1]) return false;
  const int bx = c.torus ? s[0] : s[0] - 1, by = c.torus ? s[1] : s[1] - 1;
  for (int x0 = 0; x0 < bx; ++x0)
    for (int y0 = 0; y0 < by; ++y0) {
      // Cells of the 2x2 block anchored at (x0,y0).
      std::vector<Vec> block;
      for (int dx = 0; dx < 2; ++dx)
        for (int dy = 0; dy < 2; ++dy) block.push_back(mod(Vec{x0 + dx, y0 + dy}, s));
      for (const auto& n : block) {
        const Vec& w = aplus()[c.code[n[0] * s[1] + n[1]]];
        Vec m;
        if (!step_to(n, w, s, c.torus, m)) continue;
        if (std::find(block.begin(), block.end(), m) == block.end()) continue;
        if (aplus()[c.code[m[0] * s[1] + m[1]]] != neg(w)) return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------- builders

UndirectedGraph build_honeycomb_quotient(int n) {
  if (n < 1) throw InvalidInput("honeycomb quotient needs n >= 1");
  const int c = n * n;
  UndirectedGraph g(2 * c, true);
  g.side.assign(2 * c, 0);
  for (int v = 0; v < c; ++v) g.side[c + v] = 1;
  Vec size{n, n};
  for (int v = 0; v < c; ++v) g.labels.push_back(cell_of(v, size));
  for (int v = 0; v < c; ++v) g.labels.push_back(cell_of(v, size));
  for (int v = 0; v < c; ++v) {
    Vec m = cell_of(v, size);
    for (const Vec& d : {Vec{0, 0}, Vec{1, 0}, Vec{0, 1}}) {
      Vec t = mod(add(m, d), size);
      g.add_edge(v, c + t[0] * n + t[1]);
    }
  }
  return g;
}

UndirectedGraph build_square_grid(int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw InvalidInput("grid sides must be positive");
  UndirectedGraph g(n1 * n2);
  for (int x = 0; x < n1; ++x)
    for (int y = 0; y < n2; ++y) {
      g.labels.push_back({x, y});
      g.side.push_back((x + y) % 2);
    }
  for (int x = 0; x < n1; ++x)
    for (int y = 0; y < n2; ++y) {
      int v = x * n2 + y;
      if (x + 1 < n1) g.add_edge(v, v + n2);
      if (y + 1 < n2) g.add_edge(v, v + 1);
    }
  return g;
}

static UndirectedGraph square_torus(int n, bool multi) {
  if (n < 2) throw InvalidInput("square torus needs n >= 2");
  UndirectedGraph g(n * n, multi);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      g.labels.push_back({x, y});
      if (n % 2 == 0) g.side.push_back((x + y) % 2);
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int v = x * n + y;
      g.add_edge(v, ((x + 1) % n) * n + y);
      g.add_edge(v, x * n + (y + 1) % n);
    }
  return g;
}

UndirectedGraph build_square_torus(int n) { return square_torus(n, false); }
UndirectedGraph build_square_torus_multigraph(int n) { return square_torus(n, true); }

UndirectedGraph build_cycle(int n) {
  if (n < 3) throw InvalidInput("cycle needs n >= 3");
  UndirectedGraph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

}  // namespace permlattice
