#include <algorithm>
#include <map>
#include <set>

#include "permlattice/kasteleyn.hpp"

namespace permlattice {

std::vector<int> GadgetGraph::io_vertices() const {
  std::vector<int> v(2 * n * n);
  for (int i = 0; i < 2 * n * n; ++i) v[i] = i;
  return v;
}

GadgetGraph build_gadget_graph(int n) {
  if (n < 1) throw InvalidInput("gadget graph needs n >= 1");
  GadgetGraph gg;
  gg.n = n;
  const int nt = 4 * n - 1;
  const int nv = 2 * n * n + 4 * nt;
  UndirectedGraph g(nv);
  gg.xy.assign(nv, {0, 0});
  g.labels.assign(nv, {});
  std::vector<Rational> w;
  auto edge = [&](int a, int b, Rational x) {
    int e = g.add_edge(a, b);
    if (e == static_cast<int>(w.size())) w.push_back(x);
  };

  // IO gadget k sits at column c, row r (row 0 on top); I below-left of O.
  for (int k = 1; k <= n * n; ++k) {
    int r = (k - 1) / n, c = (k - 1) % n;
    gg.xy[gg.io_in(k)] = {4.0 * c - 1, -4.0 * r - 1};
    gg.xy[gg.io_out(k)] = {4.0 * c + 1, -4.0 * r + 1};
    g.labels[gg.io_in(k)] = {0, k};
    g.labels[gg.io_out(k)] = {1, k};
    edge(gg.io_in(k), gg.io_out(k), 1);
  }
  for (int k = 1; k <= n * n; ++k) {
    int r = (k - 1) / n, c = (k - 1) % n;
    if (c + 1 < n) edge(gg.io_out(k), gg.io_in(k + 1), 1);
    if (r > 0) edge(gg.io_out(k), gg.io_in(k - n), 1);
  }

  // T gadgets: centre, chain direction t and inward normal u by side.
  auto place = [&](int k, double cx, double cy, double tx, double ty, double ux, double uy) {
    gg.xy[gg.t(k, 1)] = {cx + 1.5 * ux, cy + 1.5 * uy};
    gg.xy[gg.t(k, 2)] = {cx - 1.5 * tx - 0.5 * ux, cy - 1.5 * ty - 0.5 * uy};
    gg.xy[gg.t(k, 3)] = {cx + 1.5 * tx - 0.5 * ux, cy + 1.5 * ty - 0.5 * uy};
    gg.xy[gg.t(k, 4)] = {cx + 0.15 * ux, cy + 0.15 * uy};
    for (int i = 1; i <= 4; ++i) g.labels[gg.t(k, i)] = {2, k, i};
  };
  for (int k = 1; k <= n; ++k) place(k, 4.0 * (k - 1) + 1, 5, 1, 0, 0, -1);
  for (int j = 1; j <= n; ++j) place(n + j, 4.0 * n + 1, -4.0 * (j - 1) + 1, 0, -1, -1, 0);
  for (int k = 1; k <= n; ++k) place(2 * n + k, 4.0 * (n - k) - 1, -4.0 * (n - 1) - 5, -1, 0, 0, 1);
  for (int k = 1; k <= n - 1; ++k) place(3 * n + k, -5, -4.0 * (n - k - 1) - 1, 0, 1, 1, 0);

  const Rational third(1, 3);
  for (int k = 1; k <= nt; ++k) {
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 3; ++j) edge(gg.t(k, i), gg.t(k, j), third);
    for (int i = 1; i <= 3; ++i) edge(gg.t(k, i), gg.t(k, 4), 1);
  }
  for (int k = 1; k < nt; ++k) edge(gg.t(k, 3), gg.t(k + 1, 2), 1);
  for (int k = 1; k <= n; ++k) edge(gg.io_out(k), gg.t(k, 1), 1);
  for (int k = 1; k <= n; ++k) edge(gg.io_out(k * n), gg.t(n + k, 1), 1);
  for (int k = 1; k <= n; ++k) edge(gg.io_in(n * n + 1 - k), gg.t(2 * n + k, 1), 1);
  for (int k = 1; k <= n - 1; ++k) edge(gg.io_in((n - k - 1) * n + 1), gg.t(3 * n + k, 1), 1);

  gg.graph = std::move(g);
  gg.weight = std::move(w);
  return gg;
}

std::string validate_gadget_graph(const GadgetGraph& gg) {
  const int n = gg.n;
  const int nt = 4 * n - 1;
  const UndirectedGraph& g = gg.graph;
  if (g.vertex_count() != 2 * n * n + 4 * nt) return "vertex count";
  const std::size_t want_edges = static_cast<std::size_t>(n * n + 2 * n * (n - 1)) + 6 * nt + (nt - 1) + nt;
  if (g.edge_count() != want_edges) return "edge count " + std::to_string(g.edge_count()) + " != " + std::to_string(want_edges);
  if (gg.weight.size() != g.edge_count()) return "weight count";
  auto is_t = [&](int v) { return v >= 2 * n * n; };
  auto t_index = [&](int v) { return (v - 2 * n * n) / 4 + 1; };
  auto t_slot = [&](int v) { return (v - 2 * n * n) % 4 + 1; };
  // Weight classes.
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge(e);
    bool inner = is_t(a) && is_t(b) && t_index(a) == t_index(b) && t_slot(a) <= 3 && t_slot(b) <= 3;
    if (gg.weight[e] != (inner ? Rational(1, 3) : Rational(1))) return "weight on edge " + std::to_string(e);
  }
  // Every T gadget meets the square exactly once through T_{k,1}.
  std::vector<int> contact(nt + 1, 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge(e);
    if (is_t(a) == is_t(b)) continue;
    int t = is_t(a) ? a : b;
    if (t_slot(t) != 1) return "square edge at a non-facing T vertex";
    ++contact[t_index(t)];
  }
  for (int k = 1; k <= nt; ++k)
    if (contact[k] != 1) return "T gadget " + std::to_string(k) + " has " + std::to_string(contact[k]) + " square edges";
  // Corners.
  auto linked = [&](int v, int k) { return g.find_edge(v, gg.t(k, 1)) >= 0; };
  if (!linked(gg.io_out(1), 1) || !linked(gg.io_in(1), nt)) return "top-left corner";
  if (!linked(gg.io_out(n), n) || !linked(gg.io_out(n), n + 1)) return "top-right corner";
  if (!linked(gg.io_out(n * n), 2 * n) || !linked(gg.io_in(n * n), 2 * n + 1)) return "bottom-right corner";
  if (!linked(gg.io_in(n * n - n + 1), 3 * n)) return "bottom-left corner";
  return "";
}

BigInt count_patterns_AL(int n, PfaffianReport* report) {
  GadgetGraph gg = build_gadget_graph(n);
  std::string bad = validate_gadget_graph(gg);
  if (!bad.empty()) throw InternalError("gadget graph failed validation: " + bad);
  PlanarMap map = PlanarMap::from_coordinates(gg.graph, gg.xy);
  KasteleynOrientation o = pfaffian_orientation(map);
  if (!orientation_valid(map, o)) throw InternalError("orientation of the gadget graph is not Pfaffian");
  PfaffianReport rep = pfaffian_count(map, gg.weight, o);
  if (rep.value.get_den() != 1) throw InternalError("weighted matching sum of the gadget graph is not an integer");
  if (report) *report = rep;
  return rep.value.get_num();
}

CoverCount count_covers_planar(const PlanarMap& map, const std::vector<int>& vprime) {
  const UndirectedGraph& g = map.graph();
  CoverCount out;
  std::set<int> in(vprime.begin(), vprime.end());
  if (in.size() != vprime.size()) throw InvalidInput("V' has repeated vertices");
  for (int v : in)
    if (v < 0 || v >= g.vertex_count()) throw InvalidInput("V' vertex out of range");
  if (in.size() % 2 == 1) {
    out.value = 0;
    out.warning = "|V'| is odd: the T-gadget construction only counts covers with an even number of boundary edges, so 0 is reported";
    return out;
  }
  if (in.empty()) {
    out.value = 1;
    return out;
  }
  // G[V'] must be connected.
  {
    std::set<int> seen{*in.begin()};
    std::vector<int> stack{*in.begin()};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : g.incident(v)) {
        int u = g.other(e, v);
        if (in.count(u) && seen.insert(u).second) stack.push_back(u);
      }
    }
    if (seen.size() != in.size()) throw Unsupported("unsupported embedding: G[V'] is not connected");
  }
  // Local map: V' vertices, then one leaf per edge leaving V'.
  std::map<int, int> local;
  for (int v : in) local.emplace(v, static_cast<int>(local.size()));
  const int nin = static_cast<int>(local.size());
  int stubs = 0;
  for (int v : in)
    for (int e : g.incident(v)) stubs += !in.count(g.other(e, v));
  UndirectedGraph h(nin + stubs, true);
  std::vector<int> stub_owner;  // leaf nin + i stands for outside vertex stub_owner[i]
  std::vector<std::vector<int>> rot(nin + stubs);
  std::map<int, int> edge_to_h;
  for (int v : in)
    for (int e : map.rotation()[v]) {
      int u = g.other(e, v);
      if (in.count(u)) {
        auto it = edge_to_h.find(e);
        if (it == edge_to_h.end()) it = edge_to_h.emplace(e, h.add_edge(local[v], local[u])).first;
        rot[local[v]].push_back(it->second);
      } else {
        int leaf = nin + static_cast<int>(stub_owner.size());
        int he = h.add_edge(local[v], leaf);
        rot[local[v]].push_back(he);
        rot[leaf].push_back(he);
        stub_owner.push_back(u);
      }
    }
  std::vector<int> outside;  // S in cyclic order
  if (!stub_owner.empty()) {
    PlanarMap hm(h, rot);
    int face = -1;
    for (int leaf = nin; leaf < h.vertex_count(); ++leaf) {
      int f = hm.face_of_dart(2 * h.incident(leaf)[0]);
      if (face < 0) face = f;
      if (f != face) throw Unsupported("unsupported embedding: the neighbours of V' do not lie on one face");
    }
    std::vector<int> seq;
    for (int d : hm.faces()[face]) {
      int head = dart_head(h, d);
      if (head >= nin) seq.push_back(stub_owner[head - nin]);
    }
    // Rotate so the sequence starts at a change of owner, then require blocks.
    std::size_t start = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (seq[i] != seq[(i + seq.size() - 1) % seq.size()]) {
        start = i;
        break;
      }
    std::rotate(seq.begin(), seq.begin() + start, seq.end());
    std::set<int> done;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i > 0 && seq[i] == seq[i - 1]) continue;
      if (!done.insert(seq[i]).second)
        throw Unsupported("unsupported embedding: V' cannot be separated by a simply connected domain");
      outside.push_back(seq[i]);
    }
  }
  // Replace each outside vertex by a T gadget chained along the boundary.
  const int ns = static_cast<int>(outside.size());
  UndirectedGraph gh(nin + 4 * ns);
  std::vector<Rational> w;
  auto edge = [&](int a, int b, Rational x) {
    int e = gh.add_edge(a, b);
    if (e == static_cast<int>(w.size())) w.push_back(x);
  };
  auto tv = [&](int i, int j) { return nin + 4 * i + (j - 1); };
  for (const auto& [a, b] : g.edges())
    if (in.count(a) && in.count(b)) edge(local[a], local[b], 1);
  for (int i = 0; i < ns; ++i) {
    for (int a = 1; a <= 3; ++a)
      for (int b = a + 1; b <= 3; ++b) edge(tv(i, a), tv(i, b), Rational(1, 3));
    for (int a = 1; a <= 3; ++a) edge(tv(i, a), tv(i, 4), 1);
    if (i + 1 < ns) edge(tv(i, 3), tv(i + 1, 2), 1);
    for (int e : g.incident(outside[i])) {
      int u = g.other(e, outside[i]);
      if (in.count(u)) edge(tv(i, 1), local[u], 1);
    }
  }
  Rational v = pfaffian_count(gh, w).value;
  if (v.get_den() != 1) throw InternalError("perfect cover count is not an integer");
  out.value = v.get_num();
  return out;
}

}  // namespace permlattice
