#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "permlattice/kasteleyn.hpp"

namespace permlattice {

PlanarMap::PlanarMap(UndirectedGraph g, std::vector<std::vector<int>> rotation) : g_(std::move(g)), rot_(std::move(rotation)) {
  const int nv = g_.vertex_count();
  if (static_cast<int>(rot_.size()) != nv) throw InvalidInput("rotation system needs one entry per vertex");
  pos_.assign(2 * g_.edge_count(), -1);
  for (int v = 0; v < nv; ++v) {
    if (rot_[v].size() != g_.incident(v).size()) throw InvalidInput("rotation at vertex " + std::to_string(v) + " misses edges");
    for (std::size_t i = 0; i < rot_[v].size(); ++i) {
      int e = rot_[v][i];
      if (e < 0 || e >= static_cast<int>(g_.edge_count())) throw InvalidInput("rotation names an unknown edge");
      const auto& [a, b] = g_.edge(e);
      int d = a == v ? 2 * e : (b == v ? 2 * e + 1 : -1);
      if (d < 0 || pos_[d] >= 0) throw InvalidInput("rotation at vertex " + std::to_string(v) + " is inconsistent");
      pos_[d] = static_cast<int>(i);
    }
  }
  trace();
  outer_.assign(ncomp_, -1);
  for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
    int c = comp_[dart_tail(g_, faces_[f][0])];
    if (outer_[c] < 0 || faces_[f].size() > faces_[outer_[c]].size()) outer_[c] = f;
  }
}

int PlanarMap::next_dart(int d) const {
  int v = dart_head(g_, d);
  int r = d ^ 1;
  const auto& rv = rot_[v];
  int e = rv[(pos_[r] + 1) % rv.size()];
  return g_.edge(e).first == v ? 2 * e : 2 * e + 1;
}

bool PlanarMap::is_outer(int f) const {
  int c = comp_[dart_tail(g_, faces_[f][0])];
  return outer_[c] == f;
}

void PlanarMap::trace() {
  const int nv = g_.vertex_count();
  comp_.assign(nv, -1);
  ncomp_ = 0;
  for (int s = 0; s < nv; ++s) {
    if (comp_[s] >= 0) continue;
    std::vector<int> stack{s};
    comp_[s] = ncomp_;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : g_.incident(v)) {
        int u = g_.other(e, v);
        if (comp_[u] < 0) {
          comp_[u] = ncomp_;
          stack.push_back(u);
        }
      }
    }
    ++ncomp_;
  }
  face_of_.assign(2 * g_.edge_count(), -1);
  faces_.clear();
  for (int d0 = 0; d0 < static_cast<int>(face_of_.size()); ++d0) {
    if (face_of_[d0] >= 0) continue;
    std::vector<int> walk;
    for (int d = d0; face_of_[d] < 0; d = next_dart(d)) {
      face_of_[d] = static_cast<int>(faces_.size());
      walk.push_back(d);
    }
    faces_.push_back(std::move(walk));
  }
  // Euler's formula V - E + F = 2 on every component with an edge.
  std::vector<long long> chi(ncomp_, 0);
  std::vector<char> has_edge(ncomp_, 0);
  for (int v = 0; v < nv; ++v) ++chi[comp_[v]];
  for (const auto& [a, b] : g_.edges()) {
    --chi[comp_[a]];
    has_edge[comp_[a]] = 1;
  }
  for (const auto& f : faces_) ++chi[comp_[dart_tail(g_, f[0])]];
  for (int c = 0; c < ncomp_; ++c)
    if (has_edge[c] && chi[c] != 2) throw InvalidInput("rotation system is not planar (Euler characteristic " + std::to_string(chi[c]) + ")");
}

void PlanarMap::set_outer_by_area(const std::vector<std::pair<double, double>>& xy) {
  std::vector<double> best(ncomp_, -1);
  for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
    double area = 0;
    for (int d : faces_[f]) {
      auto [x0, y0] = xy[dart_tail(g_, d)];
      auto [x1, y1] = xy[dart_head(g_, d)];
      area += x0 * y1 - x1 * y0;
    }
    int c = comp_[dart_tail(g_, faces_[f][0])];
    if (std::abs(area) > best[c]) {
      best[c] = std::abs(area);
      outer_[c] = f;
    }
  }
}

namespace {

using Pt = std::pair<double, double>;

double cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

bool on_segment(const Pt& p, const Pt& a, const Pt& b) {
  return std::min(a.first, b.first) <= p.first && p.first <= std::max(a.first, b.first) &&
         std::min(a.second, b.second) <= p.second && p.second <= std::max(a.second, b.second);
}

// Segments meet somewhere other than at a shared endpoint.
bool segments_clash(const Pt& a, const Pt& b, const Pt& c, const Pt& d, bool share) {
  double d1 = cross(c, d, a), d2 = cross(c, d, b), d3 = cross(a, b, c), d4 = cross(a, b, d);
  if (share) {
    // Only a collinear overlap counts.
    return d1 == 0 && d2 == 0 && (on_segment(c, a, b) + on_segment(d, a, b) + on_segment(a, c, d) + on_segment(b, c, d) > 2);
  }
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  return (d1 == 0 && on_segment(a, c, d)) || (d2 == 0 && on_segment(b, c, d)) || (d3 == 0 && on_segment(c, a, b)) ||
         (d4 == 0 && on_segment(d, a, b));
}

}  // namespace

PlanarMap PlanarMap::from_coordinates(UndirectedGraph g, const std::vector<std::pair<double, double>>& xy) {
  const int nv = g.vertex_count();
  if (static_cast<int>(xy.size()) != nv) throw InvalidInput("drawing needs one point per vertex");
  const auto& es = g.edges();
  // Sweep by x so that only overlapping x-ranges are compared.
  std::vector<int> order(es.size());
  std::iota(order.begin(), order.end(), 0);
  auto xlo = [&](int e) { return std::min(xy[es[e].first].first, xy[es[e].second].first); };
  auto xhi = [&](int e) { return std::max(xy[es[e].first].first, xy[es[e].second].first); };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return xlo(a) < xlo(b); });
  for (std::size_t i = 0; i < order.size(); ++i) {
    int e = order[i];
    for (std::size_t j = i + 1; j < order.size() && xlo(order[j]) <= xhi(e); ++j) {
      int f = order[j];
      auto [a, b] = es[e];
      auto [c, d] = es[f];
      bool share = a == c || a == d || b == c || b == d;
      if (segments_clash(xy[a], xy[b], xy[c], xy[d], share))
        throw InvalidInput("drawing has crossing edges " + std::to_string(e) + " and " + std::to_string(f));
    }
  }
  std::vector<std::vector<int>> rot(nv);
  for (int v = 0; v < nv; ++v) {
    std::vector<std::pair<double, int>> ang;
    for (int e : g.incident(v)) {
      int u = g.other(e, v);
      ang.emplace_back(std::atan2(xy[u].second - xy[v].second, xy[u].first - xy[v].first), e);
    }
    std::sort(ang.begin(), ang.end());
    for (auto& [t, e] : ang) rot[v].push_back(e);
  }
  PlanarMap m(std::move(g), std::move(rot));
  m.set_outer_by_area(xy);
  return m;
}

std::optional<PlanarMap> PlanarMap::embed(const UndirectedGraph& g) {
  using namespace boost;
  using BG = adjacency_list<vecS, vecS, undirectedS, property<vertex_index_t, int>, property<edge_index_t, int>>;
  BG bg(g.vertex_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) add_edge(g.edge(e).first, g.edge(e).second, static_cast<int>(e), bg);
  using ED = graph_traits<BG>::edge_descriptor;
  std::vector<std::vector<ED>> emb(num_vertices(bg));
  bool planar = boyer_myrvold_planarity_test(boyer_myrvold_params::graph = bg, boyer_myrvold_params::embedding = &emb[0]);
  if (!planar) return std::nullopt;
  auto eidx = get(edge_index, bg);
  std::vector<std::vector<int>> rot(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v)
    for (const auto& ed : emb[v]) rot[v].push_back(eidx[ed]);
  return PlanarMap(g, std::move(rot));
}

KasteleynOrientation pfaffian_orientation(const PlanarMap& map) {
  const UndirectedGraph& g = map.graph();
  const int ne = static_cast<int>(g.edge_count());
  KasteleynOrientation o;
  o.forward.assign(ne, 0);
  std::vector<char> assigned(ne, 0);
  // Spanning forest, tree edges oriented arbitrarily.
  std::vector<char> seen(g.vertex_count(), 0);
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::vector<int> queue{s};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int v = queue[q];
      for (int e : g.incident(v)) {
        int u = g.other(e, v);
        if (seen[u]) continue;
        seen[u] = 1;
        assigned[e] = 1;
        o.forward[e] = 1;
        queue.push_back(u);
      }
    }
  }
  const auto& faces = map.faces();
  std::vector<int> open(faces.size(), 0);
  for (int e = 0; e < ne; ++e)
    if (!assigned[e]) {
      ++open[map.face_of_dart(2 * e)];
      ++open[map.face_of_dart(2 * e + 1)];
    }
  std::vector<int> ready;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    if (!map.is_outer(f) && open[f] == 1) ready.push_back(f);
  while (!ready.empty()) {
    int f = ready.back();
    ready.pop_back();
    if (open[f] != 1) continue;
    int agree = 0, free_dart = -1;
    for (int d : faces[f]) {
      int e = d >> 1;
      if (!assigned[e]) {
        free_dart = d;
        continue;
      }
      agree += (o.forward[e] != 0) == ((d & 1) == 0);
    }
    int e = free_dart >> 1;
    // Choose the direction that makes the agreeing count odd.
    bool along = agree % 2 == 0;
    o.forward[e] = along == ((free_dart & 1) == 0);
    assigned[e] = 1;
    --open[f];
    int other = map.face_of_dart(free_dart ^ 1);
    if (--open[other] == 1 && !map.is_outer(other)) ready.push_back(other);
  }
  for (int e = 0; e < ne; ++e)
    if (!assigned[e]) throw InternalError("orientation left an edge unassigned; the face structure is inconsistent");
  return o;
}

bool orientation_valid(const PlanarMap& map, const KasteleynOrientation& o) {
  const auto& faces = map.faces();
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    if (map.is_outer(f)) continue;
    int agree = 0;
    for (int d : faces[f]) agree += (o.forward[d >> 1] != 0) == ((d & 1) == 0);
    if (agree % 2 == 0) return false;
  }
  return true;
}

}  // namespace permlattice
