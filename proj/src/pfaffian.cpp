#include <algorithm>
#include <map>
#include <numeric>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/cuthill_mckee_ordering.hpp>

#include "permlattice/kasteleyn.hpp"

namespace permlattice {

namespace {

struct Row {
  int off = 0;
  std::vector<mpz_class> v;
  int level = 0;
  int id = 0;
  int end() const { return off + static_cast<int>(v.size()); }
  const mpz_class* at(int j) const { return j >= off && j < end() ? &v[j - off] : nullptr; }
};

}  // namespace

BigInt sparse_bareiss_det(int n, const std::vector<std::vector<std::pair<int, BigInt>>>& rows) {
  if (static_cast<int>(rows.size()) != n) throw InvalidInput("determinant needs n rows");
  if (n == 0) return 1;
  std::vector<Row> store(n);
  std::vector<std::vector<int>> bucket(n);
  for (int i = 0; i < n; ++i) {
    int lo = n, hi = -1;
    for (const auto& [c, x] : rows[i]) {
      if (c < 0 || c >= n) throw InvalidInput("determinant column out of range");
      if (x == 0) continue;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    if (hi < 0) return 0;
    Row& r = store[i];
    r.off = lo;
    r.id = i;
    r.v.assign(hi - lo + 1, 0);
    for (const auto& [c, x] : rows[i]) r.v[c - lo] += x;
    bucket[lo].push_back(i);
  }
  // p[k] is the pivot used before step k, p[0] = 1.
  std::vector<mpz_class> p(n + 1);
  p[0] = 1;
  std::vector<int> active;
  std::vector<int> pivot_row(n);
  auto raise = [&](Row& r, int k) {
    if (r.level == k) return;
    for (auto& x : r.v) {
      if (x == 0) continue;
      x *= p[k];
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p[r.level].get_mpz_t());
    }
    r.level = k;
  };
  for (int k = 0; k < n; ++k) {
    for (int i : bucket[k]) active.push_back(i);
    int piv = -1;
    for (int i : active) {
      const mpz_class* x = store[i].at(k);
      if (!x || *x == 0) continue;
      if (piv < 0 || store[i].end() < store[piv].end() || (store[i].end() == store[piv].end() && i < piv)) piv = i;
    }
    if (piv < 0) return 0;
    pivot_row[k] = piv;
    Row& pr = store[piv];
    raise(pr, k);
    const mpz_class pk = *pr.at(k);
    p[k + 1] = pk;
    std::vector<int> keep;
    for (int i : active) {
      if (i == piv) continue;
      Row& r = store[i];
      const mpz_class* x = r.at(k);
      if (!x || *x == 0) {
        keep.push_back(i);
        continue;
      }
      raise(r, k);
      const mpz_class rk = *r.at(k);
      const int e = std::max(r.end(), pr.end());
      std::vector<mpz_class> nv(e - (k + 1));
      for (int j = k + 1; j < e; ++j) {
        const mpz_class* a = r.at(j);
        const mpz_class* b = pr.at(j);
        mpz_class& out = nv[j - k - 1];
        if (a) out = pk * *a;
        if (b) mpz_submul(out.get_mpz_t(), rk.get_mpz_t(), b->get_mpz_t());
        if (p[k] != 1 && out != 0) mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), p[k].get_mpz_t());
      }
      // Trim leading zeros so that the row's first column stays meaningful.
      std::size_t lead = 0;
      while (lead < nv.size() && nv[lead] == 0) ++lead;
      if (lead == nv.size()) return 0;
      r.v.assign(std::make_move_iterator(nv.begin() + lead), std::make_move_iterator(nv.end()));
      r.off = k + 1 + static_cast<int>(lead);
      r.level = k + 1;
      keep.push_back(i);
    }
    pr.v.clear();
    pr.v.shrink_to_fit();
    active.swap(keep);
  }
  // Eliminating in pivot order computes the determinant of the rows taken
  // in that order.
  bool odd = false;
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = pivot_row[j]) {
      seen[j] = 1;
      ++len;
    }
    odd ^= len % 2 == 0;
  }
  return odd ? mpz_class(-p[n]) : p[n];
}

namespace {

std::vector<int> rcm_order(const UndirectedGraph& g, const std::vector<int>& verts) {
  using namespace boost;
  using BG = adjacency_list<vecS, vecS, undirectedS, property<vertex_color_t, default_color_type, property<vertex_degree_t, int>>>;
  std::map<int, int> local;
  for (int v : verts) local.emplace(v, static_cast<int>(local.size()));
  BG bg(verts.size());
  for (const auto& [a, b] : g.edges())
    if (local.count(a)) add_edge(local[a], local[b], bg);
  std::vector<graph_traits<BG>::vertex_descriptor> inv(verts.size());
  cuthill_mckee_ordering(bg, inv.rbegin(), get(vertex_color, bg), make_degree_map(bg));
  std::vector<int> order;
  for (auto x : inv) order.push_back(verts[x]);
  return order;
}

// Sum over rows of the span from the diagonal to the farthest neighbour.
long long profile(const UndirectedGraph& g, const std::vector<int>& order, int* bandwidth) {
  std::map<int, int> at;
  for (std::size_t i = 0; i < order.size(); ++i) at[order[i]] = static_cast<int>(i);
  long long total = 0;
  int bw = 0;
  for (int v : order) {
    int lo = at[v], hi = at[v];
    for (int e : g.incident(v)) {
      lo = std::min(lo, at[g.other(e, v)]);
      hi = std::max(hi, at[g.other(e, v)]);
    }
    total += hi - lo;
    bw = std::max(bw, std::max(hi - at[v], at[v] - lo));
  }
  *bandwidth = bw;
  return total;
}

}  // namespace

PfaffianReport pfaffian_count(const PlanarMap& map, const std::vector<Rational>& w, const KasteleynOrientation& o) {
  const UndirectedGraph& g = map.graph();
  if (w.size() != g.edge_count()) throw InvalidInput("need one weight per edge");
  if (o.forward.size() != g.edge_count()) throw InvalidInput("orientation does not match the graph");
  PfaffianReport rep;
  BigInt scale = 1;
  for (const auto& x : w) {
    BigInt den = x.get_den();
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
  }
  rep.scale = scale;
  rep.value = 1;
  std::vector<std::vector<int>> comps(map.component_count());
  for (int v = 0; v < g.vertex_count(); ++v) comps[map.component_of(v)].push_back(v);
  for (const auto& verts : comps) {
    const int n = static_cast<int>(verts.size());
    if (n % 2 == 1) {
      rep.value = 0;
      return rep;
    }
    std::vector<int> order = verts;
    int bw_id = 0, bw_rcm = 0;
    long long prof_id = profile(g, order, &bw_id);
    std::vector<int> rcm = rcm_order(g, verts);
    if (profile(g, rcm, &bw_rcm) < prof_id) {
      order = rcm;
      bw_id = bw_rcm;
    }
    rep.bandwidth = std::max(rep.bandwidth, bw_id);
    std::map<int, int> at;
    for (int i = 0; i < n; ++i) at[order[i]] = i;
    std::vector<std::vector<std::pair<int, BigInt>>> rows(n);
    for (int v : verts)
      for (int e : g.incident(v)) {
        Rational s = w[e] * scale;
        if (s == 0) continue;
        BigInt x = s.get_num();
        const auto& [a, b] = g.edge(e);
        bool from_v = (o.forward[e] != 0) == (a == v);
        rows[at[v]].emplace_back(at[g.other(e, v)], from_v ? x : BigInt(-x));
      }
    BigInt det = sparse_bareiss_det(n, rows);
    rep.det_bits += mpz_sizeinbase(det.get_mpz_t(), 2);
    BigInt root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), det.get_mpz_t());
    if (rem != 0) throw InternalError("determinant of the skew matrix is not a perfect square");
    BigInt den;
    mpz_pow_ui(den.get_mpz_t(), scale.get_mpz_t(), n / 2);
    Rational part(root, den);
    part.canonicalize();
    rep.value *= part;
  }
  return rep;
}

PfaffianReport pfaffian_count(const UndirectedGraph& g, const std::vector<Rational>& w) {
  if (w.size() != g.edge_count()) throw InvalidInput("need one weight per edge");
  UndirectedGraph simple(g.vertex_count());
  std::vector<Rational> sw;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    int s = simple.add_edge(g.edge(e).first, g.edge(e).second);
    if (s == static_cast<int>(sw.size())) sw.push_back(w[e]);
    else sw[s] += w[e];
  }
  auto map = PlanarMap::embed(simple);
  if (!map) throw Unsupported("graph is not planar; no Pfaffian orientation is constructed");
  return pfaffian_count(*map, sw, pfaffian_orientation(*map));
}

BigInt pfaffian_matchings(const UndirectedGraph& g) {
  Rational v = pfaffian_count(g, std::vector<Rational>(g.edge_count(), Rational(1))).value;
  if (v.get_den() != 1) throw InternalError("unit-weight matching count is not an integer");
  return v.get_num();
}

}  // namespace permlattice
