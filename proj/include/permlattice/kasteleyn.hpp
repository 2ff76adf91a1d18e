#pragma once

#include <optional>
#include <string>

#include "permlattice/graph.hpp"

namespace permlattice {

// Darts: 2e is edge e from first to second endpoint, 2e+1 the reverse.
inline int dart_tail(const UndirectedGraph& g, int d) { return d & 1 ? g.edge(d >> 1).second : g.edge(d >> 1).first; }
inline int dart_head(const UndirectedGraph& g, int d) { return d & 1 ? g.edge(d >> 1).first : g.edge(d >> 1).second; }

class PlanarMap {
 public:
  // rotation[v]: incident edge indices of v in counter-clockwise order.
  PlanarMap(UndirectedGraph g, std::vector<std::vector<int>> rotation);
  // Straight-line drawing; rejects drawings with crossing edges.
  static PlanarMap from_coordinates(UndirectedGraph g, const std::vector<std::pair<double, double>>& xy);
  // Combinatorial embedding from a planarity test; nullopt when not planar.
  static std::optional<PlanarMap> embed(const UndirectedGraph& g);

  const UndirectedGraph& graph() const { return g_; }
  const std::vector<std::vector<int>>& rotation() const { return rot_; }
  // Each face is its boundary walk as a dart sequence.
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  int face_of_dart(int d) const { return face_of_[d]; }
  int component_of(int v) const { return comp_[v]; }
  int component_count() const { return ncomp_; }
  // One designated outer face per component with edges (-1 otherwise).
  int outer_face(int component) const { return outer_[component]; }
  bool is_outer(int f) const;
  // Dart following d along its face.
  int next_dart(int d) const;

 private:
  void trace();
  void set_outer_by_area(const std::vector<std::pair<double, double>>& xy);

  UndirectedGraph g_;
  std::vector<std::vector<int>> rot_;
  std::vector<int> pos_;  // position of dart's edge in its tail's rotation
  std::vector<std::vector<int>> faces_;
  std::vector<int> face_of_;
  std::vector<int> comp_;
  std::vector<int> outer_;
  int ncomp_ = 0;
};

// forward[e] = 1 orients edge e from its first to its second endpoint.
struct KasteleynOrientation {
  std::vector<char> forward;
};

KasteleynOrientation pfaffian_orientation(const PlanarMap& map);
// Every non-outer face walk has an odd number of darts agreeing with the
// orientation.
bool orientation_valid(const PlanarMap& map, const KasteleynOrientation& o);

struct PfaffianReport {
  Rational value;
  BigInt scale;         // common denominator of the weights
  std::size_t det_bits = 0;
  int bandwidth = 0;    // after reordering
};

// |Pf| of the oriented, weighted skew matrix, that is the weighted matching
// sum when the orientation is Pfaffian.
PfaffianReport pfaffian_count(const PlanarMap& map, const std::vector<Rational>& w, const KasteleynOrientation& o);
// Merges parallel edges (summing weights), embeds, orients and evaluates.
PfaffianReport pfaffian_count(const UndirectedGraph& g, const std::vector<Rational>& w);
BigInt pfaffian_matchings(const UndirectedGraph& g);

// Exact determinant of a sparse integer matrix by fraction-free elimination
// on rows in the given order, exploiting the band. Rows are (column, value).
BigInt sparse_bareiss_det(int n, const std::vector<std::vector<std::pair<int, BigInt>>>& rows);

// G_n: n^2 IO gadgets on a square, wrapped by a path of 4n-1 K4 gadgets.
struct GadgetGraph {
  int n = 0;
  UndirectedGraph graph;
  std::vector<std::pair<double, double>> xy;
  std::vector<Rational> weight;
  // Vertex ids.
  int io_in(int k) const { return 2 * (k - 1); }       // I_k, k = 1..n^2
  int io_out(int k) const { return 2 * (k - 1) + 1; }  // O_k
  int t(int k, int i) const { return 2 * n * n + 4 * (k - 1) + (i - 1); }  // T_{k,i}
  std::vector<int> io_vertices() const;
};

GadgetGraph build_gadget_graph(int n);
// Structural checks: counts, edge classes, corner rules. Returns an empty
// string when everything holds, else the first failure.
std::string validate_gadget_graph(const GadgetGraph& g);

BigInt count_patterns_AL(int n, PfaffianReport* report = nullptr);

struct CoverCount {
  BigInt value;
  std::string warning;
};
CoverCount count_covers_planar(const PlanarMap& map, const std::vector<int>& vprime);

}  // namespace permlattice
