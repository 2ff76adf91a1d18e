#include <doctest.h>

#include <random>

#include "permlattice/kasteleyn.hpp"

using namespace permlattice;

namespace {

UndirectedGraph complete(int n) {
  UndirectedGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

UndirectedGraph triangulated_grid(int r, int c) {
  UndirectedGraph g = build_square_grid(r, c);
  for (int x = 0; x + 1 < r; ++x)
    for (int y = 0; y + 1 < c; ++y) g.add_edge(x * c + y, (x + 1) * c + y + 1);
  return g;
}

}  // namespace

TEST_SUITE("kasteleyn") {

TEST_CASE("embedding and faces") {
  auto c4 = PlanarMap::embed(build_cycle(4));
  REQUIRE(c4.has_value());
  CHECK(c4->faces().size() == 2);
  auto grid = PlanarMap::embed(build_square_grid(4, 4));
  REQUIRE(grid.has_value());
  CHECK(grid->faces().size() == 10);
  CHECK_FALSE(PlanarMap::embed(complete(5)).has_value());
  UndirectedGraph k33(6);
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) k33.add_edge(i, j);
  CHECK_FALSE(PlanarMap::embed(k33).has_value());
  CHECK(PlanarMap::embed(complete(4)).has_value());
}

TEST_CASE("orientations have odd faces") {
  for (auto g : {build_cycle(4), build_square_grid(4, 4), triangulated_grid(3, 5), complete(4)}) {
    auto map = PlanarMap::embed(g);
    REQUIRE(map.has_value());
    auto o = pfaffian_orientation(*map);
    CHECK(orientation_valid(*map, o));
  }
  SUBCASE("trees accept any orientation") {
    UndirectedGraph t(4);
    t.add_edge(0, 1);
    t.add_edge(1, 2);
    t.add_edge(1, 3);
    auto map = PlanarMap::embed(t);
    REQUIRE(map.has_value());
    CHECK(orientation_valid(*map, KasteleynOrientation{{1, 0, 1}}));
    CHECK(orientation_valid(*map, KasteleynOrientation{{0, 0, 0}}));
  }
  SUBCASE("an even face is caught") {
    for (auto g : {build_cycle(4), build_square_grid(3, 3)}) {
      auto map = PlanarMap::embed(g);
      auto o = pfaffian_orientation(*map);
      // Edge 0 lies on an inner face, whose parity flips.
      o.forward[0] ^= 1;
      CHECK_FALSE(orientation_valid(*map, o));
    }
  }
}

TEST_CASE("Pfaffian counts match enumeration") {
  CHECK(pfaffian_matchings(build_cycle(4)) == 2);
  CHECK(pfaffian_matchings(build_square_grid(4, 4)) == 36);
  CHECK(pfaffian_matchings(build_square_grid(8, 8)) == 12988816);
  CHECK(pfaffian_matchings(build_cycle(7)) == 0);
  for (auto g : {triangulated_grid(3, 4), triangulated_grid(4, 4), complete(4), build_square_grid(3, 6)})
    CHECK(pfaffian_matchings(g) == count_matchings(g));
}

TEST_CASE("weighted Pfaffian") {
  UndirectedGraph e(2);
  e.add_edge(0, 1);
  CHECK(pfaffian_count(e, {Rational(7, 3)}).value == Rational(7, 3));
  std::mt19937 rng(7);
  auto g = triangulated_grid(4, 4);
  std::vector<Rational> w;
  for (std::size_t i = 0; i < g.edge_count(); ++i) w.emplace_back(static_cast<long>(rng() % 9 + 1), static_cast<long>(rng() % 4 + 1));
  for (auto& x : w) x.canonicalize();
  CHECK(pfaffian_count(g, w).value == weighted_matching_sum(g, w));
}

TEST_CASE("parallel edges add their weights") {
  auto h = build_honeycomb_quotient(1);
  CHECK(pfaffian_matchings(h) == 3);
}

TEST_CASE("sparse determinant agrees with dense elimination") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 7;
    std::vector<std::vector<long long>> dense(n, std::vector<long long>(n, 0));
    std::vector<std::vector<std::pair<int, BigInt>>> rows(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rng() % 3) {
          long long v = static_cast<long long>(rng() % 11) - 5;
          dense[i][j] = v;
          if (v) rows[i].push_back({j, BigInt(static_cast<long>(v))});
        }
    CHECK(sparse_bareiss_det(n, rows) == integer_det(dense));
  }
}

TEST_CASE("gadget graphs") {
  for (int n = 1; n <= 4; ++n) {
    auto g = build_gadget_graph(n);
    CHECK(validate_gadget_graph(g).empty());
    CHECK(g.io_vertices().size() == static_cast<std::size_t>(2 * n * n));
    CHECK(g.graph.vertex_count() == 2 * n * n + 4 * (4 * n - 1));
  }
  CHECK(build_gadget_graph(4).graph.vertex_count() == 92);
  CHECK_THROWS(build_gadget_graph(0));
}

TEST_CASE("gadget covers are the A_L patterns") {
  for (int n = 1; n <= 2; ++n) {
    auto g = build_gadget_graph(n);
    auto covers = count_covers(g.graph, g.io_vertices());
    CHECK(covers == count_patterns_brute(preset_AL(), Region::box({n, n})).count);
  }
}

TEST_CASE("Pfaffian A_L pattern counts") {
  CHECK(count_patterns_AL(1) == 3);
  for (int n = 2; n <= 4; ++n) CHECK(count_patterns_AL(n) == count_patterns_brute(preset_AL(), Region::box({n, n})).count);
  PfaffianReport rep;
  BigInt big = count_patterns_AL(12, &rep);
  CHECK(big > 0);
  CHECK(rep.value.get_den() == 1);
}

TEST_CASE("planar cover counter") {
  auto map = PlanarMap::embed(build_cycle(4));
  CHECK(count_covers_planar(*map, {0, 1, 2, 3}).value == 2);
  auto g = build_square_grid(3, 3);
  auto m3 = PlanarMap::embed(g);
  std::vector<int> vp{0, 1, 3, 4};
  CHECK(count_covers_planar(*m3, vp).value == count_covers(g, vp));
}

}  // TEST_SUITE
