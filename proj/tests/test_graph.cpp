#include <doctest.h>

#include <map>
#include <set>

#include "permlattice/graph.hpp"

using namespace permlattice;

TEST_SUITE("graph") {

TEST_CASE("perfect matchings of small graphs") {
  CHECK(enumerate_matchings(build_cycle(4)).size() == 2);
  CHECK(count_matchings(build_cycle(6)) == 2);
  CHECK(count_matchings(build_cycle(5)) == 0);
  CHECK(count_matchings(build_square_grid(2, 2)) == 2);
  CHECK(count_matchings(build_square_grid(4, 4)) == 36);
  CHECK(count_matchings(build_square_grid(3, 3)) == 0);
  UndirectedGraph empty(3);
  CHECK(enumerate_matchings(empty).empty());
  CHECK(count_matchings(UndirectedGraph(0)) == 1);
}

TEST_CASE("enumerated matchings are distinct perfect matchings") {
  auto g = build_square_grid(4, 4);
  auto all = enumerate_matchings(g);
  std::set<Matching> uniq(all.begin(), all.end());
  CHECK(uniq.size() == all.size());
  for (const auto& m : all) CHECK(is_perfect_matching(g, m));
}

TEST_CASE("builders") {
  auto h1 = build_honeycomb_quotient(1);
  CHECK(h1.vertex_count() == 2);
  CHECK(h1.edge_count() == 3);
  CHECK(enumerate_matchings(h1).size() == 3);
  CHECK(count_matchings(build_honeycomb_quotient(2)) == 9);
  CHECK(count_matchings(build_honeycomb_quotient(3)) == 42);
  auto g = build_square_grid(2, 2);
  CHECK(g.edge_count() == 4);
  for (int v = 0; v < 4; ++v) CHECK(g.incident(v).size() == 2);
  auto t = build_square_torus(2);
  CHECK(t.vertex_count() == 4);
  CHECK(t.edge_count() == 4);
  CHECK(build_square_torus_multigraph(2).edge_count() == 8);
  CHECK(build_square_torus(4).edge_count() == 32);
}

TEST_CASE("duplicated graphs") {
  SUBCASE("self-loop becomes one O-I edge") {
    DirectedGraph d(1);
    d.add_edge(0, 0);
    auto u = build_duplicated_graph(d);
    CHECK(u.vertex_count() == 2);
    REQUIRE(u.edge_count() == 1);
    CHECK(count_matchings(u) == 1);
  }
  SUBCASE("no edges, no matching") {
    auto u = build_duplicated_graph(DirectedGraph(3));
    CHECK(u.edge_count() == 0);
    CHECK(count_matchings(u) == 0);
  }
  SUBCASE("A_L on the 2x2 torus") {
    auto d = build_torus_digraph(preset_AL(), {2, 2});
    CHECK(d.vertex_count() == 4);
    CHECK(d.edge_count() == 12);
    auto u = build_duplicated_graph(d);
    CHECK(u.vertex_count() == 8);
    CHECK(u.edge_count() == 12);
  }
}

TEST_CASE("restricted bijections correspond to perfect matchings of the duplicated graph") {
  for (auto [a, n] : {std::pair{preset_AL(), Vec{1, 1}}, std::pair{preset_AL(), Vec{2, 2}},
                      std::pair{preset_Aplus(), Vec{2, 2}}, std::pair{preset_Aoplus(), Vec{2, 3}}}) {
    auto d = build_torus_digraph(a, n);
    auto u = build_duplicated_graph(d);
    CountOptions opt;
    opt.collect = true;
    auto perms = count_toral_brute(a, n, opt);
    auto pms = enumerate_matchings(u);
    CHECK(BigInt(static_cast<unsigned long>(pms.size())) == perms.count);
    std::set<Matching> images;
    for (const auto& pi : perms.listing) {
      Matching m = perm_to_matching(d, u, pi);
      CHECK(is_perfect_matching(u, m));
      CHECK(matching_to_perm(d, u, m) == pi);
      images.insert(m);
    }
    CHECK(images.size() == pms.size());
    for (const auto& m : pms) CHECK(perm_to_matching(d, u, matching_to_perm(d, u, m)) == m);
  }
}

TEST_CASE("identity on the 1x1 A_L torus") {
  auto d = build_torus_digraph(preset_AL(), {1, 1});
  auto u = build_duplicated_graph(d);
  EdgeChoice id{preset_AL().index_of({0, 0})};
  Matching m = perm_to_matching(d, u, id);
  REQUIRE(m.edges.size() == 1);
  auto [x, y] = u.edge(m.edges[0]);
  CHECK(std::minmax(x, y) == std::minmax(dup_out(0), dup_in(d, 0)));
}

TEST_CASE("bipartite maps give pairs of perfect matchings") {
  const auto a = preset_Aplus();
  auto d = build_torus_digraph(a, {2, 2});
  std::vector<int> side;
  for (int v = 0; v < d.vertex_count(); ++v) side.push_back((d.labels[v][0] + d.labels[v][1]) % 2);
  auto c = collapse(d, side);
  CHECK(c.vertex_count() == 4);
  CHECK(count_matchings(c) == 2);
  CountOptions opt;
  opt.collect = true;
  auto perms = count_toral_brute(a, {2, 2}, opt);
  std::set<std::vector<int>> targets;
  std::set<std::pair<Matching, Matching>> pairs;
  for (const auto& v : perms.listing) {
    std::vector<int> target;
    for (int i = 0; i < 4; ++i) target.push_back(d.out(i)[v[i]]);
    targets.insert(target);
    auto [m1, m2] = perm_to_matching_pair(d, c, side, target);
    CHECK(is_perfect_matching(c, m1));
    CHECK(is_perfect_matching(c, m2));
    CHECK(matching_pair_to_perm(c, side, m1, m2) == target);
    bool involution = true;
    for (int i = 0; i < 4; ++i) involution &= target[target[i]] == i;
    CHECK((m1 == m2) == involution);
    pairs.insert({m1, m2});
  }
  // Two matchings of C4 and two rotations.
  CHECK(targets.size() == 4);
  CHECK(pairs.size() == 4);
}

TEST_CASE("maps with longer orbits give two different matchings") {
  const auto a = preset_Aplus();
  auto d = build_torus_digraph(a, {4, 4});
  std::vector<int> side;
  for (int v = 0; v < d.vertex_count(); ++v) side.push_back((d.labels[v][0] + d.labels[v][1]) % 2);
  auto c = collapse(d, side);
  // Rows of length 4 rotate by +1 in the second coordinate on even rows and
  // by -1 on odd rows; orbits have length 4.
  std::vector<int> target(16);
  for (int v = 0; v < 16; ++v) {
    Vec m = d.labels[v];
    Vec t = mod(Vec{m[0], m[1] + (m[0] % 2 ? -1 : 1)}, {4, 4});
    target[v] = static_cast<int>(box_index(t, {4, 4}));
  }
  auto [m1, m2] = perm_to_matching_pair(d, c, side, target);
  CHECK(is_perfect_matching(c, m1));
  CHECK(is_perfect_matching(c, m2));
  CHECK_FALSE(m1 == m2);
  CHECK(matching_pair_to_perm(c, side, m1, m2) == target);
}

TEST_CASE("perfect covers") {
  SUBCASE("all vertices gives perfect matchings") {
    auto g = build_cycle(4);
    CHECK(enumerate_covers(g, {0, 1, 2, 3}).size() == 2);
    CHECK(count_covers(g, {0, 1, 2, 3}) == 2);
  }
  SUBCASE("a centre with two leaves") {
    UndirectedGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    auto covers = enumerate_covers(g, {0});
    CHECK(covers.size() == 2);
    for (const auto& m : covers) CHECK(is_perfect_cover(g, {0}, m));
  }
}

TEST_CASE("weighted matching sums") {
  auto g = build_cycle(4);
  std::vector<Rational> w{1, 2, 3, 4};
  CHECK(weighted_matching_sum(g, w) == 11);
}

TEST_CASE("dimer codes") {
  SUBCASE("round trip on open grids") {
    for (auto [r, c] : {std::pair{2, 2}, std::pair{4, 4}, std::pair{3, 4}}) {
      auto g = build_square_grid(r, c);
      for (const auto& m : enumerate_matchings(g)) {
        auto code = dimer_encode(g, {r, c}, false, m);
        CHECK(dimer_code_valid(code));
        CHECK(dimer_decode(g, code) == m);
      }
    }
  }
  SUBCASE("round trip on the 4x4 torus") {
    auto g = build_square_torus(4);
    auto all = enumerate_matchings(g);
    CHECK(all.size() == 272);
    for (const auto& m : all) {
      auto code = dimer_encode(g, {4, 4}, true, m);
      CHECK(dimer_code_valid(code));
      CHECK(dimer_decode(g, code) == m);
    }
  }
  SUBCASE("horizontal bricks on the 2x2 torus") {
    auto g = build_square_torus(2);
    Matching m;
    m.edges = {g.find_edge(0, 2), g.find_edge(1, 3)};
    std::sort(m.edges.begin(), m.edges.end());
    auto code = dimer_encode(g, {2, 2}, true, m);
    const auto a = preset_Aplus();
    CHECK(code.code == std::vector<int>{a.index_of({1, 0}), a.index_of({1, 0}), a.index_of({-1, 0}), a.index_of({-1, 0})});
  }
  SUBCASE("empty region") {
    auto code = dimer_encode(UndirectedGraph(0), {0, 0}, false, Matching{});
    CHECK(code.code.empty());
  }
  SUBCASE("disagreeing partners are rejected") {
    DimerCode c{{2, 2}, false, std::vector<int>(4, preset_Aplus().index_of({1, 0}))};
    CHECK_FALSE(dimer_code_valid(c));
    CHECK_THROWS_AS(dimer_decode(build_square_grid(2, 2), c), InvalidInput);
  }
}

}  // TEST_SUITE
