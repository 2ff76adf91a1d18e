#include <doctest.h>

#include <algorithm>
#include <set>

#include "permlattice/lattice.hpp"

using namespace permlattice;

namespace {

// Every assignment of [n] checked for a bijection of Z/n, no pruning.
long toral_oracle(const RestrictionSet& a, const Vec& n) {
  const std::size_t cells = box_volume(n);
  std::vector<int> v(cells, 0);
  long count = 0;
  for (;;) {
    std::vector<char> hit(cells, 0);
    bool ok = true;
    for (std::size_t i = 0; i < cells && ok; ++i) {
      Vec m(n.size());
      std::size_t r = i;
      for (int j = static_cast<int>(n.size()) - 1; j >= 0; --j) {
        m[j] = static_cast<int>(r % n[j]);
        r /= n[j];
      }
      std::size_t t = box_index(mod(add(m, a[v[i]]), n), n);
      if (hit[t]) ok = false;
      hit[t] = 1;
    }
    count += ok;
    std::size_t i = 0;
    while (i < cells && ++v[i] == static_cast<int>(a.size())) v[i++] = 0;
    if (i == cells) return count;
  }
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("presets are stored in lexicographic order") {
  const auto al = preset_AL();
  CHECK(al.size() == 3);
  CHECK(al.elements() == std::vector<Vec>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(preset_Aplus().size() == 4);
  CHECK(preset_Aoplus().size() == 5);
  CHECK(preset_Aoplus().contains({0, 0}));
  CHECK_FALSE(preset_Aplus().contains({0, 0}));
  CHECK(preset_interval(2).elements() == std::vector<Vec>{{-2}, {-1}, {0}, {1}, {2}});
  CHECK(preset_by_name("interval:3") == preset_interval(3));
  CHECK(preset_by_name("AL") == al);
  CHECK_THROWS_AS(preset_by_name("nope"), InvalidInput);
  CHECK(preset_Aoplus().max_norm() == 1);
}

TEST_CASE("restriction sets reject mixed dimensions") {
  CHECK_THROWS(RestrictionSet(2, {{0, 0}, {1}}));
}

TEST_CASE("boundary and interior of a 3x3 box over A_L") {
  const Region u = Region::box({3, 3});
  const Region in = interior(u, preset_AL());
  CHECK(in.cells() == std::vector<Vec>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  const Region bd = boundary(u, preset_AL());
  CHECK(bd.size() == 5);
  for (const auto& c : bd.cells()) CHECK_FALSE(in.contains(c));
}

TEST_CASE("empty region has empty boundary") {
  CHECK(boundary(Region(2), preset_AL()).empty());
}

TEST_CASE("A_plus interior of the punctured 3x5 box is empty") {
  const Region u = Region::box({3, 5}).without({1, 2});
  CHECK(u.size() == 14);
  CHECK(interior(u, preset_Aplus()).empty());
}

TEST_CASE("pattern counts on small boxes") {
  CHECK(count_patterns_brute(preset_AL(), Region::box({1, 1})).count == 3);
  CHECK(count_patterns_brute(preset_AL(), Region::box({2, 2})).count == 28);
  CHECK(count_patterns_brute(preset_AL(), Region::box({3, 3})).count == 459);
  RestrictionSet id(2, {{0, 0}});
  CHECK(count_patterns_brute(id, Region::box({3, 2})).count == 1);
}

TEST_CASE("pattern listing matches the count") {
  CountOptions opt;
  opt.collect = true;
  auto r = count_patterns_brute(preset_AL(), Region::box({2, 2}), opt);
  CHECK(r.listing.size() == 28);
  std::set<std::vector<int>> uniq(r.listing.begin(), r.listing.end());
  CHECK(uniq.size() == 28);
}

TEST_CASE("toral counts agree with unpruned enumeration") {
  CHECK(count_toral_brute(preset_AL(), {1, 1}).count == 3);
  CHECK(count_toral_brute(preset_Aplus(), {2, 2}).count == toral_oracle(preset_Aplus(), {2, 2}));
  CHECK(count_toral_brute(preset_Aplus(), {2, 2}).count == 64);
  CHECK(count_toral_brute(preset_AL(), {2, 2}).count == toral_oracle(preset_AL(), {2, 2}));
  CHECK(count_toral_brute(preset_Aoplus(), {2, 3}).count == toral_oracle(preset_Aoplus(), {2, 3}));
  CHECK(count_toral_brute(preset_interval(1), {5}).count == toral_oracle(preset_interval(1), {5}));
  CHECK(count_toral_brute(RestrictionSet(2, {{0, 0}}), {3, 3}).count == 1);
}

TEST_CASE("distinct toral maps collapse parallel displacements") {
  // On the 2x2 torus +1 and -1 steps coincide, leaving the 4 matchings pairs.
  CHECK(count_toral_maps(preset_Aplus(), {2, 2}) == 4);
}

TEST_CASE("closed counts follow Fibonacci numbers") {
  const auto a = preset_interval(1);
  long f0 = 1, f1 = 1;
  for (int n = 1; n <= 12; ++n) {
    CHECK(count_closed_brute(a, {n}).count == f1);
    long t = f0 + f1;
    f0 = f1;
    f1 = t;
  }
  CHECK(count_closed_brute(preset_interval(1), {3}).count == 3);
  CHECK(count_closed_brute(preset_interval(1), {4}).count == 5);
}

TEST_CASE("closed counts are not shift invariant") {
  // A permutation of a finite box has displacements summing to zero, so a
  // set with every displacement positive has no closed bijection.
  const auto a = preset_interval(1);
  CHECK(count_closed_brute(shift_set(a, {2}), {4}).count == 0);
  CHECK(count_closed_brute(a, {4}).count == 5);
}

TEST_CASE("toral and pattern counts are shift invariant") {
  const auto a = preset_AL();
  for (Vec b : {Vec{1, 1}, Vec{-2, 3}, Vec{0, 5}}) {
    const auto s = shift_set(a, b);
    CHECK(count_toral_brute(s, {2, 3}).count == count_toral_brute(a, {2, 3}).count);
  }
}

TEST_CASE("affine transforms of displacement sets") {
  const auto al = preset_AL();
  CHECK(shift_set(al, {1, 1}).elements() == std::vector<Vec>{{1, 1}, {1, 2}, {2, 1}});
  AffineMap t({{1, 0}, {1, 1}}, {0, 0});
  CHECK(t.unimodular());
  CHECK(transform_set(al, t).elements() == std::vector<Vec>{{0, 0}, {0, 1}, {1, 1}});
  CHECK(transform_set(al, AffineMap::identity(2)) == al);
  CHECK(integer_det({{2, 1}, {1, 1}}) == 1);
  CHECK(integer_det({{2, 0}, {0, 3}}) == 6);
}

TEST_CASE("affine dimension") {
  CHECK(affine_dimension(preset_AL()) == 2);
  CHECK(affine_dimension(RestrictionSet(2, {{4, 7}})) == 0);
  CHECK(affine_dimension(preset_Aoplus()) == 2);
  CHECK(affine_dimension(RestrictionSet(2, {{0, 0}, {1, 1}, {3, 3}})) == 1);
}

TEST_CASE("affine normal form maps the standard simplex onto the set") {
  auto check = [](const RestrictionSet& a, bool expect_id) {
    auto r = affine_normalize(a);
    CHECK(r.ok);
    const auto c = standard_simplex(2, 2);
    CHECK(transform_set(c, r.map) == a);
    if (expect_id) CHECK(r.map.matrix() == AffineMap::identity(2).matrix());
    return r;
  };
  auto r0 = check(preset_AL(), true);
  CHECK(r0.map.offset() == Vec{0, 0});
  auto r1 = check(RestrictionSet(2, {{1, 1}, {2, 1}, {1, 2}}), true);
  CHECK(r1.map.offset() == Vec{1, 1});
  auto r2 = check(RestrictionSet(2, {{0, 0}, {1, 1}, {2, 1}}), false);
  CHECK(r2.map.offset() == Vec{0, 0});
}

TEST_CASE("affine normal form fails on non-unimodular simplices") {
  auto r = affine_normalize(RestrictionSet(2, {{0, 0}, {2, 0}, {0, 1}}));
  CHECK_FALSE(r.ok);
}

TEST_CASE("count budget") {
  CountOptions opt;
  opt.budget_bits = 10;
  CHECK_THROWS_AS(count_patterns_brute(preset_Aoplus(), Region::box({3, 3}), opt), BudgetExceeded);
}

}  // TEST_SUITE
