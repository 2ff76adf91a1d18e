#include <doctest.h>

#include "permlattice/admissibility.hpp"
#include "permlattice/selftest.hpp"

using namespace permlattice;

namespace {

Pattern constant_pattern(const RestrictionSet& a, const Region& u, const Vec& d) {
  return Pattern(a, u, std::vector<int>(u.size(), a.index_of(d)));
}

}  // namespace

TEST_SUITE("admissibility") {

TEST_CASE("identity pattern is locally admissible") {
  auto p = constant_pattern(preset_Aoplus(), Region::box({3, 3}), {0, 0});
  CHECK(check_local(p).locally_admissible());
}

TEST_CASE("collision is reported with a witness") {
  const auto a = preset_Aplus();
  Region u(2, {{0, 0}, {0, 2}});
  Pattern p(a, u, {a.index_of({0, 1}), a.index_of({0, -1})});
  auto r = check_local(p);
  CHECK_FALSE(r.injective);
  REQUIRE(r.collision_witness.has_value());
  CHECK(r.collision_witness->first != r.collision_witness->second);
}

TEST_CASE("uncovered interior cells are listed") {
  const auto a = preset_Aoplus();
  // A run of +x steps ending at the edge leaves (2,2) unreached.
  std::vector<int> v(25, a.index_of({0, 0}));
  for (int x = 2; x < 5; ++x) v[box_index({x, 2}, {5, 5})] = a.index_of({1, 0});
  auto p = Pattern(a, Region::box({5, 5}), v);
  auto r = check_local(p);
  CHECK(r.injective);
  CHECK(r.uncovered_interior_cells == std::vector<Vec>{{2, 2}});
}

TEST_CASE("the punctured pattern is locally admissible but cannot be filled") {
  Pattern p = example_hole_pattern();
  CHECK(p.region().size() == 14);
  CHECK(check_local(p).locally_admissible());
  CHECK_FALSE(has_extension(p, 0));
  CHECK_FALSE(extend_window(p, 0).has_value());
  CHECK(decide_admissible(p, 0) == Decision::NotAdmissible);
}

TEST_CASE("empty region extends to the empty pattern") {
  Pattern p(preset_AL(), Region(2), {});
  auto e = extend_window(p, 0);
  REQUIRE(e.has_value());
  CHECK(e->region().empty());
}

TEST_CASE("extensions keep the original values and are locally admissible") {
  CountOptions opt;
  opt.collect = true;
  const auto a = preset_AL();
  auto all = count_patterns_brute(a, Region::box({2, 2}), opt);
  for (const auto& v : all.listing) {
    Pattern p(a, Region::box({2, 2}), v);
    auto e = extend_window(p, 1);
    REQUIRE(e.has_value());
    CHECK(check_local(*e).locally_admissible());
    CHECK(has_extension(p, 1));
    for (std::size_t i = 0; i < p.region().size(); ++i) {
      int j = e->region().index_of(p.region()[i]);
      REQUIRE(j >= 0);
      CHECK(e->value(j) == v[i]);
    }
  }
}

TEST_CASE("existence test agrees with the constructive search") {
  const auto a = preset_Aoplus();
  CountOptions opt;
  opt.collect = true;
  auto all = count_patterns_brute(a, Region::box({1, 3}), opt);
  int with = 0;
  for (const auto& v : all.listing) {
    Pattern p(a, Region::box({1, 3}), v);
    for (int margin : {0, 1, 2}) {
      bool h = has_extension(p, margin);
      CHECK(h == extend_window(p, margin).has_value());
      with += h;
    }
  }
  CHECK(with > 0);
}

TEST_CASE("global check on boxes") {
  SUBCASE("identity over A_L") {
    auto p = constant_pattern(preset_AL(), Region::box({2, 2}), {0, 0});
    auto r = check_global_rect(p);
    CHECK(r.decision == Decision::Admissible);
  }
  SUBCASE("admissible A_oplus patterns carry a verified certificate") {
    const auto a = preset_Aoplus();
    const Vec n{4, 4};
    auto at = [&](std::vector<int>& v, Vec c, Vec d) { v[box_index(c, n)] = a.index_of(d); };
    std::vector<std::vector<int>> cases;
    std::vector<int> id(16, a.index_of({0, 0}));
    cases.push_back(id);
    // Rotation of the central 2x2 block.
    auto rot = id;
    at(rot, {1, 1}, {0, 1});
    at(rot, {1, 2}, {1, 0});
    at(rot, {2, 2}, {0, -1});
    at(rot, {2, 1}, {-1, 0});
    cases.push_back(rot);
    // A swap on the top row and a ray leaving through the right side.
    auto mix = id;
    at(mix, {0, 0}, {0, 1});
    at(mix, {0, 1}, {0, -1});
    for (int y = 0; y < 4; ++y) at(mix, {2, y}, {0, 0});
    for (int x = 1; x < 4; ++x) at(mix, {x, 3}, {1, 0});
    cases.push_back(mix);
    // Everything moves down, leaving the top row open.
    cases.push_back(std::vector<int>(16, a.index_of({-1, 0})));
    for (const auto& v : cases) {
      Pattern p(a, Region::box(n), v);
      REQUIRE(check_local(p).locally_admissible());
      auto r = check_global_rect(p);
      CHECK(r.decision == Decision::Admissible);
      REQUIRE(r.certificate.has_value());
      CHECK(r.certificate_verified);
      CHECK(check_local(*r.certificate).locally_admissible());
    }
  }
  SUBCASE("interior hole is not admissible") {
    const auto a = preset_Aoplus();
    std::vector<int> v(16, a.index_of({0, 0}));
    v[box_index({1, 1}, {4, 4})] = a.index_of({1, 0});
    v[box_index({2, 1}, {4, 4})] = a.index_of({1, 0});
    auto r = check_global_rect(Pattern(a, Region::box({4, 4}), v));
    CHECK(r.decision == Decision::NotAdmissible);
  }
  SUBCASE("other sets are unsupported") {
    auto p = constant_pattern(preset_Aplus(), Region::box({3, 3}), {0, 1});
    CHECK_THROWS_AS(check_global_rect(p), Unsupported);
  }
}

TEST_CASE("local and global admissibility agree on small A_L boxes") {
  const auto a = preset_AL();
  for (Vec n : {Vec{2, 2}, Vec{2, 3}, Vec{3, 3}}) {
    CountOptions opt;
    opt.collect = true;
    auto all = count_patterns_brute(a, Region::box(n), opt);
    for (const auto& v : all.listing)
      CHECK(check_global_rect(Pattern(a, Region::box(n), v), false).decision == Decision::Admissible);
  }
}

TEST_CASE("ray extension covers the padded box") {
  const auto a = preset_Aoplus();
  std::vector<int> v(9, a.index_of({0, 0}));
  v[box_index({1, 0}, {3, 3})] = a.index_of({0, 1});
  v[box_index({1, 1}, {3, 3})] = a.index_of({0, 1});
  v[box_index({1, 2}, {3, 3})] = a.index_of({0, 1});
  Pattern p(a, Region::box({3, 3}), v);
  REQUIRE(check_local(p).locally_admissible());
  Pattern e = ray_extension(p, 2);
  CHECK(e.region().size() == 49);
  CHECK(check_local(e).locally_admissible());
  CHECK_THROWS_AS(ray_extension(constant_pattern(preset_Aplus(), Region::box({2, 2}), {0, 1}), 1), Unsupported);
}

TEST_CASE("interior-restricted injective and surjective tests") {
  SUBCASE("locally admissible patterns pass both") {
    CountOptions opt;
    opt.collect = true;
    const auto a = preset_AL();
    auto all = count_patterns_brute(a, Region::box({3, 3}), opt);
    for (const auto& v : all.listing) {
      Pattern p(a, Region::box({3, 3}), v);
      CHECK(check_injective_local(p));
      CHECK(check_surjective_local(p));
    }
  }
  SUBCASE("two cells onto one interior target fail injectivity") {
    const auto a = preset_Aplus();
    // Cells (1,0) and (1,2) both hit (1,1), whose whole pre-image window
    // lies in the 3x3 box.
    std::vector<int> v(9, a.index_of({1, 0}));
    v[box_index({1, 0}, {3, 3})] = a.index_of({0, 1});
    v[box_index({1, 2}, {3, 3})] = a.index_of({0, -1});
    Pattern p(a, Region::box({3, 3}), v);
    CHECK_FALSE(check_injective_local(p));
  }
  SUBCASE("a redirected identity cell leaves a hole") {
    const auto a = preset_Aoplus();
    std::vector<int> v(25, a.index_of({0, 0}));
    v[box_index({2, 2}, {5, 5})] = a.index_of({1, 0});
    Pattern p(a, Region::box({5, 5}), v);
    CHECK_FALSE(check_surjective_local(p));
    CHECK_FALSE(check_injective_local(p));
  }
  SUBCASE("a shift that pushes the hole into the interior") {
    const auto a = preset_Aoplus();
    std::vector<int> v(25, a.index_of({0, 0}));
    for (int x = 2; x < 5; ++x) v[box_index({x, 2}, {5, 5})] = a.index_of({1, 0});
    Pattern p(a, Region::box({5, 5}), v);
    CHECK(check_injective_local(p));
    CHECK_FALSE(check_surjective_local(p));
  }
}

TEST_CASE("toral forms") {
  const auto a = preset_Aplus();
  auto all = count_toral_brute(a, {2, 2}, {.collect = true});
  for (const auto& v : all.listing) {
    CHECK(check_injective_toral(a, {2, 2}, v));
    CHECK(check_surjective_toral(a, {2, 2}, v));
  }
  std::vector<int> bad(4, a.index_of({0, 1}));
  bad[0] = a.index_of({1, 0});
  CHECK_FALSE(check_injective_toral(a, {2, 2}, bad));
}

TEST_CASE("extendable counts bound the admissible ones and match on A_L") {
  CHECK(count_extendable_patterns(preset_AL(), {2, 2}, 2) == 28);
  CHECK(count_extendable_patterns(preset_AL(), {3, 3}, 2) == 459);
  CHECK(count_extendable_patterns(preset_Aplus(), {2, 2}, 3) == 196);
  CHECK(count_extendable_patterns(shift_set(preset_AL(), {0, 2}), {3, 3}, 4) == 459);
}

TEST_CASE("locally admissible counts move under shifts") {
  // The interior of a box shrinks when the set moves away from the origin.
  auto shifted = shift_set(preset_AL(), {0, 2});
  CHECK(count_patterns_brute(shifted, Region::box({3, 3})).count == 2044);
  CHECK(count_patterns_brute(preset_AL(), Region::box({3, 3})).count == 459);
}

}  // TEST_SUITE
