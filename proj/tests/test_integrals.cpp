#include <doctest.h>

#include <cmath>

#include "permlattice/integrals.hpp"
#include "permlattice/kasteleyn.hpp"

using namespace permlattice;

namespace {

constexpr double kCatalan = 0.915965594177219015054603514932;
constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_SUITE("integrals") {

TEST_CASE("known torus integrals") {
  auto h = honeycomb_entropy(1e-9);
  CHECK(h.converged);
  CHECK(h.value == doctest::Approx(0.3230659472194505).epsilon(1e-9));
  auto d = dimer_entropy(1e-9);
  CHECK(d.value == doctest::Approx(kCatalan / kPi).epsilon(1e-9));
  auto a = a_plus_entropy(1e-9);
  CHECK(a.value == doctest::Approx(2 * kCatalan / kPi).epsilon(1e-9));
}

TEST_CASE("scaling adds log|c|") {
  const auto h = TorusIntegrand::honeycomb();
  const double base = mahler2(h, 1e-9).value;
  for (std::complex<double> c : {std::complex<double>(2), std::complex<double>(10), std::complex<double>(0, 3)})
    CHECK(mahler2(h.scaled(c), 1e-9).value == doctest::Approx(std::log(std::abs(c)) + base).epsilon(1e-9));
}

TEST_CASE("constants and monomials") {
  TorusIntegrand c;
  c.terms = {{0, 0, 5.0}};
  CHECK(mahler2(c, 1e-12).value == doctest::Approx(std::log(5.0)).epsilon(1e-12));
  TorusIntegrand m;
  m.terms = {{2, -1, 3.0}};
  CHECK(mahler2(m, 1e-12).value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  // Jensen: the measure of 2 + z is log 2.
  TorusIntegrand j;
  j.terms = {{0, 0, 2.0}, {1, 0, 1.0}};
  CHECK(mahler2(j, 1e-9).value == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("zero integrand is rejected") {
  CHECK_THROWS_AS(mahler2(TorusIntegrand{}, 1e-8), InvalidInput);
  TorusIntegrand z;
  z.terms = {{1, 0, 0.0}};
  CHECK_THROWS_AS(mahler2(z, 1e-8), InvalidInput);
}

TEST_CASE("A_L per-site counts stay above the limit") {
  std::vector<int> ns{1, 2, 3, 4, 6, 10, 20};
  auto rep = convergence_report(preset_AL(), ns);
  REQUIRE(rep.rows.size() == ns.size());
  double prev = 1e9;
  for (const auto& r : rep.rows) {
    CHECK(r.above);
    CHECK(r.per_site < prev);
    prev = r.per_site;
  }
  CHECK(rep.rows[0].count == 3);
  CHECK(rep.rows[2].count == 459);
}

TEST_CASE("window covers by the planar counter match enumeration") {
  CHECK(square_window_covers(2) == square_window_covers_brute(2));
  CHECK(square_window_covers(4) == square_window_covers_brute(4));
}

TEST_CASE("odd windows are reported as zero") {
  // The planar counter pairs boundary edges, so an odd cell count is not
  // handled and comes back as 0 with a warning.
  CHECK(square_window_covers(3) == 0);
  CHECK(square_window_covers_brute(3) > 0);
  UndirectedGraph star(4);
  for (int v = 1; v < 4; ++v) star.add_edge(0, v);
  auto map = PlanarMap::embed(star);
  REQUIRE(map.has_value());
  auto c = count_covers_planar(*map, {0});
  CHECK(c.value == 0);
  CHECK_FALSE(c.warning.empty());
}

TEST_CASE("A_plus 2x2 patterns split by colour class") {
  // No cell of the 2x2 box is interior, so patterns are the injective maps.
  // Cells of one colour only reach cells of the other, and each class has
  // 4 * 4 choices minus the 2 collisions.
  CHECK(count_patterns_brute(preset_Aplus(), Region::box({2, 2})).count == 14 * 14);
  const BigInt pc = square_window_covers(2);
  CHECK(pc * pc != 196);
}

TEST_CASE("A_plus report carries both rows for even n") {
  auto rep = convergence_report(preset_Aplus(), {2});
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].count == 196);
  CHECK(rep.rows[1].method == "window-covers-squared");
  CHECK_THROWS_AS(convergence_report(preset_Aoplus(), {2}), Unsupported);
}

}  // TEST_SUITE
