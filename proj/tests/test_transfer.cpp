#include <doctest.h>

#include <cmath>
#include <set>

#include "permlattice/transfer.hpp"

using namespace permlattice;

namespace {

// Maps of the cylinder (Z/p) x [m] with steps in A_oplus, injective, images
// in rows [lo, hi), and every cell of rows [clo, chi) hit.
long long cylinder_oracle(int p, int m, int lo, int hi, int clo, int chi) {
  const int rows = hi - lo;
  std::vector<int> used(p * rows, 0);
  auto slot = [&](int x, int y) { return mod(x, p) * rows + (y - lo); };
  auto column_covered = [&](int x) {
    for (int y = clo; y < chi; ++y)
      if (!used[slot(x, y)]) return false;
    return true;
  };
  long long count = 0;
  auto rec = [&](auto&& self, int cell) -> void {
    if (cell == p * m) {
      if (column_covered(0) && column_covered(p - 1) && (p < 2 || column_covered(p - 2))) ++count;
      return;
    }
    const int x = cell / m, y = cell % m;
    // Column x-2 can no longer be reached once column x starts.
    if (y == 0 && x >= 3 && !column_covered(x - 2)) return;
    for (int d = 0; d < 5; ++d) {
      Vec s = stripe_displacement(d);
      int tx = x + s[0], ty = y + s[1];
      if (ty < lo || ty >= hi) continue;
      int& u = used[slot(tx, ty)];
      if (u) continue;
      u = 1;
      self(self, cell + 1);
      u = 0;
    }
  };
  rec(rec, 0);
  return count;
}

long long trace_power(const SparseMatrix& a, int p) {
  long long total = 0;
  for (int s = 0; s < a.n; ++s) {
    std::vector<long long> v(a.n, 0), w(a.n);
    v[s] = 1;
    for (int step = 0; step < p; ++step) {
      std::fill(w.begin(), w.end(), 0);
      for (int i = 0; i < a.n; ++i)
        if (v[i])
          for (std::size_t q = a.row_ptr[i]; q < a.row_ptr[i + 1]; ++q) w[a.col[q]] += v[i];
      v.swap(w);
    }
    total += v[s];
  }
  return total;
}

// Length-n subwords of periodic configurations of Omega([-k,k]) with f = k.
std::size_t periodic_component_words(int k, int n, int max_period) {
  std::set<std::vector<int>> words;
  for (int p = 1; p <= max_period; ++p) {
    std::vector<int> w(p);
    std::vector<char> used(p, 0);
    auto rec = [&](auto&& self, int i) -> void {
      if (i == p) {
        std::vector<int> win(2 * k);
        for (int t = 0; t < 2 * k; ++t) win[t] = w[mod(t - 2 * k, p)];
        if (f_average(win, k) != k) return;
        for (int s = 0; s < p; ++s) {
          std::vector<int> sub(n);
          for (int t = 0; t < n; ++t) sub[t] = w[(s + t) % p];
          words.insert(sub);
        }
        return;
      }
      for (int d = -k; d <= k; ++d) {
        int t = mod(i + d, p);
        if (used[t]) continue;
        used[t] = 1;
        w[i] = d;
        self(self, i + 1);
        used[t] = 0;
      }
    };
    rec(rec, 0);
  }
  return words.size();
}

}  // namespace

TEST_SUITE("transfer") {

TEST_CASE("golden ratio and identity") {
  auto fib = SparseMatrix::from_dense({{1, 1}, {1, 0}});
  auto r = spectral_radius(fib);
  CHECK(r.radius == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-12));
  CHECK(characteristic_polynomial({{1, 1}, {1, 0}}) == std::vector<BigInt>{-1, -1, 1});
  CHECK(largest_real_root({-1, -1, 1}) == doctest::Approx(1.6180339887).epsilon(1e-10));
  auto id = SparseMatrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(spectral_radius(id).radius == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("power iteration agrees with the characteristic polynomial") {
  for (int k = 2; k <= 7; ++k)
    for (int l = 1; l < k; ++l) {
      auto c = build_component_matrix(k, l);
      auto a = SparseMatrix::from_dense(c.matrix);
      SpectralOptions po;
      po.exact_limit = 0;
      double pw = spectral_radius(a, po).radius;
      double ex = largest_real_root(characteristic_polynomial(a.dense()));
      CHECK(std::abs(pw - ex) < 1e-9 * std::max(1.0, ex));
    }
}

TEST_CASE("component matrices") {
  auto c = build_component_matrix(2, 1);
  CHECK(c.matrix == std::vector<std::vector<int>>{{1, 1}, {1, 0}});
  CHECK(c.states == std::vector<std::uint32_t>{1, 2});
  for (int k = 2; k <= 8; ++k)
    for (int l = 1; l < k; ++l) {
      auto m = build_component_matrix(k, l);
      CHECK(m.states.size() == static_cast<std::size_t>(std::round(std::tgamma(k + 1) / (std::tgamma(l + 1) * std::tgamma(k - l + 1)))));
    }
}

TEST_CASE("conjugate components have equal radius") {
  for (int k = 2; k <= 8; ++k)
    for (int l = 1; l < k; ++l) {
      double a = spectral_radius(SparseMatrix::from_dense(build_component_matrix(k, l).matrix)).radius;
      double b = spectral_radius(SparseMatrix::from_dense(build_component_matrix(k, k - l).matrix)).radius;
      CHECK(std::abs(a - b) < 1e-9);
    }
}

TEST_CASE("component radius rises towards the middle") {
  for (int k = 1; k <= 3; ++k)
    for (int l = 1; l + 1 <= k; ++l) {
      double a = spectral_radius(SparseMatrix::from_dense(build_component_matrix(2 * k, l).matrix)).radius;
      double b = spectral_radius(SparseMatrix::from_dense(build_component_matrix(2 * k, l + 1).matrix)).radius;
      CHECK(a <= b + 1e-9);
    }
}

TEST_CASE("one-dimensional entropy") {
  auto r = one_dim_entropy(1);
  CHECK(r.entropy == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
  CHECK(one_dim_entropy(1, LogBase::two()).entropy == doctest::Approx(std::log2((1 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
  double prev = 0;
  for (int k = 1; k <= 5; ++k) {
    double e = one_dim_entropy(k).entropy;
    CHECK(e > prev);
    CHECK(e < std::log(2.0 * k + 1));
    prev = e;
  }
}

TEST_CASE("f counts positions mapping to the right half") {
  for (int k = 1; k <= 4; ++k) {
    CHECK(f_average(std::vector<int>(2 * k, 0), k) == k);
    CHECK(f_average(std::vector<int>(2 * k, k), k) == 2 * k);
    CHECK(f_average(std::vector<int>(2 * k, -k), k) == 0);
  }
  CHECK_THROWS_AS(f_average({0, 0, 0}, 1), InvalidInput);
  CHECK_THROWS_AS(f_average({1, 0}, 1), InvalidInput);
  CHECK_THROWS_AS(f_average({2, 0}, 1), InvalidInput);
}

TEST_CASE("component patterns are the subwords of its periodic points") {
  for (int n = 1; n <= 5; ++n)
    CHECK(closed_vs_component_inequality_check(1, n).component == periodic_component_words(1, n, 12));
  for (int n = 1; n <= 4; ++n)
    CHECK(closed_vs_component_inequality_check(2, n).component == periodic_component_words(2, n, 9));
}

TEST_CASE("component patterns are bounded by closed blocks") {
  for (int k = 1; k <= 2; ++k)
    for (int n = 2 * k + 1; n <= 2 * k + 3; ++n) {
      auto r = closed_vs_component_inequality_check(k, n);
      CHECK(r.holds);
      CHECK(r.closed == count_closed_brute(preset_interval(k), {n + 2 * k}).count);
      CHECK(r.component <= r.closed);
    }
  CHECK(closed_vs_component_inequality_check(1, 3).closed == 8);
}

TEST_CASE("stripe states satisfy their predicates") {
  for (int m = 1; m <= 3; ++m) {
    auto g = build_stripe_lower(m);
    for (auto [v, u] : g.states)
      for (int r = 0; r < m; ++r) {
        int dy = stripe_displacement(stripe_digit(v, r))[1];
        CHECK(r + dy >= 0);
        CHECK(r + dy < m);
      }
  }
  auto g1 = build_stripe_lower(1);
  // One row: each column moves left, right or stays, and a step right onto
  // a cell that stays is a collision.
  const int right = preset_Aoplus().index_of({1, 0}), stay = preset_Aoplus().index_of({0, 0});
  for (auto [v, u] : g1.states) {
    CHECK(stripe_displacement(stripe_digit(v, 0))[1] == 0);
    CHECK_FALSE((stripe_digit(v, 0) == right && stripe_digit(u, 0) == stay));
  }
}

TEST_CASE("closed walks of the stripe graphs count cylinder configurations") {
  for (int m = 1; m <= 3; ++m) {
    auto g = build_stripe_lower(m);
    for (int p = 5; p <= (m == 3 ? 5 : 7); ++p)
      CHECK(trace_power(g.adjacency, p) == cylinder_oracle(p, m, 0, m, 0, m));
  }
  for (int m = 1; m <= 2; ++m) {
    auto g = build_stripe_upper(m);
    CHECK(trace_power(g.adjacency, 5) == cylinder_oracle(5, m, -1, m + 1, 1, m - 1));
  }
}

TEST_CASE("stripe bounds bracket the entropy") {
  auto b2 = LogBase::two();
  auto e2 = entropy_bounds_Aplus_circle(2, b2);
  auto e3 = entropy_bounds_Aplus_circle(3, b2);
  CHECK(e2.lower <= e2.upper);
  CHECK(e3.lower <= e3.upper);
  CHECK(e2.lower <= e3.lower + 1e-12);
  CHECK(e3.upper <= e2.upper + 1e-12);
  CHECK(e3.upper <= std::log2(5.0) + 1e-9);
  CHECK(e3.upper == doctest::Approx(1.630294).epsilon(2e-6));
  CHECK_THROWS_AS(entropy_bounds_Aplus_circle(4, b2, StripeOptions{1e3}), BudgetExceeded);
}

}  // TEST_SUITE
