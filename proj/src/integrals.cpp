#include "permlattice/integrals.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <thread>

#include "permlattice/graph.hpp"
#include "permlattice/kasteleyn.hpp"

namespace permlattice {

const char* const kAplusFormulaNote =
    "the printed closed form (1/2)∫∫(4-2cos(2πx)-2cos(2πy)) has no logarithm and integrates to 2; "
    "the value here is twice the square-lattice dimer entropy (1/4)(1/4π²)∫∫log(4-2cos x-2cos y)";

TorusIntegrand TorusIntegrand::honeycomb() { return {{{0, 0, 1.0}, {1, 0, 1.0}, {0, 1, 1.0}}}; }

TorusIntegrand TorusIntegrand::dimer() {
  return {{{0, 0, 4.0}, {1, 0, -1.0}, {-1, 0, -1.0}, {0, 1, -1.0}, {0, -1, -1.0}}};
}

TorusIntegrand TorusIntegrand::scaled(std::complex<double> c) const {
  TorusIntegrand t = *this;
  for (auto& [a, b, x] : t.terms) x *= c;
  return t;
}

std::complex<double> TorusIntegrand::eval(double x, double y) const {
  std::complex<double> s = 0;
  for (const auto& [a, b, c] : terms) s += c * std::polar(1.0, a * x + b * y);
  return s;
}

void TorusIntegrand::validate() const {
  for (const auto& [a, b, c] : terms)
    if (c != 0.0) return;
  throw InvalidInput("integrand needs a nonzero coefficient");
}

namespace {

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

// Mean of log|p| over the midpoint grid with n points per axis.
double midpoint_mean(const TorusIntegrand& p, int n, unsigned threads) {
  const double h = 2 * std::numbers::pi / n;
  std::map<int, std::vector<std::pair<int, std::complex<double>>>> by_b;
  for (const auto& [a, b, c] : p.terms) by_b[b].emplace_back(a, c);
  std::vector<int> bs;
  for (const auto& [b, t] : by_b) bs.push_back(b);
  std::vector<std::vector<std::complex<double>>> wpow(bs.size(), std::vector<std::complex<double>>(n));
  for (std::size_t k = 0; k < bs.size(); ++k)
    for (int j = 0; j < n; ++j) wpow[k][j] = std::polar(1.0, bs[k] * (j + 0.5) * h);
  std::vector<double> rows(n);
  auto work = [&](int lo, int hi) {
    std::vector<std::complex<double>> q(bs.size());
    std::vector<double> line(n);
    for (int i = lo; i < hi; ++i) {
      double x = (i + 0.5) * h;
      for (std::size_t k = 0; k < bs.size(); ++k) {
        q[k] = 0;
        for (const auto& [a, c] : by_b[bs[k]]) q[k] += c * std::polar(1.0, a * x);
      }
      for (int j = 0; j < n; ++j) {
        std::complex<double> s = 0;
        for (std::size_t k = 0; k < bs.size(); ++k) s += q[k] * wpow[k][j];
        line[j] = 0.5 * std::log(std::norm(s));
      }
      rows[i] = pairwise_sum(line, 0, n);
    }
  };
  if (threads <= 1 || n < 256) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    int step = (n + static_cast<int>(threads) - 1) / static_cast<int>(threads);
    for (int lo = 0; lo < n; lo += step) pool.emplace_back(work, lo, std::min(n, lo + step));
    for (auto& t : pool) t.join();
  }
  return pairwise_sum(rows, 0, n) / (static_cast<double>(n) * n);
}

}  // namespace

QuadratureResult mahler2(const TorusIntegrand& p, double tol, const QuadOptions& opt) {
  if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
  if (opt.min_level < 1 || opt.max_level < opt.min_level) throw InvalidInput("bad quadrature levels");
  p.validate();
  const unsigned threads = opt.threads > 0 ? static_cast<unsigned>(opt.threads) : worker_count();
  QuadratureResult r;
  for (int level = opt.min_level; level <= opt.max_level; ++level) {
    int n = 1 << level;
    double t = midpoint_mean(p, n, threads);
    if (!std::isfinite(t)) throw NumericError("integrand vanishes on the grid with " + std::to_string(n) + " points per axis");
    r.raw.push_back(t);
    r.extrapolated.push_back(r.raw.size() < 2 ? t : (4 * t - r.raw[r.raw.size() - 2]) / 3);
    r.levels = static_cast<int>(r.raw.size());
    r.finest = n;
    if (r.extrapolated.size() >= 3) {
      // Successive extrapolated values, and the raw step as a guard against
      // accidental agreement.
      std::size_t k = r.extrapolated.size() - 1;
      r.error = std::abs(r.extrapolated[k] - r.extrapolated[k - 1]);
      r.value = r.extrapolated[k];
      if (r.error < tol) {
        r.converged = true;
        return r;
      }
    }
  }
  std::size_t k = r.extrapolated.size() - 1;
  throw NumericError("quadrature did not reach tolerance " + std::to_string(tol) + "; last two estimates " +
                     std::to_string(r.extrapolated[k - 1]) + " and " + std::to_string(r.extrapolated[k]));
}

QuadratureResult honeycomb_entropy(double tol, const QuadOptions& opt) { return mahler2(TorusIntegrand::honeycomb(), tol, opt); }

QuadratureResult dimer_entropy(double tol, const QuadOptions& opt) {
  QuadratureResult r = mahler2(TorusIntegrand::dimer(), 4 * tol, opt);
  r.value /= 4;
  r.error /= 4;
  for (auto& x : r.raw) x /= 4;
  for (auto& x : r.extrapolated) x /= 4;
  return r;
}

QuadratureResult a_plus_entropy(double tol, const QuadOptions& opt) {
  QuadratureResult r = dimer_entropy(tol / 2, opt);
  r.value *= 2;
  r.error *= 2;
  for (auto& x : r.raw) x *= 2;
  for (auto& x : r.extrapolated) x *= 2;
  return r;
}

namespace {

UndirectedGraph square_window(int n, std::vector<std::pair<double, double>>* xy, std::vector<int>* box) {
  std::map<Vec, int> id;
  auto inside = [n](int x, int y) { return x >= 0 && x < n && y >= 0 && y < n; };
  std::vector<Vec> cells;
  for (int x = -1; x <= n; ++x)
    for (int y = -1; y <= n; ++y) {
      bool xout = x < 0 || x >= n, yout = y < 0 || y >= n;
      if (!(xout && yout)) cells.push_back({x, y});
    }
  UndirectedGraph g(static_cast<int>(cells.size()));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    id[cells[i]] = static_cast<int>(i);
    g.labels.push_back(cells[i]);
    xy->emplace_back(cells[i][0], cells[i][1]);
    if (inside(cells[i][0], cells[i][1])) box->push_back(static_cast<int>(i));
  }
  for (const auto& c : cells) {
    if (!inside(c[0], c[1])) continue;
    for (const Vec& d : {Vec{1, 0}, Vec{0, 1}, Vec{-1, 0}, Vec{0, -1}}) {
      Vec u = add(c, d);
      // Box-box edges once, box-margin edges from the box side.
      if (inside(u[0], u[1]) && u < c) continue;
      g.add_edge(id.at(c), id.at(u));
    }
  }
  return g;
}

}  // namespace

BigInt square_window_covers(int n) {
  if (n < 1) throw InvalidInput("window side must be positive");
  std::vector<std::pair<double, double>> xy;
  std::vector<int> box;
  UndirectedGraph g = square_window(n, &xy, &box);
  PlanarMap map = PlanarMap::from_coordinates(g, xy);
  return count_covers_planar(map, box).value;
}

BigInt square_window_covers_brute(int n) {
  if (n < 1) throw InvalidInput("window side must be positive");
  std::vector<std::pair<double, double>> xy;
  std::vector<int> box;
  UndirectedGraph g = square_window(n, &xy, &box);
  return count_covers(g, box);
}

ConvergenceReport convergence_report(const RestrictionSet& a, const std::vector<int>& ns, const CountOptions& opt) {
  ConvergenceReport rep;
  const bool al = a == preset_AL();
  if (!al && !(a == preset_Aplus())) throw Unsupported("convergence report covers A_L and A_plus only");
  rep.set = al ? "AL" : "Aplus";
  rep.limit = al ? honeycomb_entropy().value : a_plus_entropy().value;
  auto push = [&](int n, const BigInt& c, const std::string& method) {
    ConvergenceRow row;
    row.n = n;
    row.count = c;
    row.per_site = log_big(c) / (static_cast<double>(n) * n);
    row.gap = row.per_site - rep.limit;
    row.above = row.per_site >= rep.limit - 1e-9;
    row.method = method;
    rep.rows.push_back(row);
  };
  for (int n : ns) {
    if (n < 1) throw InvalidInput("box side must be positive");
    if (al) {
      push(n, count_patterns_AL(n), "pfaffian");
    } else {
      push(n, count_patterns_brute(a, Region::box({n, n}), opt).count, "brute");
      // The cover construction only handles an even number of box cells.
      if (n % 2 == 0) {
        BigInt pc = square_window_covers(n);
        push(n, pc * pc, "window-covers-squared");
      }
    }
  }
  return rep;
}

}  // namespace permlattice
