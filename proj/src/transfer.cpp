#include "permlattice/transfer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <thread>

namespace permlattice {

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<int>>& m) {
  SparseMatrix s;
  s.n = static_cast<int>(m.size());
  for (const auto& row : m) {
    if (row.size() != m.size()) throw InvalidInput("matrix must be square");
    for (int j = 0; j < s.n; ++j) {
      if (row[j] < 0) throw InvalidInput("matrix must be nonnegative");
      for (int t = 0; t < row[j]; ++t) s.col.push_back(j);
    }
    s.row_ptr.push_back(s.col.size());
  }
  return s;
}

std::vector<std::vector<long long>> SparseMatrix::dense() const {
  std::vector<std::vector<long long>> d(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) ++d[i][col[p]];
  return d;
}

Vec stripe_displacement(int digit) { return preset_Aoplus()[digit]; }

int stripe_digit(std::uint32_t code, int r) {
  for (int i = 0; i < r; ++i) code /= 5;
  return static_cast<int>(code % 5);
}

namespace {

TransferGraph build_stripe(int m, bool lower, const StripeOptions& opt) {
  if (m < 1) throw InvalidInput("stripe height must be at least 1");
  if (m > 10) throw BudgetExceeded("stripe height " + std::to_string(m) + " is beyond the encodable range");
  const RestrictionSet a = preset_Aoplus();
  const std::uint32_t cols = static_cast<std::uint32_t>(std::pow(5, m) + 0.5);
  const int h = m + 2;  // image rows -1..m
  auto bit = [h](int x, int y) { return std::uint64_t{1} << ((x + 1) * h + (y + 1)); };

  // Image masks of each column code placed at x = 0, 1, 2; 0 marks an
  // invalid column (a collision, or an image leaving the stripe for lower).
  std::vector<std::uint64_t> mask[3];
  std::vector<std::uint32_t> valid;
  for (int x = 0; x < 3; ++x) mask[x].assign(cols, 0);
  for (std::uint32_t c = 0; c < cols; ++c) {
    bool ok = true;
    std::uint64_t mk[3] = {0, 0, 0};
    std::uint32_t code = c;
    for (int r = 0; r < m && ok; ++r, code /= 5) {
      const Vec& d = a[code % 5];
      int y = r + d[1];
      if (lower && (y < 0 || y >= m)) ok = false;
      for (int x = 0; x < 3 && ok; ++x) {
        std::uint64_t b = bit(x + d[0], y);
        if (mk[x] & b) ok = false;
        mk[x] |= b;
      }
    }
    if (!ok) continue;
    valid.push_back(c);
    for (int x = 0; x < 3; ++x) mask[x][c] = mk[x];
  }
  TransferGraph g;
  g.m = m;
  std::vector<std::int32_t> index(static_cast<std::size_t>(cols) * cols, -1);
  for (std::uint32_t v : valid)
    for (std::uint32_t u : valid)
      if (!(mask[0][v] & mask[1][u])) {
        index[static_cast<std::size_t>(v) * cols + u] = static_cast<std::int32_t>(g.states.size());
        g.states.emplace_back(v, u);
      }
  double work = static_cast<double>(g.states.size()) * static_cast<double>(valid.size());
  if (work > opt.max_work)
    throw BudgetExceeded("stripe graph at height " + std::to_string(m) + " needs about " + std::to_string(work) + " edge checks");
  std::uint64_t need = 0;
  for (int y = lower ? 0 : 1; y < (lower ? m : m - 1); ++y) need |= bit(1, y);
  SparseMatrix& adj = g.adjacency;
  adj.n = static_cast<int>(g.states.size());
  adj.row_ptr.assign(1, 0);
  for (const auto& [v, u] : g.states) {
    std::uint64_t base = mask[0][v] | mask[1][u];
    for (std::uint32_t w : valid) {
      std::uint64_t b = mask[2][w];
      if ((base & b) || ((base | b) & need) != need) continue;
      std::int32_t t = index[static_cast<std::size_t>(u) * cols + w];
      if (t < 0) throw InternalError("stripe successor is not a state");
      adj.col.push_back(t);
    }
    adj.row_ptr.push_back(adj.col.size());
  }
  return g;
}

// y = M x + x, split over threads by row blocks.
void shifted_product(const SparseMatrix& m, const std::vector<double>& x, std::vector<double>& y, unsigned threads) {
  auto work = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      double s = x[i];
      for (std::size_t p = m.row_ptr[i]; p < m.row_ptr[i + 1]; ++p) s += x[m.col[p]];
      y[i] = s;
    }
  };
  if (threads <= 1 || m.n < 20000) {
    work(0, m.n);
    return;
  }
  std::vector<std::thread> pool;
  int step = (m.n + static_cast<int>(threads) - 1) / static_cast<int>(threads);
  for (int lo = 0; lo < m.n; lo += step) pool.emplace_back(work, lo, std::min(m.n, lo + step));
  for (auto& t : pool) t.join();
}

using QPoly = std::vector<mpq_class>;  // low to high

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Positive rescaling to a primitive integer polynomial; signs are kept.
void primitive(QPoly& p) {
  trim(p);
  if (p.empty()) return;
  mpz_class den = 1, g = 0;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  for (auto& c : p) c *= den;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  if (g != 0)
    for (auto& c : p) c /= g;
}

QPoly remainder(QPoly a, const QPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    mpq_class f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

QPoly quotient(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) return {};
  QPoly q(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    mpq_class f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return q;
}

int sign_at(const QPoly& p, const mpq_class& x) {
  mpq_class v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return sgn(v);
}

int variations(const std::vector<QPoly>& seq, const mpq_class* x) {
  int count = 0, last = 0;
  for (const auto& p : seq) {
    int s = x ? sign_at(p, *x) : sgn(p.back());
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

TransferGraph build_stripe_lower(int m, const StripeOptions& opt) { return build_stripe(m, true, opt); }
TransferGraph build_stripe_upper(int m, const StripeOptions& opt) { return build_stripe(m, false, opt); }

std::vector<BigInt> characteristic_polynomial(const std::vector<std::vector<long long>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<BigInt> c(n + 1);
  c[n] = 1;
  using Mat = std::vector<std::vector<BigInt>>;
  Mat mk(n, std::vector<BigInt>(n, 0));  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
    Mat next(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        BigInt ail = static_cast<long>(a[i][l]);
        for (int j = 0; j < n; ++j)
          if (mk[l][j] != 0) next[i][j] += ail * mk[l][j];
      }
    for (int i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    mk = std::move(next);
    BigInt tr = 0;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        if (a[i][l] != 0) tr += BigInt(static_cast<long>(a[i][l])) * mk[l][i];
    if (tr % k != 0) throw InternalError("characteristic polynomial division is not exact");
    c[n - k] = -tr / k;
  }
  return c;
}

double largest_real_root(const std::vector<BigInt>& coeffs, double tol) {
  QPoly p(coeffs.begin(), coeffs.end());
  trim(p);
  if (p.size() <= 1) throw NumericError("polynomial has no roots");
  auto derivative = [](const QPoly& q) {
    QPoly d;
    for (std::size_t i = 1; i < q.size(); ++i) d.push_back(q[i] * static_cast<long>(i));
    trim(d);
    return d;
  };
  // Squarefree part p / gcd(p, p'), so that every root is simple.
  {
    QPoly a = p, b = derivative(p);
    while (!b.empty()) {
      QPoly r = remainder(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    if (a.size() > 1) p = quotient(p, a);
    primitive(p);
  }
  std::vector<QPoly> seq{p};
  QPoly d = derivative(p);
  primitive(d);
  seq.push_back(d);
  while (seq.back().size() > 1) {
    QPoly r = remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& x : r) x = -x;
    primitive(r);
    seq.push_back(r);
  }
  // Cauchy bound on root magnitudes.
  mpq_class bound = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    mpq_class r = abs(p[i] / p.back());
    if (r > bound) bound = r;
  }
  bound += 1;
  const int at_inf = variations(seq, nullptr);
  mpq_class lo = -bound, hi = bound;
  if (variations(seq, &lo) - at_inf == 0) throw NumericError("polynomial has no real root");
  mpq_class width = tol;
  while (hi - lo > width) {
    mpq_class mid = (lo + hi) / 2;
    // Roots in (mid, infinity).
    if (variations(seq, &mid) - at_inf > 0) lo = mid;
    else hi = mid;
  }
  mpq_class mid = (lo + hi) / 2;
  return mid.get_d();
}

SpectralResult spectral_radius(const SparseMatrix& m, const SpectralOptions& opt) {
  SpectralResult r;
  if (m.n == 0) throw InvalidInput("empty matrix");
  const unsigned threads = opt.threads > 0 ? static_cast<unsigned>(opt.threads) : worker_count();
  // Power iteration on M + I, which is primitive on each class, so periodic
  // classes still converge.
  std::vector<double> x(m.n, 1.0 / std::sqrt(static_cast<double>(m.n))), y(m.n);
  double mu = 0, prev = -1, change = 0, eig = 0;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    shifted_product(m, x, y, threads);
    double dot = 0, norm = 0;
    for (int i = 0; i < m.n; ++i) {
      dot += x[i] * y[i];
      norm += y[i] * y[i];
    }
    mu = dot;  // x has unit norm
    eig = 0;
    for (int i = 0; i < m.n; ++i) eig += (y[i] - mu * x[i]) * (y[i] - mu * x[i]);
    eig = std::sqrt(eig);
    norm = std::sqrt(norm);
    for (int i = 0; i < m.n; ++i) x[i] = y[i] / norm;
    change = std::abs(mu - prev);
    // The quotient settles long before the vector; the looser vector test
    // guards against a stall that happens to look flat.
    const double scale = std::max(1.0, mu);
    if (change < opt.tol * scale && eig < std::sqrt(opt.tol) * scale) break;
    prev = mu;
  }
  r.iterations = it + 1;
  r.power_radius = mu - 1;
  r.residual = change;
  r.eigen_residual = eig;
  r.radius = r.power_radius;
  r.method = "power-iteration";
  if (m.n <= opt.exact_limit) {
    r.charpoly = characteristic_polynomial(m.dense());
    r.radius = largest_real_root(*r.charpoly, opt.tol);
    r.method = "characteristic-polynomial";
  } else if (it >= opt.max_iterations) {
    throw NumericError("power iteration did not converge after " + std::to_string(it) + " iterations (residual " +
                       std::to_string(r.residual) + ")");
  }
  return r;
}

ComponentMatrix build_component_matrix(int k, int l) {
  if (k < 2 || k > 24) throw InvalidInput("component matrix needs 2 <= k <= 24");
  if (l < 1 || l > k - 1) throw InvalidInput("component matrix needs 1 <= l <= k-1");
  ComponentMatrix c;
  c.k = k;
  c.l = l;
  for (std::uint32_t s = 0; s < (1u << k); ++s)
    if (std::popcount(s) == l) c.states.push_back(s);
  std::map<std::uint32_t, int> at;
  for (std::size_t i = 0; i < c.states.size(); ++i) at[c.states[i]] = static_cast<int>(i);
  const std::size_t n = c.states.size();
  if (n > 20000) throw BudgetExceeded("component matrix has " + std::to_string(n) + " states");
  c.matrix.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t s = c.states[i];
    if (!(s & 1u)) {
      c.matrix[i][at.at(s >> 1)] = 1;
      continue;
    }
    std::uint32_t shifted = s >> 1;
    for (int j = 0; j < k; ++j)
      if (!(shifted >> j & 1u)) c.matrix[i][at.at(shifted | 1u << j)] = 1;
  }
  return c;
}

std::string subset_str(std::uint32_t mask, int k) {
  std::string s = "{";
  bool first = true;
  for (int j = 0; j < k; ++j)
    if (mask >> j & 1u) {
      if (!first) s += ",";
      s += std::to_string(j);
      first = false;
    }
  return s + "}";
}

OneDimResult one_dim_entropy(int k, const LogBase& base, const SpectralOptions& opt) {
  if (k < 1) throw InvalidInput("one-dimensional entropy needs k >= 1");
  ComponentMatrix c = build_component_matrix(2 * k, k);
  OneDimResult r;
  r.k = k;
  r.spectrum = spectral_radius(SparseMatrix::from_dense(c.matrix), opt);
  r.entropy = base.from_nats(std::log(r.spectrum.radius));
  return r;
}

int f_average(const std::vector<int>& window, int k) {
  if (k < 1) throw InvalidInput("f needs k >= 1");
  if (static_cast<int>(window.size()) != 2 * k) throw InvalidInput("f needs a window of length 2k");
  std::vector<int> images;
  int f = 0;
  for (int t = 0; t < 2 * k; ++t) {
    if (std::abs(window[t]) > k) throw InvalidInput("window displacement outside [-k, k]");
    int j = t - 2 * k;
    images.push_back(j + window[t]);
    if (j + window[t] >= -k) ++f;
  }
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end()) throw InvalidInput("window is not injective");
  return f;
}

InequalityReport closed_vs_component_inequality_check(int k, int n, const CountOptions& opt) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  if (n < 1) throw InvalidInput("need n >= 1");
  const int len = 2 * k + 1;
  if (len * std::log2(2.0 * k + 1) > 40) throw BudgetExceeded("window enumeration too large for k = " + std::to_string(k));
  // Windows of length 2k+1: injective, centre covered, index k on the leading
  // 2k positions.
  std::vector<std::vector<int>> words;
  std::vector<int> w(len);
  std::vector<char> used(3 * len, 0);
  auto rec = [&](auto&& self, int t) -> void {
    if (t == len) {
      if (!used[k + len]) return;
      int f = 0;
      for (int i = 0; i < 2 * k; ++i) f += i + w[i] >= k;
      if (f == k) words.push_back(w);
      return;
    }
    for (int d = -k; d <= k; ++d) {
      int img = t + d + len;
      if (used[img]) continue;
      used[img] = 1;
      w[t] = d;
      self(self, t + 1);
      used[img] = 0;
    }
  };
  rec(rec, 0);
  std::map<std::vector<int>, std::vector<int>> by_prefix;
  for (std::size_t i = 0; i < words.size(); ++i)
    by_prefix[std::vector<int>(words[i].begin(), words[i].end() - 1)].push_back(static_cast<int>(i));
  const int nw = static_cast<int>(words.size());
  std::vector<std::vector<int>> succ(nw);
  for (int i = 0; i < nw; ++i) {
    auto it = by_prefix.find(std::vector<int>(words[i].begin() + 1, words[i].end()));
    if (it != by_prefix.end()) succ[i] = it->second;
  }
  // Keep the vertices on bi-infinite paths.
  std::vector<char> alive(nw, 1);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> indeg(nw, 0), outdeg(nw, 0);
    for (int i = 0; i < nw; ++i)
      if (alive[i])
        for (int j : succ[i])
          if (alive[j]) {
            ++outdeg[i];
            ++indeg[j];
          }
    for (int i = 0; i < nw; ++i)
      if (alive[i] && (indeg[i] == 0 || outdeg[i] == 0)) {
        alive[i] = 0;
        changed = true;
      }
  }
  InequalityReport r;
  r.k = k;
  r.n = n;
  r.component = 0;
  if (n < len) {
    // Short words are the prefixes of windows on bi-infinite paths.
    std::set<std::vector<int>> seen;
    for (int i = 0; i < nw; ++i)
      if (alive[i]) seen.insert(std::vector<int>(words[i].begin(), words[i].begin() + n));
    r.component = static_cast<unsigned long>(seen.size());
  }
  std::vector<BigInt> paths(nw);
  for (int i = 0; i < nw; ++i) paths[i] = alive[i] ? 1 : 0;
  for (int step = 0; step < n - len; ++step) {
    std::vector<BigInt> next(nw, 0);
    for (int i = 0; i < nw; ++i)
      if (alive[i] && paths[i] != 0)
        for (int j : succ[i])
          if (alive[j]) next[j] += paths[i];
    paths = std::move(next);
  }
  if (n >= len)
    for (const auto& p : paths) r.component += p;
  r.closed = count_closed_brute(preset_interval(k), Vec{n + 2 * k}, opt).count;
  r.holds = r.component <= r.closed;
  return r;
}

EntropyBounds entropy_bounds_Aplus_circle(int m, const LogBase& base, const StripeOptions& opt, const SpectralOptions& sopt) {
  EntropyBounds b;
  b.m = m;
  TransferGraph lo = build_stripe_lower(m, opt);
  TransferGraph up = build_stripe_upper(m, opt);
  b.lower_states = lo.states.size();
  b.upper_states = up.states.size();
  b.lower_spectrum = spectral_radius(lo.adjacency, sopt);
  b.upper_spectrum = spectral_radius(up.adjacency, sopt);
  b.lower = base.from_nats(std::log(b.lower_spectrum.radius) / m);
  b.upper = base.from_nats(std::log(b.upper_spectrum.radius) / m);
  return b;
}

}  // namespace permlattice
