#include "permlattice/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "search.hpp"

namespace permlattice {

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

LogBase LogBase::parse(const std::string& s) {
  if (s == "e" || s == "natural" || s == "nats") return natural();
  if (s == "2") return two();
  char* end = nullptr;
  double b = std::strtod(s.c_str(), &end);
  if (!end || *end != '\0' || !(b > 1.0)) throw InvalidInput("log base must be 'e' or a number > 1: " + s);
  return {b};
}

std::string LogBase::name() const {
  if (base == 0.0) return "e";
  std::ostringstream os;
  os << base;
  return os.str();
}

double log_big(const BigInt& x) {
  if (x <= 0) throw NumericError("log of nonpositive integer");
  long exp = 0;
  double m = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(m) + static_cast<double>(exp) * std::log(2.0);
}

unsigned worker_count() {
  if (const char* env = std::getenv("PERMLATTICE_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

// ---------------------------------------------------------------- sets

RestrictionSet::RestrictionSet(int d, std::vector<Vec> elements) : d_(d), elems_(std::move(elements)) {
  if (d <= 0) throw InvalidInput("restriction set dimension must be positive");
  if (elems_.empty()) throw InvalidInput("restriction set must be nonempty");
  for (const auto& e : elems_)
    if (static_cast<int>(e.size()) != d) throw InvalidInput("vector " + vec_str(e) + " has wrong dimension");
  std::sort(elems_.begin(), elems_.end());
  if (std::adjacent_find(elems_.begin(), elems_.end()) != elems_.end())
    throw InvalidInput("restriction set has duplicate vectors");
}

int RestrictionSet::index_of(const Vec& a) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), a);
  if (it == elems_.end() || *it != a) return -1;
  return static_cast<int>(it - elems_.begin());
}

int RestrictionSet::max_norm() const {
  int m = 0;
  for (const auto& e : elems_) m = std::max(m, inf_norm(e));
  return m;
}

RestrictionSet preset_AL() { return {2, {{0, 0}, {1, 0}, {0, 1}}}; }
RestrictionSet preset_Aplus() { return {2, {{0, 1}, {0, -1}, {1, 0}, {-1, 0}}}; }
RestrictionSet preset_Aoplus() { return {2, {{0, 0}, {0, 1}, {0, -1}, {1, 0}, {-1, 0}}}; }
RestrictionSet preset_interval(int k) {
  if (k < 0) throw InvalidInput("interval radius must be nonnegative");
  std::vector<Vec> e;
  for (int i = -k; i <= k; ++i) e.push_back({i});
  return {1, e};
}

RestrictionSet preset_by_name(const std::string& name) {
  if (name == "AL") return preset_AL();
  if (name == "Aplus") return preset_Aplus();
  if (name == "Aoplus") return preset_Aoplus();
  std::string arg;
  if (name.rfind("interval(", 0) == 0 && name.back() == ')') arg = name.substr(9, name.size() - 10);
  if (name.rfind("interval:", 0) == 0) arg = name.substr(9);
  if (!arg.empty()) {
    char* end = nullptr;
    long k = std::strtol(arg.c_str(), &end, 10);
    if (*end == '\0') return preset_interval(static_cast<int>(k));
  }
  throw InvalidInput("unknown restriction set preset: " + name);
}

// ---------------------------------------------------------------- regions

Region::Region(int d, std::vector<Vec> cells) : d_(d), cells_(std::move(cells)) {
  for (const auto& c : cells_)
    if (static_cast<int>(c.size()) != d) throw InvalidInput("cell " + vec_str(c) + " has wrong dimension");
  std::sort(cells_.begin(), cells_.end());
  if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end())
    throw InvalidInput("region has duplicate cells");
}

std::size_t box_volume(const Vec& n) {
  std::size_t v = 1;
  for (int x : n) v *= static_cast<std::size_t>(x);
  return v;
}

std::size_t box_index(const Vec& m, const Vec& n) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n.size(); ++i) idx = idx * n[i] + m[i];
  return idx;
}

static Vec box_cell(std::size_t idx, const Vec& n) {
  Vec m(n.size());
  for (std::size_t i = n.size(); i-- > 0;) {
    m[i] = static_cast<int>(idx % n[i]);
    idx /= n[i];
  }
  return m;
}

Region Region::box(const Vec& n) {
  if (n.empty()) throw InvalidInput("box needs at least one side");
  for (int x : n)
    if (x < 0) throw InvalidInput("box side must be nonnegative");
  Region r(static_cast<int>(n.size()));
  std::size_t v = box_volume(n);
  r.cells_.reserve(v);
  for (std::size_t i = 0; i < v; ++i) r.cells_.push_back(box_cell(i, n));
  r.box_ = n;
  return r;
}

int Region::index_of(const Vec& c) const {
  if (box_) {
    const Vec& n = *box_;
    for (std::size_t i = 0; i < n.size(); ++i)
      if (c[i] < 0 || c[i] >= n[i]) return -1;
    return static_cast<int>(box_index(c, n));
  }
  auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
  if (it == cells_.end() || *it != c) return -1;
  return static_cast<int>(it - cells_.begin());
}

Region Region::without(const Vec& c) const {
  std::vector<Vec> rest;
  for (const auto& x : cells_)
    if (x != c) rest.push_back(x);
  return Region(d_, rest);
}

std::pair<Vec, Vec> Region::bounds() const {
  if (cells_.empty()) throw InvalidInput("bounds of an empty region");
  Vec lo = cells_.front(), hi = cells_.front();
  for (const auto& c : cells_)
    for (int i = 0; i < d_; ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i]);
    }
  return {lo, hi};
}

Region boundary(const Region& u, const RestrictionSet& a) {
  if (!u.empty() && u.dim() != a.dim()) throw InvalidInput("dimension mismatch between region and set");
  std::vector<Vec> out;
  for (const auto& c : u.cells())
    for (const auto& e : a.elements())
      if (!u.contains(sub(c, e))) {
        out.push_back(c);
        break;
      }
  return Region(u.dim(), out);
}

Region interior(const Region& u, const RestrictionSet& a) {
  if (!u.empty() && u.dim() != a.dim()) throw InvalidInput("dimension mismatch between region and set");
  std::vector<Vec> out;
  for (const auto& c : u.cells()) {
    bool inside = true;
    for (const auto& e : a.elements())
      if (!u.contains(sub(c, e))) {
        inside = false;
        break;
      }
    if (inside) out.push_back(c);
  }
  return Region(u.dim(), out);
}

// ---------------------------------------------------------------- patterns

Pattern::Pattern(RestrictionSet set, Region region, std::vector<int> values)
    : set_(std::move(set)), region_(std::move(region)), values_(std::move(values)) {
  if (values_.size() != region_.size()) throw InvalidInput("pattern needs one value per cell");
  for (int v : values_)
    if (v < 0 || v >= static_cast<int>(set_.size())) throw InvalidInput("pattern value out of range");
  if (!region_.empty() && region_.dim() != set_.dim()) throw InvalidInput("dimension mismatch in pattern");
}

ToralPermutation::ToralPermutation(RestrictionSet set, Vec n, std::vector<int> values)
    : set_(std::move(set)), n_(std::move(n)), values_(std::move(values)) {
  if (static_cast<int>(n_.size()) != set_.dim()) throw InvalidInput("torus dimension mismatch");
  if (values_.size() != box_volume(n_)) throw InvalidInput("toral permutation needs one value per cell");
  if (!is_bijective(set_, n_, values_)) throw PreconditionError("induced torus map is not a bijection");
}

Vec ToralPermutation::cell(std::size_t i) const { return box_cell(i, n_); }

std::size_t ToralPermutation::image_index(std::size_t i) const {
  return box_index(mod(add(cell(i), set_[values_[i]]), n_), n_);
}

bool ToralPermutation::is_bijective(const RestrictionSet& set, const Vec& n, const std::vector<int>& values) {
  std::size_t v = box_volume(n);
  if (values.size() != v) return false;
  std::vector<char> hit(v, 0);
  for (std::size_t i = 0; i < v; ++i) {
    if (values[i] < 0 || values[i] >= static_cast<int>(set.size())) return false;
    std::size_t t = box_index(mod(add(box_cell(i, n), set[values[i]]), n), n);
    if (hit[t]) return false;
    hit[t] = 1;
  }
  return true;
}

// ---------------------------------------------------------------- affine maps

BigInt integer_det(std::vector<std::vector<long long>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * prev;
}

AffineMap::AffineMap(std::vector<std::vector<long long>> m, Vec b) : m_(std::move(m)), b_(std::move(b)) {
  for (const auto& row : m_)
    if (row.size() != b_.size()) throw InvalidInput("affine map matrix must be square and match offset");
  if (m_.size() != b_.size()) throw InvalidInput("affine map matrix must be square and match offset");
  det_ = integer_det(m_);
  if (det_ == 0) throw InvalidInput("affine map matrix is singular");
}

AffineMap AffineMap::identity(int d) {
  std::vector<std::vector<long long>> m(d, std::vector<long long>(d, 0));
  for (int i = 0; i < d; ++i) m[i][i] = 1;
  return {m, Vec(d, 0)};
}

AffineMap AffineMap::shift(const Vec& b) {
  AffineMap t = identity(static_cast<int>(b.size()));
  t.b_ = b;
  return t;
}

Vec AffineMap::apply(const Vec& a) const {
  Vec r(b_);
  for (std::size_t i = 0; i < b_.size(); ++i) {
    long long s = r[i];
    for (std::size_t j = 0; j < b_.size(); ++j) s += m_[i][j] * a[j];
    r[i] = static_cast<int>(s);
  }
  return r;
}

RestrictionSet transform_set(const RestrictionSet& a, const AffineMap& t) {
  if (a.dim() != t.dim()) throw InvalidInput("dimension mismatch in transform_set");
  std::vector<Vec> e;
  for (const auto& x : a.elements()) e.push_back(t.apply(x));
  return {a.dim(), e};
}

RestrictionSet shift_set(const RestrictionSet& a, const Vec& b) { return transform_set(a, AffineMap::shift(b)); }

// Integer row reduction of the columns of v (d x r). Returns the
// unimodular U with U v upper triangular, and the reduced matrix.
static void hermite_rows(std::vector<std::vector<long long>>& v, std::vector<std::vector<long long>>& u) {
  const std::size_t d = v.size();
  const std::size_t r = d ? v[0].size() : 0;
  u.assign(d, std::vector<long long>(d, 0));
  for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
  auto axpy = [&](std::size_t dst, std::size_t src, long long q) {
    for (std::size_t j = 0; j < r; ++j) v[dst][j] -= q * v[src][j];
    for (std::size_t j = 0; j < d; ++j) u[dst][j] -= q * u[src][j];
  };
  std::size_t row = 0;
  for (std::size_t col = 0; col < r && row < d; ++col) {
    // Euclid on rows row..d-1 of this column until one nonzero remains.
    for (;;) {
      std::size_t piv = d;
      for (std::size_t i = row; i < d; ++i)
        if (v[i][col] != 0 && (piv == d || std::llabs(v[i][col]) < std::llabs(v[piv][col]))) piv = i;
      if (piv == d) break;
      std::swap(v[piv], v[row]);
      std::swap(u[piv], u[row]);
      bool done = true;
      for (std::size_t i = row + 1; i < d; ++i)
        if (v[i][col] != 0) {
          axpy(i, row, v[i][col] / v[row][col]);
          if (v[i][col] != 0) done = false;
        }
      if (done) break;
    }
    if (v[row][col] != 0) {
      if (v[row][col] < 0) {
        for (auto& x : v[row]) x = -x;
        for (auto& x : u[row]) x = -x;
      }
      ++row;
    }
  }
}

static std::vector<std::vector<long long>> inverse_unimodular(const std::vector<std::vector<long long>>& u) {
  const std::size_t d = u.size();
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(2 * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) a[i][j] = static_cast<long>(u[i][j]);
    a[i][d + i] = 1;
  }
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t p = k;
    while (a[p][k] == 0) ++p;
    std::swap(a[p], a[k]);
    Rational inv = 1 / a[k][k];
    for (auto& x : a[k]) x *= inv;
    for (std::size_t i = 0; i < d; ++i)
      if (i != k && a[i][k] != 0) {
        Rational f = a[i][k];
        for (std::size_t j = 0; j < 2 * d; ++j) a[i][j] -= f * a[k][j];
      }
  }
  std::vector<std::vector<long long>> w(d, std::vector<long long>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (a[i][d + j].get_den() != 1) throw InternalError("inverse of a unimodular matrix is not integral");
      w[i][j] = a[i][d + j].get_num().get_si();
    }
  return w;
}

int affine_dimension(const RestrictionSet& a) {
  const int d = a.dim();
  std::vector<std::vector<long long>> v(d);
  for (int i = 0; i < d; ++i)
    for (std::size_t k = 1; k < a.size(); ++k) v[i].push_back(a[k][i] - a[0][i]);
  if (a.size() == 1) return 0;
  std::vector<std::vector<long long>> u;
  hermite_rows(v, u);
  int rank = 0;
  for (int i = 0; i < d; ++i) {
    bool nz = false;
    for (long long x : v[i]) nz = nz || x != 0;
    rank += nz;
  }
  return rank;
}

RestrictionSet standard_simplex(int d, int r) {
  std::vector<Vec> e{Vec(d, 0)};
  for (int i = 0; i < r; ++i) {
    Vec x(d, 0);
    x[i] = 1;
    e.push_back(x);
  }
  return {d, e};
}

NormalizeResult affine_normalize(const RestrictionSet& a) {
  const int d = a.dim();
  const int r = static_cast<int>(a.size()) - 1;
  if (r > d) throw PreconditionError("set has more than d+1 elements");
  if (affine_dimension(a) != r) throw PreconditionError("set does not have full affine dimension");
  // Columns a_k - a_0, then the trailing columns of U^{-1} where U is the
  // unimodular row reduction of those columns.
  // Edge vectors in decreasing order, so e_0 comes first and the standard
  // simplex maps by the identity.
  std::vector<Vec> edges;
  for (int k = 0; k < r; ++k) edges.push_back(sub(a[k + 1], a[0]));
  std::sort(edges.begin(), edges.end(), std::greater<>());
  std::vector<std::vector<long long>> v(d, std::vector<long long>(r));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < r; ++k) v[i][k] = edges[k][i];
  std::vector<std::vector<long long>> reduced = v, u;
  hermite_rows(reduced, u);
  auto w = inverse_unimodular(u);
  std::vector<std::vector<long long>> m(d, std::vector<long long>(d));
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < r; ++k) m[i][k] = v[i][k];
    for (int k = r; k < d; ++k) m[i][k] = w[i][k];
  }
  AffineMap t(m, a[0]);
  return {t, t.unimodular()};
}

// ---------------------------------------------------------------- counters

namespace {

void check_budget(std::size_t cells, std::size_t letters, double budget) {
  if (letters <= 1 || cells == 0) return;
  double bits = static_cast<double>(cells) * std::log2(static_cast<double>(letters));
  if (bits > budget) {
    std::ostringstream os;
    os << "search space of " << bits << " bits exceeds the budget of " << budget << " bits";
    throw BudgetExceeded(os.str());
  }
}

unsigned threads_of(const CountOptions& opt) { return opt.threads ? opt.threads : worker_count(); }

CountResult run(const detail::InjectiveSearch& s, const CountOptions& opt) {
  CountResult r;
  r.count = s.count(threads_of(opt), opt.collect ? &r.listing : nullptr);
  return r;
}

}  // namespace

CountResult count_patterns_brute(const RestrictionSet& a, const Region& u, const CountOptions& opt) {
  if (!u.empty() && u.dim() != a.dim()) throw InvalidInput("dimension mismatch between region and set");
  check_budget(u.size(), a.size(), opt.budget_bits);
  const int cells = static_cast<int>(u.size());
  std::map<Vec, int> slot;
  detail::InjectiveSearch s;
  s.resize(cells);
  for (int c = 0; c < cells; ++c)
    for (std::size_t k = 0; k < a.size(); ++k) {
      Vec t = add(u[c], a[k]);
      auto [it, fresh] = slot.emplace(t, static_cast<int>(slot.size()));
      s.choice_target[c].push_back(it->second);
      s.choice_label[c].push_back(static_cast<int>(k));
    }
  s.targets = static_cast<int>(slot.size());
  const Region inner = interior(u, a);
  for (const auto& t : inner.cells()) {
    std::vector<int> hitters;
    for (const auto& e : a.elements()) hitters.push_back(u.index_of(sub(t, e)));
    s.require(slot.at(t), hitters);
  }
  return run(s, opt);
}

namespace {

detail::InjectiveSearch torus_search(const RestrictionSet& a, const Vec& n, bool closed, bool dedupe) {
  const std::size_t v = box_volume(n);
  detail::InjectiveSearch s;
  s.resize(static_cast<int>(v));
  s.targets = static_cast<int>(v);
  std::vector<std::vector<int>> hitters(v);
  for (std::size_t c = 0; c < v; ++c) {
    Vec m = box_cell(c, n);
    for (std::size_t k = 0; k < a.size(); ++k) {
      Vec t = add(m, a[k]);
      bool inside = true;
      for (std::size_t i = 0; i < n.size(); ++i) inside = inside && t[i] >= 0 && t[i] < n[i];
      if (closed && !inside) continue;
      int ti = static_cast<int>(box_index(mod(t, n), n));
      if (dedupe) {
        auto& ts = s.choice_target[c];
        if (std::find(ts.begin(), ts.end(), ti) != ts.end()) continue;
      }
      s.choice_target[c].push_back(ti);
      s.choice_label[c].push_back(static_cast<int>(k));
      hitters[ti].push_back(static_cast<int>(c));
    }
  }
  // Finite bijection: every slot must be hit.
  for (std::size_t t = 0; t < v; ++t) s.require(static_cast<int>(t), hitters[t]);
  return s;
}

void check_torus(const RestrictionSet& a, const Vec& n) {
  if (static_cast<int>(n.size()) != a.dim()) throw InvalidInput("torus dimension mismatch");
  for (int x : n)
    if (x <= 0) throw InvalidInput("torus sides must be positive");
}

}  // namespace

CountResult count_toral_brute(const RestrictionSet& a, const Vec& n, const CountOptions& opt) {
  check_torus(a, n);
  check_budget(box_volume(n), a.size(), opt.budget_bits);
  return run(torus_search(a, n, false, false), opt);
}

BigInt count_toral_maps(const RestrictionSet& a, const Vec& n, const CountOptions& opt) {
  check_torus(a, n);
  check_budget(box_volume(n), a.size(), opt.budget_bits);
  CountOptions o = opt;
  o.collect = false;
  return run(torus_search(a, n, false, true), o).count;
}

CountResult count_closed_brute(const RestrictionSet& a, const Vec& n, const CountOptions& opt) {
  check_torus(a, n);
  check_budget(box_volume(n), a.size(), opt.budget_bits);
  return run(torus_search(a, n, true, false), opt);
}

}  // namespace permlattice
