#include "permlattice/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "search.hpp"

namespace permlattice {

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Admissible: return "admissible";
    case Decision::NotAdmissible: return "not-admissible";
    case Decision::Undecided: return "undecided";
  }
  return "?";
}

namespace {

// Dense grid over the bounding box of U padded by the set's reach.
struct Grid {
  Vec lo, side;
  std::size_t volume = 1;
  std::size_t at(const Vec& m) const {
    std::size_t i = 0;
    for (std::size_t k = 0; k < lo.size(); ++k) i = i * side[k] + static_cast<std::size_t>(m[k] - lo[k]);
    return i;
  }
};

std::optional<Grid> grid_for(const Pattern& p) {
  if (p.region().empty()) return std::nullopt;
  auto [lo, hi] = p.region().bounds();
  const int r = p.set().max_norm();
  Grid g;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    g.lo.push_back(lo[k] - r);
    g.side.push_back(hi[k] - lo[k] + 1 + 2 * r);
    g.volume *= static_cast<std::size_t>(g.side.back());
    if (g.volume > (1u << 24)) return std::nullopt;
  }
  return g;
}

}  // namespace

AdmissibilityReport check_local(const Pattern& p) {
  AdmissibilityReport r;
  const Region& u = p.region();
  const RestrictionSet& a = p.set();
  if (auto g = grid_for(p)) {
    std::vector<int> first_hit(g->volume, -1);
    std::vector<char> in_u(g->volume, 0);
    for (const auto& c : u.cells()) in_u[g->at(c)] = 1;
    for (std::size_t i = 0; i < u.size(); ++i) {
      std::size_t t = g->at(p.image(i));
      if (first_hit[t] < 0) {
        first_hit[t] = static_cast<int>(i);
        continue;
      }
      std::pair<Vec, Vec> w{u[first_hit[t]], u[i]};
      if (!r.collision_witness || w < *r.collision_witness) r.collision_witness = w;
      r.injective = false;
    }
    for (const auto& c : u.cells()) {
      bool inside = true;
      for (const auto& e : a.elements())
        if (!in_u[g->at(sub(c, e))]) {
          inside = false;
          break;
        }
      if (inside && first_hit[g->at(c)] < 0) r.uncovered_interior_cells.push_back(c);
    }
    return r;
  }
  std::map<Vec, std::size_t> first_hit;
  std::set<Vec> image;
  for (std::size_t i = 0; i < u.size(); ++i) {
    Vec t = p.image(i);
    image.insert(t);
    auto [it, fresh] = first_hit.emplace(t, i);
    if (!fresh) {
      // Cells come in lexicographic order, so the least pair has the least
      // earlier cell, then the least later cell.
      std::pair<Vec, Vec> w{u[it->second], u[i]};
      if (!r.collision_witness || w < *r.collision_witness) r.collision_witness = w;
      r.injective = false;
    }
  }
  const Region inner = interior(u, a);
  for (const auto& c : inner.cells())
    if (!image.count(c)) r.uncovered_interior_cells.push_back(c);
  return r;
}

namespace {

bool is_supported_rect_set(const RestrictionSet& a) { return a == preset_AL() || a == preset_Aoplus(); }

Pattern translate(const Pattern& p, const Vec& by) {
  std::vector<Vec> cells;
  for (const auto& c : p.region().cells()) cells.push_back(add(c, by));
  // Translation keeps lexicographic order, so values line up.
  return Pattern(p.set(), Region(p.region().dim(), cells), p.values());
}

}  // namespace

Pattern ray_extension(const Pattern& p, int pad) {
  const RestrictionSet& a = p.set();
  if (!is_supported_rect_set(a)) throw Unsupported("ray extension is only established for A_L and A_oplus");
  const auto& nbox = p.region().box_size();
  if (!nbox) throw InvalidInput("ray extension needs a box region");
  const Vec n = *nbox;
  auto in_box = [&](const Vec& m) { return m[0] >= 0 && m[0] < n[0] && m[1] >= 0 && m[1] < n[1]; };
  auto in_window = [&](const Vec& m) {
    return m[0] >= -pad && m[0] < n[0] + pad && m[1] >= -pad && m[1] < n[1] + pad;
  };
  const std::vector<Vec> units{{-1, 0}, {0, -1}, {0, 1}, {1, 0}};

  std::map<Vec, int> value;
  std::set<Vec> image;
  for (std::size_t i = 0; i < p.region().size(); ++i) {
    value[p.region()[i]] = p.value(i);
    image.insert(p.image(i));
  }
  std::vector<Vec> outside, holes;
  for (const auto& t : image)
    if (!in_box(t)) outside.push_back(t);
  for (const auto& c : p.region().cells())
    if (!image.count(c)) holes.push_back(c);

  auto assign = [&](const Vec& m, const Vec& disp) {
    int k = a.index_of(disp);
    if (k < 0) throw InternalError("ray step " + vec_str(disp) + " is not an allowed displacement");
    if (value.count(m)) throw InternalError("ray construction revisits cell " + vec_str(m));
    value[m] = k;
  };

  std::set<Vec> filled;
  for (const auto& m : outside) {
    Vec inward;
    for (const auto& e : units)
      if (in_box(add(m, e))) inward = e;
    if (inward.empty()) throw InternalError("image cell " + vec_str(m) + " is not next to the box");
    Vec h = add(m, inward);
    bool hole = std::binary_search(holes.begin(), holes.end(), h);
    if (hole && a.contains(inward) && !filled.count(h)) {
      assign(m, inward);
      filled.insert(h);
      continue;
    }
    // Ray running away from the box.
    for (Vec c = m; in_window(c); c = sub(c, inward)) assign(c, neg(inward));
  }
  for (const auto& h : holes) {
    if (filled.count(h)) continue;
    // Outward directions whose incoming step is allowed, in canonical order of
    // that step.
    std::vector<std::pair<int, Vec>> cand;
    for (const auto& e : units) {
      Vec first = add(h, e);
      int k = a.index_of(neg(e));
      if (k >= 0 && !in_box(first) && !value.count(first)) cand.emplace_back(k, e);
    }
    if (cand.empty()) throw InternalError("no free ray for uncovered cell " + vec_str(h));
    std::sort(cand.begin(), cand.end());
    const Vec e = cand.front().second;
    for (Vec c = add(h, e); in_window(c); c = add(c, e)) assign(c, neg(e));
  }
  const int zero = a.index_of(Vec(2, 0));
  std::vector<Vec> cells;
  for (int x = -pad; x < n[0] + pad; ++x)
    for (int y = -pad; y < n[1] + pad; ++y) {
      Vec c{x, y};
      cells.push_back(c);
      if (!value.count(c)) value[c] = zero;
    }
  std::vector<int> vals;
  for (const auto& c : cells) vals.push_back(value.at(c));
  return Pattern(a, Region(2, cells), vals);
}

namespace {

// Cells of the padded window with their choices; false when some interior
// cell of the window cannot be hit at all.
bool extension_search(const Pattern& p, int margin, Region& w, detail::InjectiveSearch& s) {
  if (margin < 0) throw InvalidInput("margin must be nonnegative");
  const RestrictionSet& a = p.set();
  const Region& u = p.region();
  auto [lo, hi] = u.bounds();
  Vec side(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] -= margin;
    hi[i] += margin;
    side[i] = hi[i] - lo[i] + 1;
  }
  Region box = Region::box(side);
  std::vector<Vec> cells;
  for (const auto& c : box.cells()) cells.push_back(add(c, lo));
  w = Region(u.dim(), cells);

  s.resize(static_cast<int>(w.size()));
  std::map<Vec, int> slot;
  for (std::size_t c = 0; c < w.size(); ++c) {
    int fixed = u.index_of(w[c]);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (fixed >= 0 && p.value(fixed) != static_cast<int>(k)) continue;
      auto [it, fresh] = slot.emplace(add(w[c], a[k]), static_cast<int>(slot.size()));
      s.choice_target[c].push_back(it->second);
      s.choice_label[c].push_back(static_cast<int>(k));
    }
  }
  s.targets = static_cast<int>(slot.size());
  const Region inner = interior(w, a);
  for (const auto& t : inner.cells()) {
    std::vector<int> hitters;
    for (const auto& e : a.elements()) hitters.push_back(w.index_of(sub(t, e)));
    auto it = slot.find(t);
    if (it == slot.end()) return false;
    s.require(it->second, hitters);
  }
  return true;
}

}  // namespace

std::optional<Pattern> extend_window(const Pattern& p, int margin, const ExtendOptions& opt) {
  if (margin < 0) throw InvalidInput("margin must be nonnegative");
  if (p.region().empty()) return Pattern(p.set(), p.region(), {});
  Region w;
  detail::InjectiveSearch s;
  if (!extension_search(p, margin, w, s)) return std::nullopt;
  std::vector<int> labels;
  if (!s.first(labels, opt.max_nodes)) return std::nullopt;
  return Pattern(p.set(), w, labels);
}

bool has_extension(const Pattern& p, int margin) {
  if (margin < 0) throw InvalidInput("margin must be nonnegative");
  if (p.region().empty()) return true;
  Region w;
  detail::InjectiveSearch s;
  if (!extension_search(p, margin, w, s)) return false;
  return s.feasible(std::vector<int>(w.size(), -1));
}

BigInt count_extendable_patterns(const RestrictionSet& a, const Vec& n, int margin) {
  Region box = Region::box(n);
  const std::size_t cells = box.size();
  const int q = static_cast<int>(a.size());
  if (cells * std::log2(std::max(q, 2)) > 32) throw BudgetExceeded("too many box patterns to test one by one");
  std::vector<int> v(cells, 0);
  BigInt count = 0;
  for (;;) {
    Pattern p(a, box, v);
    if (check_local(p).locally_admissible() && has_extension(p, margin)) ++count;
    std::size_t i = 0;
    while (i < cells && ++v[i] == q) v[i++] = 0;
    if (i == cells) break;
  }
  return count;
}

GlobalResult check_global_rect(const Pattern& p, bool want_certificate) {
  if (!is_supported_rect_set(p.set()))
    throw Unsupported("theorem not established: local and global admissibility are only proven equivalent for A_L and A_oplus boxes");
  const auto& n = p.region().box_size();
  if (!n || n->size() != 2) throw InvalidInput("check_global_rect needs a two-dimensional box region");
  GlobalResult r;
  if (std::min((*n)[0], (*n)[1]) >= 3) {
    r.route = "theorem";
    bool ok = check_local(p).locally_admissible();
    r.decision = ok ? Decision::Admissible : Decision::NotAdmissible;
    if (ok && want_certificate) {
      int pad = 2 * p.set().max_norm() + 2;
      Pattern cert = ray_extension(p, pad);
      r.certificate_verified = check_local(cert).locally_admissible();
      for (std::size_t i = 0; i < p.region().size() && r.certificate_verified; ++i)
        r.certificate_verified = cert.value(cert.region().index_of(p.region()[i])) == p.value(i);
      r.certificate = std::move(cert);
    }
    return r;
  }
  r.route = "extension";
  // A locally admissible extension to the padded box has both sides at least
  // 3, so the theorem applies to it.
  auto ext = extend_window(p, 2);
  r.decision = ext ? Decision::Admissible : Decision::NotAdmissible;
  if (ext && want_certificate) {
    r.certificate_verified = check_local(*ext).locally_admissible();
    r.certificate = std::move(ext);
  }
  return r;
}

Decision decide_admissible(const Pattern& p, int margin, const ExtendOptions& opt) {
  auto ext = extend_window(p, margin, opt);
  if (!ext) return Decision::NotAdmissible;
  if (p.region().empty()) return Decision::Admissible;
  if (!is_supported_rect_set(p.set())) return Decision::Undecided;
  auto [lo, hi] = ext->region().bounds();
  Vec side{hi[0] - lo[0] + 1, hi[1] - lo[1] + 1};
  Pattern boxed(ext->set(), Region::box(side), translate(*ext, neg(lo)).values());
  return check_global_rect(boxed, false).decision;
}

namespace {

// Number of cells u in m - A with u + v(u) = m, or -1 when the window is not
// inside U.
int preimages(const Pattern& p, const Vec& m) {
  int count = 0;
  for (std::size_t k = 0; k < p.set().size(); ++k) {
    int u = p.region().index_of(sub(m, p.set()[k]));
    if (u < 0) return -1;
    if (p.value(u) == static_cast<int>(k)) ++count;
  }
  return count;
}

std::vector<int> toral_preimages(const RestrictionSet& a, const Vec& n, const std::vector<int>& values) {
  std::size_t v = box_volume(n);
  if (values.size() != v) throw InvalidInput("toral pattern needs one value per cell");
  Region box = Region::box(n);
  std::vector<int> hits(v, 0);
  for (std::size_t i = 0; i < v; ++i) ++hits[box_index(mod(add(box[i], a[values[i]]), n), n)];
  return hits;
}

}  // namespace

bool check_injective_local(const Pattern& p) {
  for (const auto& m : p.region().cells())
    if (preimages(p, m) > 1) return false;
  return true;
}

bool check_surjective_local(const Pattern& p) {
  for (const auto& m : p.region().cells())
    if (preimages(p, m) == 0) return false;
  return true;
}

bool check_injective_toral(const RestrictionSet& a, const Vec& n, const std::vector<int>& values) {
  for (int h : toral_preimages(a, n, values))
    if (h > 1) return false;
  return true;
}

bool check_surjective_toral(const RestrictionSet& a, const Vec& n, const std::vector<int>& values) {
  for (int h : toral_preimages(a, n, values))
    if (h == 0) return false;
  return true;
}

}  // namespace permlattice
