#pragma once

#include <optional>
#include <string>
#include <vector>

#include "permlattice/common.hpp"

namespace permlattice {

// Finite set of allowed displacements, stored in lexicographic order so the
// index of a displacement is canonical.
class RestrictionSet {
 public:
  RestrictionSet() = default;
  RestrictionSet(int d, std::vector<Vec> elements);

  int dim() const { return d_; }
  std::size_t size() const { return elems_.size(); }
  const Vec& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<Vec>& elements() const { return elems_; }
  int index_of(const Vec& a) const;
  bool contains(const Vec& a) const { return index_of(a) >= 0; }
  int max_norm() const;

  bool operator==(const RestrictionSet&) const = default;

 private:
  int d_ = 0;
  std::vector<Vec> elems_;
};

RestrictionSet preset_AL();
RestrictionSet preset_Aplus();
RestrictionSet preset_Aoplus();
RestrictionSet preset_interval(int k);
// Accepts AL, Aplus, Aoplus, interval(k) and interval:k.
RestrictionSet preset_by_name(const std::string& name);

class Region {
 public:
  Region() = default;
  explicit Region(int d) : d_(d) {}
  Region(int d, std::vector<Vec> cells);
  static Region box(const Vec& n);

  int dim() const { return d_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  const std::vector<Vec>& cells() const { return cells_; }
  const Vec& operator[](std::size_t i) const { return cells_[i]; }
  const std::optional<Vec>& box_size() const { return box_; }
  int index_of(const Vec& c) const;
  bool contains(const Vec& c) const { return index_of(c) >= 0; }
  Region without(const Vec& c) const;
  // Inclusive lower and upper corners. Region must be nonempty.
  std::pair<Vec, Vec> bounds() const;

  bool operator==(const Region& o) const { return d_ == o.d_ && cells_ == o.cells_; }

 private:
  int d_ = 0;
  std::vector<Vec> cells_;
  std::optional<Vec> box_;
};

// Row-major index of m inside the box [n] (first coordinate most significant,
// which agrees with lexicographic order of the cells).
std::size_t box_index(const Vec& m, const Vec& n);
std::size_t box_volume(const Vec& n);

class Pattern {
 public:
  Pattern() = default;
  Pattern(RestrictionSet set, Region region, std::vector<int> values);

  const RestrictionSet& set() const { return set_; }
  const Region& region() const { return region_; }
  const std::vector<int>& values() const { return values_; }
  int value(std::size_t i) const { return values_[i]; }
  Vec image(std::size_t i) const { return add(region_[i], set_[values_[i]]); }

 private:
  RestrictionSet set_;
  Region region_;
  std::vector<int> values_;
};

class ToralPermutation {
 public:
  ToralPermutation(RestrictionSet set, Vec n, std::vector<int> values);

  const RestrictionSet& set() const { return set_; }
  const Vec& size() const { return n_; }
  const std::vector<int>& values() const { return values_; }
  std::size_t cell_count() const { return values_.size(); }
  Vec cell(std::size_t i) const;
  // Index of (m + a) mod n for the cell with index i.
  std::size_t image_index(std::size_t i) const;
  static bool is_bijective(const RestrictionSet& set, const Vec& n, const std::vector<int>& values);

 private:
  RestrictionSet set_;
  Vec n_;
  std::vector<int> values_;
};

class AffineMap {
 public:
  AffineMap(std::vector<std::vector<long long>> m, Vec b);
  static AffineMap identity(int d);
  static AffineMap shift(const Vec& b);

  int dim() const { return static_cast<int>(b_.size()); }
  const std::vector<std::vector<long long>>& matrix() const { return m_; }
  const Vec& offset() const { return b_; }
  const BigInt& det() const { return det_; }
  bool unimodular() const { return abs(det_) == 1; }
  Vec apply(const Vec& a) const;

 private:
  std::vector<std::vector<long long>> m_;
  Vec b_;
  BigInt det_;
};

BigInt integer_det(std::vector<std::vector<long long>> m);

Region boundary(const Region& u, const RestrictionSet& a);
Region interior(const Region& u, const RestrictionSet& a);

struct CountOptions {
  double budget_bits = 36.0;
  bool collect = false;
  unsigned threads = 0;  // 0 means worker_count()
};

struct CountResult {
  BigInt count;
  std::vector<std::vector<int>> listing;  // value vectors, cells in lexicographic order
};

// Assignments v : U -> A with f_v injective and Int(U,A) inside the image.
CountResult count_patterns_brute(const RestrictionSet& a, const Region& u, const CountOptions& opt = {});
// Assignments [n] -> A whose induced map mod n is a bijection (periodic points).
CountResult count_toral_brute(const RestrictionSet& a, const Vec& n, const CountOptions& opt = {});
// Distinct maps of the torus [n] with every step equal to some a mod n.
BigInt count_toral_maps(const RestrictionSet& a, const Vec& n, const CountOptions& opt = {});
// Bijections of the box [n] itself restricted by A.
CountResult count_closed_brute(const RestrictionSet& a, const Vec& n, const CountOptions& opt = {});

RestrictionSet transform_set(const RestrictionSet& a, const AffineMap& t);
RestrictionSet shift_set(const RestrictionSet& a, const Vec& b);
int affine_dimension(const RestrictionSet& a);

struct NormalizeResult {
  AffineMap map;
  bool ok;  // true when the linear part is unimodular
};
// The standard simplex {0, e_0, ..., e_{r-1}} in dimension d.
RestrictionSet standard_simplex(int d, int r);
NormalizeResult affine_normalize(const RestrictionSet& a);

}  // namespace permlattice
