#pragma once

#include <optional>
#include <utility>

#include "permlattice/lattice.hpp"

namespace permlattice {

struct AdmissibilityReport {
  bool injective = true;
  std::vector<Vec> uncovered_interior_cells;
  std::optional<std::pair<Vec, Vec>> collision_witness;

  bool locally_admissible() const { return injective && uncovered_interior_cells.empty(); }
};

AdmissibilityReport check_local(const Pattern& p);

enum class Decision { Admissible, NotAdmissible, Undecided };
const char* decision_name(Decision d);

struct GlobalResult {
  Decision decision = Decision::Undecided;
  // Ray-construction extension on the verification window, when admissible
  // and the box is large enough for the construction.
  std::optional<Pattern> certificate;
  bool certificate_verified = false;
  std::string route;  // "theorem" or "extension"
};

// Rectangular patterns over A_L or A_oplus. Boxes with both sides at least 3
// use the local criterion directly; smaller boxes go through extend_window
// with margin 2.
GlobalResult check_global_rect(const Pattern& p, bool want_certificate = true);

// Explicit extension of a locally admissible box pattern by straight rays,
// restricted to the box padded by `pad`. Throws Unsupported for other sets.
Pattern ray_extension(const Pattern& p, int pad);

struct ExtendOptions {
  // Backtracking nodes before switching to matching-guided placement.
  std::uint64_t max_nodes = 1'000'000;
};

// Locally admissible extension of the pattern to its bounding box padded by
// margin, first in lexicographic order of the cell values. The original cells
// keep their values. Existence is exact (bipartite matching); no budget error.
std::optional<Pattern> extend_window(const Pattern& p, int margin, const ExtendOptions& opt = {});

// Existence part of extend_window alone.
bool has_extension(const Pattern& p, int margin);

// Box patterns that are locally admissible and extend to the box padded by
// margin. Every globally admissible pattern is counted, so this bounds
// |B_n(Omega(A))| from above for any A.
BigInt count_extendable_patterns(const RestrictionSet& a, const Vec& n, int margin);

// Interior-restricted forms of the injective and surjective pattern tests:
// only cells m whose whole pre-image window m - A lies in U are checked.
bool check_injective_local(const Pattern& p);
bool check_surjective_local(const Pattern& p);

// Same tests on a torus, where every window is whole.
bool check_injective_toral(const RestrictionSet& a, const Vec& n, const std::vector<int>& values);
bool check_surjective_toral(const RestrictionSet& a, const Vec& n, const std::vector<int>& values);

// Decision for arbitrary patterns: proofs of non-admissibility by failed
// extension, proofs of admissibility when the extension lands on a box over
// A_L or A_oplus, otherwise undecided.
Decision decide_admissible(const Pattern& p, int margin, const ExtendOptions& opt = {});

}  // namespace permlattice
