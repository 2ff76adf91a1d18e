#pragma once

#include <functional>
#include <string>
#include <vector>

#include "permlattice/lattice.hpp"

namespace permlattice {

struct CheckLine {
  bool ok = false;
  std::string text;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::vector<CheckLine> checks;
  // Facts reported alongside the checks that do not decide pass/fail.
  std::vector<std::string> notes;
};

struct AcceptanceOptions {
  int al_max_n = 40;          // largest box side for the A_L sandwich rows
  bool lower_bound_m4 = true; // stripe lower bound at m = 4
  unsigned seed = 20240611;   // random shifts and random sets
  bool enforce_time = true;   // a criterion over its time limit fails
};

constexpr int kCriterionCount = 9;

CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});
// Runs the listed criteria (all when empty), calling back after each.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, const AcceptanceOptions& opt = {},
                                            const std::function<void(const CriterionResult&)>& done = {});

// Pattern on [3]x[5] minus (1,2) over A_plus that is locally admissible but
// has no extension filling the hole.
Pattern example_hole_pattern();

// The characteristic coefficients printed for the k = 3 component matrix,
// in the order given there.
const std::vector<int>& printed_component_polynomial();

}  // namespace permlattice
