// One PASS/FAIL line per acceptance criterion, followed by its checks.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "permlattice/selftest.hpp"

using namespace permlattice;

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  bool all = true;
  run_acceptance(ids, {}, [&](const CriterionResult& r) {
    all = all && r.pass;
    std::printf("%s criterion %d: %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
    for (const auto& c : r.checks) std::printf("    [%s] %s\n", c.ok ? "ok" : "FAILED", c.text.c_str());
    for (const auto& n : r.notes) std::printf("    note: %s\n", n.c_str());
    std::fflush(stdout);
  });
  return all ? 0 : 1;
}
