#pragma once

#include <complex>
#include <string>
#include <tuple>

#include "permlattice/lattice.hpp"

namespace permlattice {

// Laurent polynomial p(z, w) = sum c * z^a * w^b, integrated as
// log|p(e^{ix}, e^{iy})| over the torus.
struct TorusIntegrand {
  std::vector<std::tuple<int, int, std::complex<double>>> terms;

  static TorusIntegrand honeycomb();  // 1 + z + w
  static TorusIntegrand dimer();      // 4 - z - 1/z - w - 1/w
  TorusIntegrand scaled(std::complex<double> c) const;
  std::complex<double> eval(double x, double y) const;
  void validate() const;
};

struct QuadOptions {
  int min_level = 5;   // first grid has 2^min_level points per axis
  int max_level = 12;
  int threads = 0;
};

struct QuadratureResult {
  double value = 0;   // nats
  double error = 0;   // difference of the last two extrapolated levels
  int levels = 0;
  int finest = 0;     // points per axis on the finest grid
  std::vector<double> raw;           // midpoint sums per level
  std::vector<double> extrapolated;  // Richardson values per level
  bool converged = false;
};

// (1/4pi^2) * integral of log|p| over [0, 2pi]^2 by midpoint rules on dyadic
// grids, extrapolated in h^2. Throws NumericError past max_level.
QuadratureResult mahler2(const TorusIntegrand& p, double tol, const QuadOptions& opt = {});

QuadratureResult honeycomb_entropy(double tol = 1e-8, const QuadOptions& opt = {});
// Square-lattice dimer entropy per site: a quarter of the Mahler measure of
// 4 - z - 1/z - w - 1/w.
QuadratureResult dimer_entropy(double tol = 1e-8, const QuadOptions& opt = {});
// Twice the dimer value.
QuadratureResult a_plus_entropy(double tol = 1e-8, const QuadOptions& opt = {});

// The printed closed form for the A_+ constant has no logarithm; this is the
// note carried into reports.
extern const char* const kAplusFormulaNote;

struct ConvergenceRow {
  int n = 0;
  BigInt count;
  double per_site = 0;  // nats
  double gap = 0;       // per_site - limit
  bool above = false;   // per_site >= limit - 1e-9
  std::string method;
};

struct ConvergenceReport {
  std::string set;
  double limit = 0;
  std::vector<ConvergenceRow> rows;
};

// A_L rows use the Pfaffian counter for n in ns; A_+ rows use brute pattern
// counts and, for even n, a second row with the squared window-cover count.
ConvergenceReport convergence_report(const RestrictionSet& a, const std::vector<int>& ns, const CountOptions& opt = {});

// Perfect covers of the n x n box inside the square lattice, counted on the
// box with a one-cell margin (corners dropped) with the planar cover counter.
BigInt square_window_covers(int n);
// Same count by enumeration.
BigInt square_window_covers_brute(int n);

}  // namespace permlattice
