#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "permlattice/lattice.hpp"

namespace permlattice {

// Square 0/1 matrix in compressed rows. Repeated column entries add up.
struct SparseMatrix {
  int n = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<int> col;

  std::size_t nnz() const { return col.size(); }
  static SparseMatrix from_dense(const std::vector<std::vector<int>>& m);
  std::vector<std::vector<long long>> dense() const;
};

// Vertex shift on stripe states. A state is a pair of column codes (v, u);
// a column code lists one displacement index per row, base |A|.
struct TransferGraph {
  int m = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> states;
  SparseMatrix adjacency;
};

struct StripeOptions {
  // Cap on states * columns, the work of the edge scan.
  double max_work = 4e9;
};

// States: both columns injective together with images inside the stripe
// rows [0, m); edges: three columns injective and the middle column covered.
TransferGraph build_stripe_lower(int m, const StripeOptions& opt = {});
// States: both columns injective; edges: three columns injective and the
// middle column covered on rows [1, m-2].
TransferGraph build_stripe_upper(int m, const StripeOptions& opt = {});
// Displacement of code digit i, in canonical A_oplus order.
Vec stripe_displacement(int digit);
// Row r displacement digit of a column code.
int stripe_digit(std::uint32_t code, int r);

struct SpectralOptions {
  double tol = 1e-12;
  int max_iterations = 2'000'000;
  int exact_limit = 64;  // characteristic polynomial up to this dimension
  int threads = 0;
};

struct SpectralResult {
  double radius = 0;
  std::string method;  // "power-iteration" or "characteristic-polynomial"
  double residual = 0;        // last change of the Rayleigh quotient
  double eigen_residual = 0;  // |Mx - rx| for the final unit vector x
  int iterations = 0;
  double power_radius = 0;
  // Coefficients of det(xI - M), low to high.
  std::optional<std::vector<BigInt>> charpoly;
};

SpectralResult spectral_radius(const SparseMatrix& m, const SpectralOptions& opt = {});

// det(xI - M), low to high, by Faddeev-LeVerrier over the integers.
std::vector<BigInt> characteristic_polynomial(const std::vector<std::vector<long long>>& m);
// Largest real root bracketed to width tol by Sturm-sequence bisection.
double largest_real_root(const std::vector<BigInt>& coeffs, double tol = 1e-12);

struct ComponentMatrix {
  int k = 0, l = 0;
  std::vector<std::uint32_t> states;  // l-subsets of [k] as bit masks, ascending
  std::vector<std::vector<int>> matrix;
};

ComponentMatrix build_component_matrix(int k, int l);
std::string subset_str(std::uint32_t mask, int k);

struct OneDimResult {
  int k = 0;
  SpectralResult spectrum;
  double entropy = 0;  // in the requested base
};
OneDimResult one_dim_entropy(int k, const LogBase& base = {}, const SpectralOptions& opt = {});

// Number of the 2k window positions j in [-2k, -1] with j + w_j >= -k.
int f_average(const std::vector<int>& window, int k);

struct InequalityReport {
  int k = 0, n = 0;
  BigInt component;  // patterns of length n of the component with index k
  BigInt closed;     // closed block count at length n + 2k
  bool holds = false;
};
InequalityReport closed_vs_component_inequality_check(int k, int n, const CountOptions& opt = {});

struct EntropyBounds {
  int m = 0;
  double lower = 0, upper = 0;
  std::size_t lower_states = 0, upper_states = 0;
  SpectralResult lower_spectrum, upper_spectrum;
};
EntropyBounds entropy_bounds_Aplus_circle(int m, const LogBase& base = {}, const StripeOptions& opt = {},
                                          const SpectralOptions& sopt = {});

}  // namespace permlattice
