#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace permlattice {

using Vec = std::vector<int>;
using BigInt = mpz_class;
using Rational = mpq_class;

// Exit codes shared with the command-line tool.
enum class ExitCode : int { Ok = 0, Usage = 64, Internal = 70, Budget = 75 };

class Error : public std::runtime_error {
 public:
  Error(const std::string& what, ExitCode code) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& w) : Error(w, ExitCode::Usage) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w) : Error(w, ExitCode::Usage) {}
};
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& w) : Error(w, ExitCode::Budget) {}
};
struct InternalError : Error {
  explicit InternalError(const std::string& w) : Error(w, ExitCode::Internal) {}
};
struct NumericError : Error {
  explicit NumericError(const std::string& w) : Error(w, ExitCode::Internal) {}
};
// Raised when a decision procedure is asked about inputs it has no proof for.
struct Unsupported : Error {
  explicit Unsupported(const std::string& w) : Error(w, ExitCode::Usage) {}
};

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Vec neg(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}
inline int mod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}
inline Vec mod(const Vec& a, const Vec& n) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i], n[i]);
  return r;
}
inline int inf_norm(const Vec& a) {
  int m = 0;
  for (int x : a) m = std::max(m, std::abs(x));
  return m;
}

std::string vec_str(const Vec& v);

// Logarithm base carried through every entropy value. Values are stored in
// nats and converted on output.
struct LogBase {
  double base = 0.0;  // 0 means natural
  static LogBase natural() { return {}; }
  static LogBase two() { return {2.0}; }
  static LogBase parse(const std::string& s);
  double from_nats(double v) const { return base == 0.0 ? v : v / std::log(base); }
  std::string name() const;
};

// log of a positive big integer, in nats, without overflowing a double.
double log_big(const BigInt& x);

// Worker count from PERMLATTICE_THREADS, else hardware concurrency.
unsigned worker_count();

}  // namespace permlattice
