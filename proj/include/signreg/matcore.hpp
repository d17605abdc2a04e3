#pragma once

#include "signreg/interval.hpp"
#include "signreg/rational.hpp"

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace signreg {

using Index = std::vector<int>;

enum class Sign { Positive, Negative, Zero, Undetermined };
std::string to_string(Sign s);

struct SignVerdict {
  Sign sign = Sign::Undetermined;
  double width = 0;  // enclosure width, meaningful for Undetermined

  static SignVerdict of(int s);
  static SignVerdict undetermined(double w) { return {Sign::Undetermined, w}; }
  bool determined() const { return sign != Sign::Undetermined; }
  // +1, -1 or 0; throws for Undetermined.
  int value() const;
  bool operator==(const SignVerdict& o) const { return sign == o.sign; }
};

class SignPattern {
 public:
  SignPattern() = default;
  explicit SignPattern(std::vector<int> signs);
  // "+-+", "+,-,+" or "1,-1,1".
  static SignPattern parse(std::string_view text);
  static SignPattern all_plus(int d) { return SignPattern(std::vector<int>(d, 1)); }

  int size() const { return static_cast<int>(s_.size()); }
  // 1-based, matching eps_k.
  int operator()(int k) const { return s_.at(k - 1); }
  const std::vector<int>& signs() const { return s_; }
  std::string str() const;
  SignPattern prefix(int d) const;
  SignPattern times(const SignPattern& o) const;

  bool operator==(const SignPattern& o) const { return s_ == o.s_; }
  bool operator!=(const SignPattern& o) const { return s_ != o.s_; }
  bool operator<(const SignPattern& o) const { return s_ < o.s_; }

 private:
  std::vector<int> s_;
};

// eps_i -> (-1)^floor(i/2) eps_i: pattern of A*P_n given that of A.
SignPattern exchange_map(const SignPattern& eps);
// eps_i -> (-1)^i eps_i: pattern of -A given that of A.
SignPattern negation_map(const SignPattern& eps);

// k-subsets of {0..n-1} in lexicographic order.
std::vector<Index> combinations(int n, int k);

// Fraction-free Bareiss elimination on the integer-scaled matrix.
Rational determinant(const QMatrix& A);
Rational minor(const QMatrix& A, const Index& rows, const Index& cols);
QMatrix submatrix(const QMatrix& A, const Index& rows, const Index& cols);

struct MinorEntry {
  Index rows;
  Index cols;
  Rational value;
};
// C(m,k)*C(n,k) minors ordered lexicographically by (row-set, col-set).
std::vector<MinorEntry> all_minors(const QMatrix& A, int k);

struct MinorSign {
  int k = 0;
  Index rows;
  Index cols;
  SignVerdict verdict;
  std::optional<Rational> exact;
  std::optional<Interval> enclosure;
  bool structural = false;  // zero proven by repeated, proportional or null lines
};

struct SsrReport {
  bool is_ssr = false;
  std::optional<SignPattern> pattern;
  std::optional<MinorSign> violating_minor;
};

SsrReport detect_ssr(const QMatrix& A);
bool is_sr_with(const QMatrix& A, const SignPattern& eps);
bool is_ssr_with(const QMatrix& A, const SignPattern& eps);
// For each level k, the signs s in {-1,+1} with s * minor >= 0 for every
// k x k minor. An empty level means A is not SR.
std::vector<std::vector<int>> compatible_signs(const QMatrix& A);
// Every eps with is_sr_with(A, eps); capped to avoid 2^d blowup.
std::vector<SignPattern> compatible_patterns(const QMatrix& A, std::size_t cap = 4096);

QMatrix exchange_matrix(int n);

struct ExchangeResult {
  QMatrix matrix;           // A * P_n
  SignPattern multipliers;  // (-1)^floor(i/2), i = 1..d
  SignPattern apply(const SignPattern& eps) const { return eps.times(multipliers); }
};
ExchangeResult exchange_conjugate(const QMatrix& A);

QMatrix diagonal_scale(const QMatrix& A, const std::vector<Rational>& E,
                       const std::vector<Rational>& F);

struct Normalized3x3 {
  QMatrix matrix;
  std::array<Rational, 4> x;
  std::vector<Rational> E;
  std::vector<Rational> F;
};
Normalized3x3 normalize_3x3(const QMatrix& A);

// With verify=true a non-TN2 input raises std::invalid_argument.
bool tn2_zero_pattern_check(const QMatrix& A, bool verify = false);

QMatrix pad_with_zeros(const QMatrix& A, int m, int n);

// ---------------------------------------------------------------------------
// Certified view: entries may be irrational, known through enclosures that
// can be recomputed at any working precision.

struct Precision {
  mpfr_prec_t bits = 128;
  mpfr_prec_t max_bits = 1024;
};

class UndeterminedSign : public std::runtime_error {
 public:
  explicit UndeterminedSign(MinorSign m);
  const MinorSign& minor() const { return minor_; }

 private:
  MinorSign minor_;
};

class CertifiedMatrix {
 public:
  using EntryFn = std::function<Interval(int, int, mpfr_prec_t)>;

  static CertifiedMatrix exact(const QMatrix& A);
  CertifiedMatrix(int rows, int cols, EntryFn enclose,
                  std::vector<std::optional<Rational>> exact_entries = {});

  // Records the matrix this one was produced from by an entrywise map. Equal
  // source lines give equal image lines; with scaling_covariant (f(lx) =
  // phi(l) f(x), as for c|x|^a) proportional source lines stay proportional.
  void set_source(const QMatrix& source, bool scaling_covariant);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_exact() const { return exact_count_ == rows_ * cols_; }
  QMatrix exact_matrix() const;
  const std::optional<Rational>& exact_entry(int i, int j) const {
    return exact_[static_cast<std::size_t>(i * cols_ + j)];
  }
  Interval entry(int i, int j, mpfr_prec_t bits) const;
  Mat<Interval> enclose(mpfr_prec_t bits) const;

  bool block_exact(const Index& r, const Index& c) const;
  bool structurally_singular(const Index& r, const Index& c) const;

  // f[A] P_n as a view on the same entries.
  CertifiedMatrix times_exchange() const;
  CertifiedMatrix transpose() const;

 private:
  bool lines_dependent(const Index& r, const Index& c, bool by_rows) const;

  int rows_;
  int cols_;
  EntryFn enclose_;
  std::vector<std::optional<Rational>> exact_;
  int exact_count_ = 0;
  std::optional<QMatrix> source_;
  bool covariant_ = false;
};

// All minors of one order at a fixed precision, by Laplace expansion along
// the first row with memoised lower-order minors.
template <typename T>
class MinorLevels {
 public:
  explicit MinorLevels(Mat<T> A);
  const T& value(const Index& rows, const Index& cols);
  int max_order() const { return static_cast<int>(std::min(A_.rows(), A_.cols())); }

 private:
  void build(int k);
  std::size_t key(const Index& idx) const;

  Mat<T> A_;
  std::vector<std::vector<T>> levels_;  // levels_[k] indexed by row-mask * 2^n + col-mask slot
  std::vector<std::vector<int>> rpos_, cpos_;
  std::vector<std::vector<Index>> rcomb_, ccomb_;
};

class MinorSigner {
 public:
  MinorSigner(const CertifiedMatrix& M, Precision p);
  MinorSign sign(const Index& rows, const Index& cols);
  std::vector<MinorSign> level(int k);

 private:
  MinorLevels<Interval>& at(mpfr_prec_t bits);

  const CertifiedMatrix& M_;
  Precision p_;
  std::map<mpfr_prec_t, std::unique_ptr<MinorLevels<Interval>>> cache_;
};

enum class Tri { True, False, Undetermined };
std::string to_string(Tri t);

struct PatternCheck {
  Tri verdict = Tri::Undetermined;
  std::vector<MinorSign> witness;  // the violating minor(s), or undetermined ones
  std::optional<SignPattern> pattern;
};

PatternCheck check_sr_with(const CertifiedMatrix& M, const SignPattern& eps, Precision p = {});
PatternCheck check_ssr_with(const CertifiedMatrix& M, const SignPattern& eps, Precision p = {});
// SR / SSR for some sign pattern. A violation of SR is a pair of same-order
// minors with certified opposite signs.
PatternCheck check_sr_any(const CertifiedMatrix& M, Precision p = {});
PatternCheck check_ssr_any(const CertifiedMatrix& M, Precision p = {});
// Throws UndeterminedSign when a decisive minor cannot be signed.
SsrReport detect_ssr(const CertifiedMatrix& M, Precision p = {});

}  // namespace signreg
