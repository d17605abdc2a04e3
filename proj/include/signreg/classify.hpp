#pragma once

#include "signreg/funcspec.hpp"
#include "signreg/matcore.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace signreg {

// Finite union of intervals over the extended reals, kept canonical:
// disjoint, sorted, touching pieces merged.
class ExponentSet {
 public:
  struct Piece {
    std::optional<Rational> lo;  // nullopt = -inf
    std::optional<Rational> hi;  // nullopt = +inf
    bool lo_closed = false;
    bool hi_closed = false;
    bool operator==(const Piece& o) const = default;
  };

  ExponentSet() = default;
  static ExponentSet point(const Rational& a);
  static ExponentSet interval(std::optional<Rational> lo, bool lo_closed, std::optional<Rational> hi,
                              bool hi_closed);
  static ExponentSet real();
  static ExponentSet nonzero_reals();
  static ExponentSet from_string(const std::string& s);  // inverse of str()

  ExponentSet unite(const ExponentSet& o) const;
  bool contains(const Rational& a) const;
  // Every value of the enclosure lies in the set.
  bool contains(const Exponent& a) const;
  bool subset_of(const ExponentSet& o) const;
  bool empty() const { return pieces_.empty(); }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::string str() const;  // "{0} U [1,inf)", "R", "R\\{0}", "{}"
  bool operator==(const ExponentSet& o) const { return pieces_ == o.pieces_; }

 private:
  void canonicalize();
  std::vector<Piece> pieces_;
};

enum class Mode { SR, SSR };
std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

// Constraint on a constant c, or on the values of f over a region.
enum class Range { Any, Pos, NonNeg, Neg, NonPos, NonZero, Zero, Definite, StrictDefinite };
std::string range_str(Range r, const std::string& var);
Range negate(Range r);
bool range_admits(Range r, int sign);

struct SideClause {
  Range c = Range::Any;
  ExponentSet alpha;  // c * |x|^alpha on the half-line
  bool operator==(const SideClause& o) const = default;
};

struct Clause {
  enum class Kind { AnyFunction, Constant, ScaledSignum, ScaledPower, PiecewiseTwoSided };
  Kind kind = Kind::AnyFunction;
  Range c = Range::Any;      // Constant, ScaledSignum, ScaledPower
  ExponentSet alpha;         // ScaledPower: c * |x|^alpha on the family domain
  Range neg = Range::Any;    // AnyFunction: values on x < 0
  Range pos = Range::Any;    // AnyFunction: values on x > 0
  Range at_zero = Range::Any;  // AnyFunction and PiecewiseTwoSided: f(0)
  SideClause neg_side;       // PiecewiseTwoSided
  SideClause pos_side;

  std::string kind_name() const;
  std::vector<std::string> constraints() const;
  bool operator==(const Clause& o) const = default;
};

struct PreserverFamily {
  Mode mode = Mode::SR;
  bool all_patterns = false;
  std::optional<SignPattern> eps;
  int m = 1;
  int n = 1;
  Domain domain = Domain::NonNeg;
  std::vector<Clause> clauses;
  std::optional<std::string> partial;  // reason, when the tables leave the case open
  std::string table;                   // human-readable name of the table row
  bool operator==(const PreserverFamily& o) const {
    return mode == o.mode && all_patterns == o.all_patterns && eps == o.eps && m == o.m && n == o.n &&
           domain == o.domain && clauses == o.clauses && partial == o.partial;
  }
};

struct Query {
  int m = 1;
  int n = 1;
  Mode mode = Mode::SR;
  bool all_patterns = false;
  std::optional<SignPattern> eps;
  std::optional<Domain> entry_domain;  // defaulted from mode and scope when absent

  int d() const { return std::min(m, n); }
  Domain domain() const;  // validated entry domain
  void validate() const;
  std::string str() const;
};

Query fixed_query(int m, int n, Mode mode, const SignPattern& eps);
Query all_patterns_query(int m, int n, Mode mode, std::optional<Domain> domain = std::nullopt);

PreserverFamily classify(const Query& q);
// Exponents of x -> x^a (fixed eps1 = 1), x -> -|x|^a (fixed eps1 = -1) or
// x -> |x|^a (all patterns; a > 0 for SR on the real line).
ExponentSet admissible_exponents(const Query& q);

class UndecidableMembership : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
bool is_member(const FunctionSpec& f, const PreserverFamily& fam);

// AllPatterns when eps is absent.
bool signum_preserves(int m, int n, const std::optional<SignPattern>& eps = std::nullopt);

// x -> -f(-x): family for eps1 = -1 from the eps1 = 1 one and back.
PreserverFamily mirror(const PreserverFamily& fam);

// The power map a query's exponent set refers to, with coefficient sign fixed
// by the domain.
FunctionSpec power_map(const Query& q, const Exponent& alpha);

struct EmpiricalVerdict {
  bool consistent = true;
  int trials_run = 0;
  std::optional<QMatrix> violating_matrix;
  std::optional<SignPattern> source_pattern;
  std::vector<MinorSign> witness;
  int undetermined = 0;
  std::string note;
};
EmpiricalVerdict test_preserver_empirically(const FunctionSpec& f, const Query& q, int trials,
                                            std::uint64_t seed, Precision p = {});

}  // namespace signreg
