#pragma once

#include "signreg/interval.hpp"
#include "signreg/matcore.hpp"
#include "signreg/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace signreg {

enum class Domain { NonNeg, Pos, Real, RealNonZero, NonPos, Neg };
std::string to_string(Domain d);        // "[0,inf)", ...
std::string domain_keyword(Domain d);   // "nonneg", ...
Domain parse_domain(const std::string& s);  // accepts either spelling
bool domain_contains(Domain d, const Rational& x);
bool domain_has_zero(Domain d);
bool domain_has_positive(Domain d);
bool domain_has_negative(Domain d);

// A rational exponent, or an irrational one given by a rational enclosure.
struct Exponent {
  Rational lo;
  Rational hi;

  Exponent() = default;
  Exponent(const Rational& a) : lo(a), hi(a) {}  // NOLINT(google-explicit-constructor)
  Exponent(int a) : lo(a), hi(a) {}              // NOLINT(google-explicit-constructor)
  static Exponent enclosure(const Rational& lo, const Rational& hi);

  bool is_exact() const { return lo == hi; }
  const Rational& value() const;
  Interval interval(mpfr_prec_t bits) const { return Interval(lo, hi, bits); }
  std::string str() const;
  bool operator==(const Exponent& o) const { return lo == o.lo && hi == o.hi; }
};

struct OneSided {
  enum class Kind { Power, Signum, Constant };
  Kind kind = Kind::Power;
  Rational c = 1;
  Exponent alpha = 1;
  // On the negative side a Power clause means c*|x|^alpha, Signum c*sgn|x|.
};

struct FunctionSpec {
  enum class Kind { Power, ScaledSignum, Constant, Piecewise };
  Kind kind = Kind::Power;
  Rational c = 1;
  Exponent alpha = 1;
  OneSided neg;
  OneSided pos;
  std::optional<Rational> at_zero;
  Domain domain = Domain::NonNeg;

  static FunctionSpec power(const Rational& c, const Exponent& a, Domain d = Domain::NonNeg);
  static FunctionSpec signum(const Rational& c, Domain d = Domain::NonNeg);
  static FunctionSpec constant(const Rational& c, Domain d = Domain::NonNeg);
  static FunctionSpec piecewise(const OneSided& neg, const OneSided& pos,
                                std::optional<Rational> at_zero, Domain d = Domain::Real);
  std::string describe() const;
};

// Exact b^a for rational b >= 0 when the result is rational.
std::optional<Rational> exact_pow(const Rational& b, const Rational& a);

std::optional<Rational> eval_exact(const FunctionSpec& f, const Rational& x);
Interval eval_enclosure(const FunctionSpec& f, const Rational& x, mpfr_prec_t bits);

struct CertReal {
  std::optional<Rational> exact;
  Interval enclosure;
  std::string str() const;
};
CertReal eval(const FunctionSpec& f, const Rational& x, mpfr_prec_t bits = 128);

// f[A]; exact entries stay exact, the rest are recomputed on demand.
CertifiedMatrix apply_entrywise(const FunctionSpec& f, const QMatrix& A);
std::optional<QMatrix> apply_entrywise_exact(const FunctionSpec& f, const QMatrix& A);
CertifiedMatrix hadamard_power(const QMatrix& A, const Exponent& alpha);

// ---------------------------------------------------------------------------
// Sampled property checks. These falsify; a pass only means "consistent".

// A real function known by exact values at rationals (when rational) and by
// enclosures over ranges that stay inside one smooth piece.
struct RealFunction {
  std::string name;
  std::function<std::optional<Rational>(const Rational&)> exact;
  std::function<Interval(const Interval&)> enclose;
  Interval at(const Rational& x, mpfr_prec_t bits) const;
};
RealFunction as_real_function(const FunctionSpec& f);

struct PropertyVerdict {
  bool holds = true;
  std::vector<Rational> counterexample;
  std::string note;
  std::vector<std::string> classes;  // filled by check_monotone_and_sign
  double max_residual = 0;
  int undecided = 0;
};

std::vector<std::pair<Rational, Rational>> default_grid();

PropertyVerdict check_mid_convex(const RealFunction& f,
                                 const std::vector<std::pair<Rational, Rational>>& grid,
                                 mpfr_prec_t bits = 128);
PropertyVerdict check_mid_convex(const FunctionSpec& f,
                                 const std::vector<std::pair<Rational, Rational>>& grid);

enum class FunctionalForm { Fixed2x2, AllSign };
// Fixed2x2 samples are (x, y); AllSign samples are (a, x, y).
PropertyVerdict check_functional_equation(const RealFunction& f,
                                          const std::vector<std::vector<Rational>>& samples,
                                          FunctionalForm form, mpfr_prec_t bits = 128);
PropertyVerdict check_functional_equation(const FunctionSpec& f,
                                          const std::vector<std::vector<Rational>>& samples,
                                          FunctionalForm form);

enum class HalfLine { Neg, Pos };
// Samples are points of the chosen half-line in increasing order.
PropertyVerdict check_monotone_and_sign(const RealFunction& f, HalfLine h,
                                        const std::vector<Rational>& samples,
                                        mpfr_prec_t bits = 128);
PropertyVerdict check_monotone_and_sign(const FunctionSpec& f, HalfLine h,
                                        const std::vector<Rational>& samples);

PropertyVerdict check_ssr2x2_conditions(const FunctionSpec& f, const std::vector<Rational>& samples);

}  // namespace signreg
