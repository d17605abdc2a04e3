#pragma once

#include "signreg/funcspec.hpp"
#include "signreg/matcore.hpp"

#include <optional>
#include <string>
#include <vector>

namespace signreg {

struct ExpTerm {
  Rational c;
  Rational base;  // b > 0; the exponent rate is log b
};

// F(alpha) = sum_i c_i b_i^alpha with bases strictly increasing and no zero
// coefficients.
class ExpSum {
 public:
  ExpSum() = default;
  explicit ExpSum(std::vector<ExpTerm> terms);
  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::string str() const;
  bool operator==(const ExpSum& o) const;

 private:
  std::vector<ExpTerm> terms_;
};

// det(A^alpha) by the permutation expansion; A square, positive, n <= cap.
ExpSum from_hadamard_det(const QMatrix& A, int cap = 6);

std::optional<Rational> eval_exact(const ExpSum& S, const Rational& alpha);
// Exact part summed in Q, irrational terms enclosed at the given precision.
CertReal eval(const ExpSum& S, const Exponent& alpha, mpfr_prec_t bits = 128);

// Sign changes of the coefficients ordered by base.
int descartes_bound(const ExpSum& S);

struct TaylorCoefficient {
  int j = 0;
  std::optional<Rational> exact;  // known exactly (j = 0, or a vanishing j = 1)
  Interval enclosure;
  std::string recipe;
};
// Coefficient j is sum_i c_i (log b_i)^j / j!.
std::vector<TaylorCoefficient> taylor_at_zero(const ExpSum& S, int order, mpfr_prec_t bits = 128);

SignVerdict certified_sign(const ExpSum& S, const Exponent& alpha, Precision p = {});

struct RootBracket {
  Rational lo;
  Rational hi;
  Sign sign_lo = Sign::Undetermined;
  Sign sign_hi = Sign::Undetermined;
};
// Disjoint sign-change brackets of width <= tol inside [a, b].
std::vector<RootBracket> bracket_roots(const ExpSum& S, const Rational& a, const Rational& b,
                                       const Rational& tol, Precision p = {}, int grid = 64);

}  // namespace signreg
