#pragma once

#include "signreg/rational.hpp"

#include <mpfr.h>

#include <optional>
#include <string>

namespace signreg {

// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds the
// lower endpoint down and the upper endpoint up, so the true value of any
// expression built from exact inputs stays inside the result.
class Interval {
 public:
  explicit Interval(mpfr_prec_t bits = 128);
  Interval(const Rational& q, mpfr_prec_t bits);
  Interval(const Rational& lo, const Rational& hi, mpfr_prec_t bits);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  // Eigen default-constructs scalars and assigns integer literals.
  Interval(int v);  // NOLINT(google-explicit-constructor)

  mpfr_prec_t precision() const { return prec_; }
  const mpfr_t& lower() const { return lo_; }
  const mpfr_t& upper() const { return hi_; }

  bool contains_zero() const;
  bool positive() const;  // lo > 0
  bool negative() const;  // hi < 0
  // +1 / -1 when the enclosure excludes zero, 0 otherwise.
  int certain_sign() const;
  double width() const;
  double mid() const;
  double lower_d() const;
  double upper_d() const;
  std::string to_string(int digits = 20) const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  friend Interval exp(const Interval& a);
  friend Interval log(const Interval& a);  // requires a > 0
  friend Interval sqrt(const Interval& a);  // requires a >= 0
  friend Interval abs(const Interval& a);
  friend Interval hull(const Interval& a, const Interval& b);

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

// b^alpha for b > 0 with alpha enclosed in [alpha_lo, alpha_hi].
Interval pow_positive(const Interval& b, const Interval& alpha);
Interval pow_int(const Interval& b, long e);

}  // namespace signreg

namespace Eigen {
template <>
struct NumTraits<signreg::Interval> : GenericNumTraits<signreg::Interval> {
  typedef signreg::Interval Real;
  typedef signreg::Interval NonInteger;
  typedef signreg::Interval Nested;
  typedef signreg::Interval Literal;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 200,
    MulCost = 400
  };
};
}  // namespace Eigen
