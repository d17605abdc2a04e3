#pragma once

#include <gmpxx.h>
#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace Eigen {
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};
}  // namespace Eigen

namespace signreg {

using Rational = mpq_class;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using QMatrix = Mat<Rational>;

// Accepts "p", "p/q", decimals "-1.25" and exponents "3e-2"; result is exact.
Rational parse_rational(std::string_view text);
// "p" when integral, otherwise "p/q".
std::string to_string(const Rational& q);

int sign_of(const Rational& q);
bool is_integer(const Rational& q);

QMatrix make_matrix(const std::vector<std::vector<Rational>>& rows);
QMatrix identity_matrix(int n);

}  // namespace signreg
